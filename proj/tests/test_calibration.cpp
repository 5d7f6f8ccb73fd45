#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "hopfinv/calibration.hpp"

using namespace hopfinv;

TEST_CASE("standard suite has one survivor") {
    auto rep = run_calibration(CalibrationSuite::standard());
    CHECK(rep.outcomes.size() == candidate_records().size());
    auto s = rep.survivors();
    REQUIRE(s.size() == 1);
    CHECK(s[0] == ConventionRecord{});
    CHECK(calibrate_conventions() == s[0]);
}

TEST_CASE("contradictory target") {
    auto suite = CalibrationSuite::standard();
    for (auto& t : suite.targets)
        if (t.diagram == "S3_genus1") t.expected = Scalar(t.expected.order(), 2L);
    try {
        calibrate_conventions(suite);
        FAIL("expected CalibrationImpossible");
    } catch (const Error& e) {
        CHECK(e.kind() == "CalibrationImpossible");
    }
}

TEST_CASE("involutory algebras leave choices open") {
    CalibrationSuite suite;
    for (auto& t : CalibrationSuite::standard().targets)
        if (t.algebra.rfind("group:", 0) == 0) suite.targets.push_back(t);
    suite.zoo = {"group:Z2", "group:S3"};
    try {
        calibrate_conventions(suite);
        FAIL("expected CalibrationAmbiguous");
    } catch (const Error& e) {
        CHECK(e.kind() == "CalibrationAmbiguous");
    }
}

TEST_CASE("record file check") {
    std::string path = "calibration_test_record.json";
    {
        std::ofstream(path) << ConventionRecord{}.to_json();
    }
    CHECK(verify_record_file(path).ok);
    ConventionRecord tampered;
    tampered.spiral_direction = -1;
    {
        std::ofstream(path) << tampered.to_json();
    }
    CHECK_FALSE(verify_record_file(path).ok);
    std::remove(path.c_str());
    CHECK_FALSE(verify_record_file(path).ok);
}
