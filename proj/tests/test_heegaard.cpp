#include "doctest.h"

#include <random>

#include "hopfinv/heegaard.hpp"

using namespace hopfinv;

namespace {

const ConventionRecord rec;

Diagram B(const std::string& n) { return builtin_diagram(n, rec); }

}  // namespace

TEST_CASE("builtins are valid") {
    for (auto& n : builtin_names()) {
        auto r = validate_diagram(B(n));
        CHECK_MESSAGE(r.ok(), n << "\n" << r.to_string());
    }
    CHECK(B("S3_genus1").crossing_count() == 1);
    CHECK(B("L(5,1)").crossing_count() == 5);
    auto s = B("RP3_left#RP3_left");
    CHECK(s.genus == 2);
    CHECK(s.crossing_count() == 4);
    CHECK_THROWS_AS(B("L(8,1)"), Error);
    CHECK_THROWS_AS(B("L(4,2)"), Error);
    CHECK_THROWS_AS(B("T3"), Error);
}

TEST_CASE("validation localizes problems") {
    Diagram d = B("L(3,1)");
    d.upper[0].crossings.push_back(d.upper[0].crossings[0]);
    auto r = validate_diagram(d);
    REQUIRE_FALSE(r.ok());
    CHECK(r.to_string().find("twice on the upper side") != std::string::npos);

    Diagram e = B("S3_genus1");
    e.crossings[0].eps = 3;
    CHECK_FALSE(validate_diagram(e).ok());
    Diagram f = B("S3_genus1#S3_genus1");
    f.lower[1].theta2 = 0;
    CHECK_FALSE(validate_diagram(f).ok());
}

TEST_CASE("json round trip") {
    for (auto& n : builtin_names()) {
        auto d = B(n);
        CHECK(diagram_from_json(diagram_to_json(d)) == d);
    }
    CHECK_THROWS_AS(diagram_from_json("{not json"), ParseError);
    CHECK_THROWS_AS(diagram_from_json(R"({"genus": 1, "upper": [], "lower": [], "crossings": []})"), Error);
}

TEST_CASE("intersection matrix and canonical sign") {
    CHECK(intersection_matrix(B("S2xS1")) == std::vector<std::vector<long>>{{0}});
    CHECK(intersection_matrix(B("RP3_left")) == std::vector<std::vector<long>>{{2}});
    CHECK(intersection_matrix(B("L(5,1)")) == std::vector<std::vector<long>>{{5}});
    CHECK(canonical_sign(B("L(5,1)")) == 1);
    CHECK(canonical_sign(B("S2xS1")) == 1);
    auto m = intersection_matrix(B("L(3,1)#RP3_right"));
    CHECK(m == std::vector<std::vector<long>>{{3, 0}, {0, -2}});
    CHECK(integer_determinant(m) == -6);

    // swapping two circles on one side flips the sign
    for (std::string n : {"L(3,1)#L(5,2)", "RP3_left#S2xS1", "L(4,1)#S2xS1"}) {
        Diagram d = B(n);
        int s = canonical_sign(d);
        std::swap(d.upper[0], d.upper[1]);
        CHECK(canonical_sign(d) == -s);
    }
    // two empty circles are indistinguishable, the swap is the identity
    Diagram e = B("S2xS1#S2xS1");
    Diagram f = e;
    std::swap(f.upper[0], f.upper[1]);
    CHECK(f == e);
}

TEST_CASE("move inverses") {
    Diagram g0 = B("S3_genus0");
    CHECK(apply_move(g0, Move::parse("stabilize"), rec) == B("S3_genus1"));
    for (std::string n : {"RP3_left", "L(5,2)", "RP3_right#L(3,1)"}) {
        Diagram d = B(n);
        auto twice = [&](const std::string& a, const std::string& b) {
            return apply_move(apply_move(d, Move::parse(a), rec), Move::parse(b), rec);
        };
        CHECK(twice("reverse:U0", "reverse:U0") == d);
        CHECK(twice("reverse:L0", "reverse:L0") == d);
        CHECK(twice("spiral:L0:+1", "spiral:L0:-1") == d);
        CHECK(twice("isotopy:U0", "isotopy:U0:-1") == d);
        CHECK(twice("isotopy:L0:-1", "isotopy:L0") == d);
        CHECK(twice("stabilize", "destabilize") == d);
    }
    CHECK_THROWS_AS(apply_move(B("S2xS1"), Move::parse("spiral:U0:+1"), rec), Error);
    CHECK_THROWS_AS(apply_move(B("L(3,1)"), Move::parse("destabilize"), rec), Error);
    CHECK_THROWS_AS(Move::parse("slide:U0"), ParseError);
}

TEST_CASE("moves keep diagrams valid") {
    std::mt19937 rng(11);
    for (std::string n : {"L(3,1)", "RP3_left#S2xS1", "L(5,2)#RP3_right"}) {
        Diagram d = B(n);
        int s0 = canonical_sign(d);
        for (int i = 0; i < 40; ++i) {
            auto ms = applicable_moves(d);
            REQUIRE_FALSE(ms.empty());
            Move m = ms[rng() % ms.size()];
            Diagram next = apply_move(d, m, rec);
            if (next.crossing_count() > 30) continue;
            auto r = validate_diagram(next);
            CHECK_MESSAGE(r.ok(), m.to_string() << "\n" << r.to_string());
            if (m.kind == Move::Kind::Slide && integer_determinant(intersection_matrix(d)) != 0)
                CHECK(canonical_sign(next) == canonical_sign(d));
            d = next;
        }
        (void)s0;
    }
}

TEST_CASE("move spec strings") {
    for (std::string s : {"reverse:U0", "isotopy:L1:-1", "spiral:U0:+1", "slide:U0:U1:2:1", "slide:L1:L0:0:2:rev",
                          "stabilize", "destabilize:U1:L1"}) {
        CHECK(Move::parse(s).to_string() == s);
    }
}

TEST_CASE("convention record json") {
    ConventionRecord r;
    CHECK(ConventionRecord::from_json(r.to_json()) == r);
    CHECK_THROWS_AS(ConventionRecord::from_json(R"({"a_inverse": true})"), ParseError);
    std::string bad = r.to_json();
    bad.replace(bad.find("upper_lower_pairs"), 17, "sideways");
    CHECK_THROWS_AS(ConventionRecord::from_json(bad), ParseError);
    CHECK_THROWS_AS(ConventionRecord::load("/nonexistent/record.json"), Error);
}
