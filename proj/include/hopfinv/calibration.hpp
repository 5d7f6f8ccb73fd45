#pragma once

#include <string>
#include <vector>

#include "hopfinv/heegaard.hpp"

namespace hopfinv {

// Expected value of one (algebra, diagram) pair. Diagrams are builtin
// names, regenerated under each candidate record.
struct CalibrationTarget {
    std::string algebra;
    std::string diagram;
    Scalar expected;
};

// A move script whose covariance must hold under the candidate record.
struct CovarianceProbe {
    std::string algebra;
    std::string diagram;
    std::vector<std::string> script;
};

struct CalibrationSuite {
    std::vector<std::string> zoo;  // hopf conventions are checked on all of these
    std::vector<CalibrationTarget> targets;
    std::vector<CovarianceProbe> probes;

    // {F[Z2], F[S3], sweedler, exterior:1, uq_sl2:3}
    static CalibrationSuite standard();
};

struct CandidateOutcome {
    ConventionRecord record;
    std::string failure;  // empty for survivors
};

struct CalibrationReport {
    std::vector<CandidateOutcome> outcomes;
    std::vector<ConventionRecord> survivors() const;
    std::string summary() const;
};

std::vector<HopfConventions> candidate_hopf_conventions();
std::vector<ConventionRecord> candidate_records();

// Runs every candidate, never throws on a failing candidate.
CalibrationReport run_calibration(const CalibrationSuite& suite);

// The unique surviving record. Throws CalibrationAmbiguous or
// CalibrationImpossible.
ConventionRecord calibrate_conventions(const CalibrationSuite& suite = CalibrationSuite::standard());

struct RecordCheck {
    bool ok = false;
    std::string message;
};
// Recalibrates and compares with the file at path byte for byte.
RecordCheck verify_record_file(const std::string& path);

}  // namespace hopfinv
