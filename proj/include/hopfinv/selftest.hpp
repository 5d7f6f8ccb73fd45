#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hopfinv/heegaard.hpp"

namespace hopfinv {

// "L(5,2)" -> "L5_2"; the builtin data files are <dir>/<stem>.json
std::string diagram_file_stem(const std::string& builtin);
void write_builtin_files(const std::string& dir, const ConventionRecord& rec);
// Mismatching or missing files, empty when all agree.
std::vector<std::string> check_builtin_files(const std::string& dir, const ConventionRecord& rec);

// Random applicable moves, never growing past max_crossings.
std::vector<Move> random_script(const Diagram& d, std::mt19937& rng, int length, int max_crossings,
                                const ConventionRecord& rec);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    std::string record_path;  // checked-in record compared byte for byte
    int scripts = 200;
    unsigned seed = 20240607;
};

// One result per criterion, in order. progress is called after each.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace hopfinv
