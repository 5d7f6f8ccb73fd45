// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <iostream>

#include "hopfinv/invariant.hpp"
#include "hopfinv/selftest.hpp"

int main(int argc, char** argv) {
    hopfinv::AcceptanceOptions opt;
    opt.record_path = argc > 1 ? argv[1] : hopfinv::default_record_path();
    int failed = 0;
    try {
        hopfinv::run_acceptance(opt, [&](const hopfinv::CriterionResult& r) {
            std::printf("%s  %2d  %-32s %6.1fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                        r.detail.c_str());
            std::fflush(stdout);
            if (!r.pass) ++failed;
        });
    } catch (const std::exception& e) {
        std::cout << "FAIL  acceptance suite could not start: " << e.what() << "\n";
        return 1;
    }
    return failed ? 1 : 0;
}
