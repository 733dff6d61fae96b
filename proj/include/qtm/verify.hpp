// verify.hpp - built-in oracle suite behind the `verify` subcommand.

#pragma once

#include <string>
#include <vector>

namespace qtm::verify {

struct CheckResult {
    std::string group;   // e.g. "eq4-oracle"
    std::string name;    // individual check
    bool passed = false;
    double observed = 0.0;  // worst observed deviation
    double bound = 0.0;     // tolerance it was held against
};

struct Options {
    int draws = 200;             // random parameter draws per group
    double tolerance_scale = 1.0;  // test hook: < 1 tightens every bound
};

struct Report {
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Runs the closed-form-vs-numeric, concurrence-consistency, detailed-balance,
// equilibrium-separability, generator-structure and heat-balance check groups
// with a fixed seed. Deterministic.
Report run_all(const Options& opts = {});

}  // namespace qtm::verify
