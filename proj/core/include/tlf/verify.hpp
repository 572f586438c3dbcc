#pragma once

#include "tlf/specs.hpp"

namespace tlf {

// One verified identity. lhs/rhs are filled only on failure, with the exact
// values that disagreed (rendered through the ring's str()).
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::string lhs, rhs;
};

struct SuiteReport {
    std::string suite;
    uint64_t seed = 0;
    std::vector<std::string> params;  // the parameters each trial ran with
    std::vector<CheckResult> checks;

    bool pass() const {
        if (checks.empty()) return false;
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    size_t failed() const {
        size_t n = 0;
        for (auto& c : checks) n += !c.pass;
        return n;
    }
    std::string to_json(int indent = -1) const;  // schema tlf.verify/1
    std::string to_text() const;
};

std::vector<std::string> suite_names();

// Runs one named suite. cfg.q, cfg.precision and cfg.max_deg override the
// suite defaults when positive; cfg.seed drives every randomized trial.
// Unknown names throw.
SuiteReport run_suite(const std::string& suite, const RunConfig& cfg);

}  // namespace tlf
