#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace funcat {

/// Rejected input (as opposed to a verification failure found on valid
/// input); the command line maps this to its own exit code.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Outcome of a verification suite: per-check counters plus a list of failure
/// descriptions (empty iff ok).  Verifiers collect failures instead of
/// throwing so callers can render a full report.
struct CheckReport {
    std::string name;
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::pair<std::string, long>> counts;

    void fail(std::string msg) {
        ok = false;
        failures.push_back(std::move(msg));
    }
    void count(const std::string& key, long delta = 1) {
        for (auto& kv : counts)
            if (kv.first == key) {
                kv.second += delta;
                return;
            }
        counts.emplace_back(key, delta);
    }
};

}  // namespace funcat
