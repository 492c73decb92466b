#pragma once

#include <string>
#include <vector>

namespace monge4 {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the built-in identity suite (structural properties of every module)
/// with a fixed random seed. Deterministic.
std::vector<CheckResult> run_identity_suite();

}  // namespace monge4
