#pragma once

// Fast self-checks behind `djsim verify`: closed forms against direct integration,
// gate truth tables and the structural invariants of the operator layer.

#include <string>
#include <vector>

namespace djsim {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CheckResult> run_verification();

}  // namespace djsim
