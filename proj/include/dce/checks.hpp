#pragma once

#include <string>
#include <vector>

namespace dce {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Invariant suite behind --seed-check. Each entry is independent of the others.
std::vector<CheckResult> run_seed_checks();

} // namespace dce
