#pragma once

#include "combicodec/exact_oracle.hpp"
#include "combicodec/random_instances.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace combicodec {

struct SelftestOptions {
    EnumerationBudget budget;
    std::size_t random_trials = 100;  // per model
    InstanceLimits limits{16, 60};
    std::uint64_t seed = 20160330;
    /// Test-only: flips a payload bit in every random trial, so the
    /// round-trip checks must fail.
    bool inject_fault = false;
};

struct SelftestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestResult {
    std::vector<SelftestCheck> checks;
    bool passed() const;
};

/// Exact-oracle checks for all models plus randomized round trips with the
/// ic + 2 length bound. One line per check goes to `log`.
SelftestResult run_selftest(const SelftestOptions& options, std::ostream& log);

}  // namespace combicodec
