#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pmap {

inline constexpr std::uint64_t kDefaultSelftestSeed = 20240607;

struct SelftestOptions {
    std::uint64_t seed = kDefaultSelftestSeed;
    /// Overrides every randomized suite's sample count when set.
    std::optional<int> samples;
    /// Debug hook: replaces kappa_3 in the three-qubit biseparable suite.
    std::optional<double> kappa3_override;
};

struct SuiteResult {
    std::string name;
    int checked = 0;
    int passed = 0;
    /// Worst value of the suite's checked quantity.
    double worst = 0.0;
    /// First failure, with the counterexample serialized (state JSON where
    /// the counterexample is a state).
    std::string failure;

    bool ok() const { return passed == checked; }
};

/// Runs the randomized and grid invariants: biseparable positivity of Phi_N
/// for N = 3, 4, 5 (and N = 3 with a sigma_x post unitary), positivity of the
/// projection map, Choi negativity, Lindblad equivalence, the two-qubit
/// minimum-eigenvalue formula, witness adjointness and witness positivity.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options);

}  // namespace pmap
