#pragma once

// Property suites behind `assort_bench verify`. Each check returns a list of
// human-readable violations; an empty list means the property holds.

#include <cstdint>
#include <string>
#include <vector>

#include "assort/mnl.hpp"
#include "assort/potential.hpp"

namespace assort {

/// N uniform on [1, max_items], revenues and utilities U[0,1].
Instance random_small_instance(std::uint64_t seed, ItemId max_items = 12);

/// Probabilities sum to 1; R(S) agrees with sum_j Pr[j] r_j. Checked on every
/// level set and `extra_subsets` random subsets.
std::vector<std::string> check_choice_model(const Instance& instance, std::uint64_t seed,
                                            int extra_subsets = 8, double tol = 1e-12);

/// Fixed point, left continuity, position relative to the diagonal,
/// monotonicity away from theta*, and unimodality of the plateau values, on a
/// grid of `grid_points` thresholds in [0,1] plus every jump point.
std::vector<std::string> check_potential_structure(const Instance& instance, int grid_points = 1000,
                                                   double tol = 1e-12);

/// Level-set optimum equals the brute-force optimum over all 2^N subsets.
std::vector<std::string> check_oracle_equivalence(const Instance& instance, double tol = 1e-12);

/// KL(P0(S) || P1(S)) <= 1/(18T) for S in {{1}, {1,2}}, and 0 for S = {2}.
std::vector<std::string> check_lower_bound_kl(std::int64_t horizon);

struct PropertyResult {
    std::string name;
    std::int64_t checked = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

struct VerifyOptions {
    std::int64_t instances = 500;
    std::uint64_t master_seed = 1;
    std::int64_t coverage_trials = 10000;
};

std::vector<PropertyResult> run_verification(const VerifyOptions& options);

} // namespace assort
