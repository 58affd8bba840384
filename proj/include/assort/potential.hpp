#pragma once

// Piecewise-constant representation of the revenue potential F(theta) = R(L_theta).
//
//   F(theta) = c_0                  theta <= s_1
//            = c_i          s_i  <  theta <= s_{i+1}
//            = c_m = 0      s_m  <  theta
//
// Adjacent intervals with equal value are merged, so c_i != c_{i+1}.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "assort/mnl.hpp"

namespace assort {

inline constexpr double kPlateauTolerance = 1e-12;

template <typename Scalar>
struct BasicPotentialProfile {
    std::vector<Scalar> jump_points; ///< s_1 < ... < s_m
    std::vector<Scalar> values;      ///< c_0, ..., c_m
    Scalar theta_star{0};
    Scalar f_star{0};

    /// F(theta) by binary search over the jump points (left-continuous).
    Scalar operator()(Scalar theta) const {
        if (!(theta >= Scalar(0))) throw DomainError("potential: theta must be >= 0");
        const auto it = std::lower_bound(jump_points.begin(), jump_points.end(), theta);
        return values[static_cast<std::size_t>(it - jump_points.begin())];
    }

    /// Index k of the maximal value (smallest level set on ties).
    std::size_t peak_index() const {
        std::size_t k = 0;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] >= values[k]) k = i;
        return k;
    }
};

using PotentialProfile = BasicPotentialProfile<double>;

namespace detail {

// Distinct revenues in descending order with the value of the level set
// L_{d_j} for each, accumulated with prefix sums over items sorted by revenue.
template <typename Scalar>
std::vector<std::pair<Scalar, Scalar>> descending_level_values(const BasicInstance<Scalar>& instance) {
    const ItemId n = instance.size();
    std::vector<ItemId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
        return instance.revenue(a) > instance.revenue(b);
    });
    std::vector<std::pair<Scalar, Scalar>> out;
    Scalar num(0);
    Scalar den(1);
    std::size_t k = 0;
    while (k < order.size()) {
        const Scalar level = instance.revenue(order[k]);
        while (k < order.size() && instance.revenue(order[k]) == level) {
            num += instance.revenue(order[k]) * instance.utility(order[k]);
            den += instance.utility(order[k]);
            ++k;
        }
        out.emplace_back(level, num / den);
    }
    return out;
}

} // namespace detail

template <typename Scalar>
BasicPotentialProfile<Scalar> build_potential_profile(const BasicInstance<Scalar>& instance) {
    const auto desc = detail::descending_level_values(instance);
    const std::size_t k = desc.size();

    // Ascending jump points s_1..s_k; c_0 is the full level set, c_i the
    // level set at s_{i+1}, and c_k = 0 beyond the largest revenue.
    std::vector<Scalar> jumps(k);
    std::vector<Scalar> vals(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        jumps[i] = desc[k - 1 - i].first;
        vals[i] = desc[k - 1 - i].second;
    }
    vals[k] = Scalar(0);

    BasicPotentialProfile<Scalar> profile;
    profile.values.push_back(vals[0]);
    for (std::size_t i = 0; i < k; ++i) {
        if (std::abs(static_cast<double>(vals[i + 1] - profile.values.back())) <= kPlateauTolerance)
            continue;
        profile.jump_points.push_back(jumps[i]);
        profile.values.push_back(vals[i + 1]);
    }
    profile.values.back() = Scalar(0);

    profile.f_star = *std::max_element(profile.values.begin(), profile.values.end());
    profile.theta_star = profile.f_star;
    return profile;
}

/// Revenue-ordered optimal assortment and its value F* = R(S*).
///
/// Among level sets attaining the maximum, the one with the largest threshold
/// (fewest items) is returned; an all-zero instance yields the empty set.
template <typename Scalar>
std::pair<Assortment, Scalar> oracle_optimal(const BasicInstance<Scalar>& instance) {
    const auto desc = detail::descending_level_values(instance);
    Scalar best(0);
    bool found = false;
    Scalar best_level(0);
    for (const auto& [level, value] : desc) {
        if (value > best) {
            best = value;
            best_level = level;
            found = true;
        }
    }
    if (!found) return {Assortment{}, Scalar(0)};
    return {level_set(instance, best_level), best};
}

} // namespace assort
