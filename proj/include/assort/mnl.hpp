#pragma once

// Uncapacitated multinomial-logit (MNL) choice model: instances, assortments,
// purchase sampling and expected revenue.
//
// Items are numbered 1..N. Item 0 is the no-purchase option, whose utility is
// fixed to 1 and whose revenue is 0; neither is stored.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "assort/error.hpp"
#include "assort/random.hpp"

namespace assort {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ItemId = int;

/// Sorted set of item ids offered to one customer.
class Assortment {
public:
    Assortment() = default;

    /// `items` must be strictly increasing and positive.
    explicit Assortment(std::vector<ItemId> items) : items_(std::move(items)) {
        for (std::size_t k = 0; k < items_.size(); ++k) {
            if (items_[k] < 1)
                throw InvalidAssortment("item id " + std::to_string(items_[k]) +
                                        " is not a valid item (ids start at 1)");
            if (k > 0 && items_[k] <= items_[k - 1])
                throw InvalidAssortment("assortment items must be strictly increasing");
        }
    }

    static Assortment from_unsorted(std::vector<ItemId> items) {
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
        return Assortment(std::move(items));
    }

    static Assortment full(ItemId n) {
        std::vector<ItemId> items(static_cast<std::size_t>(n));
        for (ItemId i = 0; i < n; ++i) items[static_cast<std::size_t>(i)] = i + 1;
        return Assortment(std::move(items));
    }

    const std::vector<ItemId>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    bool contains(ItemId i) const { return std::binary_search(items_.begin(), items_.end(), i); }

    /// Throws InvalidAssortment unless every id is in [1, n].
    void check_range(std::int64_t n) const {
        if (!items_.empty() && items_.back() > n)
            throw InvalidAssortment("item id " + std::to_string(items_.back()) +
                                    " exceeds instance size " + std::to_string(n));
    }

    friend bool operator==(const Assortment&, const Assortment&) = default;

private:
    std::vector<ItemId> items_;
};

/// Revenues r_i in [0,1] and utilities v_i >= 0 of an MNL environment.
template <typename Scalar>
class BasicInstance {
public:
    using VectorType = Vector<Scalar>;

    BasicInstance(VectorType revenues, VectorType utilities)
        : revenues_(std::move(revenues)), utilities_(std::move(utilities)) {
        if (revenues_.size() < 1) throw InvalidInstance("instance must have at least one item");
        if (revenues_.size() != utilities_.size())
            throw InvalidInstance("revenues and utilities differ in length");
        for (Eigen::Index i = 0; i < revenues_.size(); ++i) {
            const Scalar r = revenues_[i];
            const Scalar v = utilities_[i];
            if (!(r >= Scalar(0) && r <= Scalar(1)))
                throw InvalidInstance("revenue of item " + std::to_string(i + 1) + " outside [0,1]");
            if (!(v >= Scalar(0)) || !std::isfinite(static_cast<double>(v)))
                throw InvalidInstance("utility of item " + std::to_string(i + 1) +
                                      " must be finite and non-negative");
        }
    }

    BasicInstance(const std::vector<Scalar>& revenues, const std::vector<Scalar>& utilities)
        : BasicInstance(to_vector(revenues), to_vector(utilities)) {}

    ItemId size() const { return static_cast<ItemId>(revenues_.size()); }
    const VectorType& revenues() const { return revenues_; }
    const VectorType& utilities() const { return utilities_; }
    Scalar revenue(ItemId item) const { return revenues_[item - 1]; }
    Scalar utility(ItemId item) const { return utilities_[item - 1]; }

    template <typename Other>
    BasicInstance<Other> cast() const {
        return BasicInstance<Other>(revenues_.template cast<Other>(),
                                    utilities_.template cast<Other>());
    }

    friend bool operator==(const BasicInstance& a, const BasicInstance& b) {
        return a.revenues_ == b.revenues_ && a.utilities_ == b.utilities_;
    }

private:
    static VectorType to_vector(const std::vector<Scalar>& xs) {
        VectorType out(static_cast<Eigen::Index>(xs.size()));
        for (std::size_t i = 0; i < xs.size(); ++i) out[static_cast<Eigen::Index>(i)] = xs[i];
        return out;
    }

    VectorType revenues_;
    VectorType utilities_;
};

using Instance = BasicInstance<double>;

struct PurchaseOutcome {
    ItemId item = 0; ///< 0 means no purchase
    double revenue = 0.0;
};

/// R(S) = sum_{j in S} r_j v_j / (1 + sum_{j in S} v_j); zero for S empty.
template <typename Scalar>
Scalar expected_revenue(const BasicInstance<Scalar>& instance, const Assortment& assortment) {
    assortment.check_range(instance.size());
    Scalar num(0);
    Scalar den(1);
    for (ItemId j : assortment) {
        num += instance.revenue(j) * instance.utility(j);
        den += instance.utility(j);
    }
    return num / den;
}

/// Choice probabilities over {0} followed by the items of S, in order.
template <typename Scalar>
Vector<Scalar> purchase_probabilities(const BasicInstance<Scalar>& instance,
                                      const Assortment& assortment) {
    assortment.check_range(instance.size());
    Vector<Scalar> p(static_cast<Eigen::Index>(assortment.size()) + 1);
    Scalar den(1);
    for (ItemId j : assortment) den += instance.utility(j);
    p[0] = Scalar(1) / den;
    Eigen::Index k = 1;
    for (ItemId j : assortment) p[k++] = instance.utility(j) / den;
    return p;
}

/// Draws one customer choice. Consumes exactly one engine output.
template <typename Scalar>
PurchaseOutcome sample_purchase(const BasicInstance<Scalar>& instance,
                                const Assortment& assortment, Rng& rng) {
    assortment.check_range(instance.size());
    const double u = uniform01(rng);
    double den = 1.0;
    for (ItemId j : assortment) den += static_cast<double>(instance.utility(j));
    double acc = u * den;
    if (acc < 1.0) return {};
    acc -= 1.0;
    for (ItemId j : assortment) {
        const double v = static_cast<double>(instance.utility(j));
        if (acc < v) return {j, static_cast<double>(instance.revenue(j))};
        acc -= v;
    }
    // Rounding pushed u*den past the last cumulative boundary: the last
    // positive-utility item is the only consistent choice.
    for (auto it = assortment.items().rbegin(); it != assortment.items().rend(); ++it)
        if (instance.utility(*it) > Scalar(0))
            return {*it, static_cast<double>(instance.revenue(*it))};
    return {};
}

/// L_theta over a bare revenue vector: {i : r_i >= theta}.
template <typename Scalar>
Assortment level_set(const Vector<Scalar>& revenues, Scalar theta) {
    if (!(theta >= Scalar(0))) throw DomainError("level_set: theta must be >= 0");
    std::vector<ItemId> items;
    for (Eigen::Index i = 0; i < revenues.size(); ++i)
        if (revenues[i] >= theta) items.push_back(static_cast<ItemId>(i + 1));
    return Assortment(std::move(items));
}

template <typename Scalar>
Assortment level_set(const BasicInstance<Scalar>& instance, Scalar theta) {
    return level_set(instance.revenues(), theta);
}

/// F(theta) = R(L_theta), evaluated directly from the level set.
template <typename Scalar>
Scalar potential(const BasicInstance<Scalar>& instance, Scalar theta) {
    return expected_revenue(instance, level_set(instance, theta));
}

inline constexpr int kBruteForceMaxItems = 20;

/// Exhaustive maximum of R(S) over all 2^N subsets. Only for N <= 20.
template <typename Scalar>
std::pair<Assortment, Scalar> brute_force_optimal(const BasicInstance<Scalar>& instance) {
    const ItemId n = instance.size();
    if (n > kBruteForceMaxItems)
        throw DomainError("brute_force_optimal: N=" + std::to_string(n) + " exceeds cap of " +
                          std::to_string(kBruteForceMaxItems));
    std::uint32_t best_mask = 0;
    Scalar best(0);
    const std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        Scalar num(0);
        Scalar den(1);
        for (ItemId i = 0; i < n; ++i) {
            if (mask & (std::uint32_t{1} << i)) {
                num += instance.revenue(i + 1) * instance.utility(i + 1);
                den += instance.utility(i + 1);
            }
        }
        const Scalar value = num / den;
        if (value > best) {
            best = value;
            best_mask = mask;
        }
    }
    std::vector<ItemId> items;
    for (ItemId i = 0; i < n; ++i)
        if (best_mask & (std::uint32_t{1} << i)) items.push_back(i + 1);
    return {Assortment(std::move(items)), best};
}

/// Exact KL(P0(S) || P1(S)) between the categorical choice distributions,
/// natural log.
template <typename Scalar>
Scalar kl_purchase_distributions(const BasicInstance<Scalar>& p0, const BasicInstance<Scalar>& p1,
                                 const Assortment& assortment) {
    if (p0.size() != p1.size()) throw InvalidInstance("KL: instances differ in item count");
    const Vector<Scalar> p = purchase_probabilities(p0, assortment);
    const Vector<Scalar> q = purchase_probabilities(p1, assortment);
    Scalar kl(0);
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (p[k] == Scalar(0)) continue;
        if (q[k] == Scalar(0))
            throw DivergenceUndefined("KL: outcome has positive mass under p0 but none under p1");
        kl += p[k] * std::log(p[k] / q[k]);
    }
    return kl;
}

/// Chi-square upper bound sum_j (p_j - q_j)^2 / q_j on the same KL.
template <typename Scalar>
Scalar kl_chi_square_bound(const BasicInstance<Scalar>& p0, const BasicInstance<Scalar>& p1,
                           const Assortment& assortment) {
    if (p0.size() != p1.size()) throw InvalidInstance("KL: instances differ in item count");
    const Vector<Scalar> p = purchase_probabilities(p0, assortment);
    const Vector<Scalar> q = purchase_probabilities(p1, assortment);
    Scalar bound(0);
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (q[k] == Scalar(0)) {
            if (p[k] != Scalar(0))
                throw DivergenceUndefined("chi-square: outcome has zero mass under p1");
            continue;
        }
        const Scalar d = p[k] - q[k];
        bound += d * d / q[k];
    }
    return bound;
}

} // namespace assort
