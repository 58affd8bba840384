#include "assort/verify.hpp"

#include <cmath>
#include <sstream>

#include "assort/concentration.hpp"
#include "assort/generators.hpp"

namespace assort {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

Instance random_small_instance(std::uint64_t seed, ItemId max_items) {
    Rng rng(seed);
    const auto n = static_cast<ItemId>(1 + rng() % static_cast<std::uint64_t>(max_items));
    Vector<double> r(n);
    Vector<double> v(n);
    for (ItemId i = 0; i < n; ++i) {
        r[i] = uniform01(rng);
        v[i] = uniform01(rng);
    }
    return Instance(std::move(r), std::move(v));
}

std::vector<std::string> check_choice_model(const Instance& instance, std::uint64_t seed, int extra_subsets,
                                            double tol) {
    std::vector<std::string> out;
    std::vector<Assortment> subsets{Assortment{}};
    for (ItemId i = 1; i <= instance.size(); ++i) subsets.push_back(level_set(instance, instance.revenue(i)));
    Rng rng(seed);
    for (int k = 0; k < extra_subsets; ++k) {
        std::vector<ItemId> items;
        for (ItemId i = 1; i <= instance.size(); ++i)
            if (uniform01(rng) < 0.5) items.push_back(i);
        subsets.emplace_back(std::move(items));
    }
    for (const auto& s : subsets) {
        const auto p = purchase_probabilities(instance, s);
        if (std::abs(p.sum() - 1.0) > tol) out.push_back("probabilities sum to " + fmt(p.sum()));
        double via_probs = 0.0;
        Eigen::Index k = 1;
        for (ItemId j : s) via_probs += p[k++] * instance.revenue(j);
        const double direct = expected_revenue(instance, s);
        if (std::abs(via_probs - direct) > tol)
            out.push_back("R(S)=" + fmt(direct) + " but sum Pr[j] r_j=" + fmt(via_probs));
    }
    return out;
}

std::vector<std::string> check_potential_structure(const Instance& instance, int grid_points, double tol) {
    std::vector<std::string> out;
    const PotentialProfile prof = build_potential_profile(instance);
    const double fs = prof.f_star;

    if (std::abs(potential(instance, fs) - fs) > tol)
        out.push_back("fixed point: F(F*)=" + fmt(potential(instance, fs)) + " vs F*=" + fmt(fs));
    if (prof.theta_star != prof.f_star) out.push_back("theta* differs from F*");
    if (prof.values.back() != 0.0) out.push_back("last plateau value is not 0");
    for (std::size_t i = 0; i + 1 < prof.values.size(); ++i)
        if (std::abs(prof.values[i] - prof.values[i + 1]) <= kPlateauTolerance)
            out.push_back("adjacent plateaus " + std::to_string(i) + " and " + std::to_string(i + 1) + " equal");

    for (std::size_t j = 0; j < prof.jump_points.size(); ++j) {
        const double s = prof.jump_points[j];
        const double direct = potential(instance, s);
        if (std::abs(direct - prof.values[j]) > tol)
            out.push_back("left continuity at s=" + fmt(s) + ": F=" + fmt(direct) + " plateau=" + fmt(prof.values[j]));
    }

    std::vector<double> grid;
    for (int k = 0; k <= grid_points; ++k) grid.push_back(static_cast<double>(k) / grid_points);
    grid.insert(grid.end(), prof.jump_points.begin(), prof.jump_points.end());
    grid.push_back(fs);
    std::sort(grid.begin(), grid.end());

    double prev = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double th = grid[k];
        const double f = potential(instance, th);
        if (std::abs(f - prof(th)) > tol) out.push_back("profile disagrees with F at theta=" + fmt(th));
        if (th <= fs && f < th - tol) out.push_back("F(theta) < theta left of theta* at " + fmt(th));
        if (th >= fs && f > th + tol) out.push_back("F(theta) > theta right of theta* at " + fmt(th));
        if (k > 0) {
            const double prev_th = grid[k - 1];
            if (th <= fs && f < prev - tol) out.push_back("F decreasing left of theta* at " + fmt(th));
            if (prev_th >= fs && f > prev + tol) out.push_back("F increasing right of theta* at " + fmt(th));
        }
        prev = f;
    }

    const std::size_t peak = prof.peak_index();
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
        if (i < peak && prof.values[i] > prof.values[i + 1] + tol) out.push_back("plateau values not unimodal (rise)");
        if (i > peak && prof.values[i] > prof.values[i - 1] + tol) out.push_back("plateau values not unimodal (fall)");
    }
    return out;
}

std::vector<std::string> check_oracle_equivalence(const Instance& instance, double tol) {
    std::vector<std::string> out;
    const auto [brute_set, brute] = brute_force_optimal(instance);
    const auto [level, value] = oracle_optimal(instance);
    if (std::abs(brute - value) > tol)
        out.push_back("brute force " + fmt(brute) + " vs level-set optimum " + fmt(value));
    if (std::abs(expected_revenue(instance, level) - value) > tol)
        out.push_back("oracle assortment does not attain its reported value");
    const auto prof = build_potential_profile(instance);
    if (std::abs(prof.f_star - value) > tol) out.push_back("F* differs from R(S*)");
    return out;
}

std::vector<std::string> check_lower_bound_kl(std::int64_t horizon) {
    std::vector<std::string> out;
    const auto p0 = generate_lower_bound(LowerBoundVariant::p0, 2, horizon);
    const auto p1 = generate_lower_bound(LowerBoundVariant::p1, 2, horizon);
    const double bound = 1.0 / (18.0 * static_cast<double>(horizon));
    for (const auto& s : {Assortment({1}), Assortment({1, 2})}) {
        const double kl = kl_purchase_distributions(p0, p1, s);
        if (!(kl <= bound))
            out.push_back("T=" + std::to_string(horizon) + ": KL=" + fmt(kl) + " exceeds 1/(18T)=" + fmt(bound));
    }
    if (kl_purchase_distributions(p0, p1, Assortment({2})) != 0.0)
        out.push_back("KL nonzero for an assortment without item 1");
    return out;
}

std::vector<PropertyResult> run_verification(const VerifyOptions& options) {
    PropertyResult choice{"choice-model consistency", 0, {}};
    PropertyResult structure{"potential-function structure", 0, {}};
    PropertyResult oracle{"level-set oracle equals brute force", 0, {}};
    for (std::int64_t k = 0; k < options.instances; ++k) {
        const auto seed = derive_seed(options.master_seed, static_cast<std::uint64_t>(k));
        const Instance inst = random_small_instance(seed);
        auto tag = [&](std::vector<std::string> fails, PropertyResult& into) {
            into.checked += 1;
            for (auto& f : fails) into.failures.push_back("instance seed " + std::to_string(seed) + ": " + f);
        };
        tag(check_choice_model(inst, seed), choice);
        tag(check_potential_structure(inst), structure);
        tag(check_oracle_equivalence(inst), oracle);
    }

    PropertyResult kl{"lower-bound KL <= 1/(18T)", 0, {}};
    for (std::int64_t t : {16, 100, 10000}) {
        kl.checked += 1;
        for (auto& f : check_lower_bound_kl(t)) kl.failures.push_back(f);
    }

    PropertyResult coverage{"uniform concentration coverage", 0, {}};
    Rng rng(derive_seed(options.master_seed, "coverage"));
    const double cov = validate_uniform_concentration(bernoulli_sampler(0.5), 100, 1e-4, options.coverage_trials, rng);
    coverage.checked = 1;
    if (cov < 0.99) coverage.failures.push_back("coverage " + fmt(cov) + " below 1 - L delta = 0.99");

    return {choice, structure, oracle, kl, coverage};
}

} // namespace assort
