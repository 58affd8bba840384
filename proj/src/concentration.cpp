#include "assort/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "assort/error.hpp"

namespace assort {

namespace {

void check_sum(double sum, std::int64_t count) {
    if (count <= 0) throw DomainError("confidence interval needs count >= 1");
    if (!(sum >= 0.0 && sum <= static_cast<double>(count)))
        throw DomainError("confidence interval: sum must lie in [0, count]");
}

ConfidenceInterval make_interval(double sum, std::int64_t count, double half_width) {
    ConfidenceInterval ci;
    ci.count = count;
    ci.mean = sum / static_cast<double>(count);
    ci.half_width_unclamped = half_width;
    ci.lower = std::clamp(ci.mean - half_width, 0.0, 1.0);
    ci.upper = std::clamp(ci.mean + half_width, 0.0, 1.0);
    return ci;
}

void check_sampler(const BoundedSampler& s) {
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || s.lo > s.hi || !s.draw)
        throw Unsupported("sampler must be bounded on a finite interval");
}

} // namespace

ConfidenceInterval fixed_ci(double sum, std::int64_t count, double delta) {
    check_sum(sum, count);
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("fixed_ci: delta must be in (0,1]");
    const double t = static_cast<double>(count);
    return make_interval(sum, count, std::sqrt(std::log(1.0 / delta) / (2.0 * t)));
}

double adaptive_radius(std::int64_t count, double delta, double scale, double range) {
    if (count <= 0) throw DomainError("adaptive radius needs count >= 1");
    if (!(delta > 0.0)) throw DomainError("adaptive radius: delta must be positive");
    if (!(scale > 0.0)) throw DomainError("adaptive radius: scale must be positive");
    const double t = static_cast<double>(count);
    const double log_term = std::max(0.0, std::log(8.0 / (delta * t)));
    return std::sqrt(scale * range * range * log_term / t);
}

ConfidenceInterval adaptive_ci(double sum, std::int64_t count, double delta, double scale) {
    check_sum(sum, count);
    return make_interval(sum, count, adaptive_radius(count, delta, scale));
}

void CiScheme::validate() const {
    if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("CiScheme: delta must be in (0,1]");
    if (!(scale > 0.0)) throw ConfigError("CiScheme: scale must be positive");
}

ConfidenceInterval CiScheme::interval(double sum, std::int64_t count) const {
    if (kind == Kind::adaptive_level) return adaptive_ci(sum, count, delta, scale);
    if (scale == 0.5) return fixed_ci(sum, count, delta);
    check_sum(sum, count);
    const double t = static_cast<double>(count);
    return make_interval(sum, count, std::sqrt(scale * std::log(1.0 / delta) / t));
}

BoundedSampler bernoulli_sampler(double p) {
    return {[p](Rng& rng) { return uniform01(rng) < p ? 1.0 : 0.0; }, p, 0.0, 1.0};
}

BoundedSampler constant_sampler(double mu) {
    return {[mu](Rng&) { return mu; }, mu, mu, mu};
}

BoundedSampler uniform_sampler(double lo, double hi) {
    return {[lo, hi](Rng& rng) { return lo + (hi - lo) * uniform01(rng); }, 0.5 * (lo + hi), lo, hi};
}

double validate_uniform_concentration(const BoundedSampler& sampler, std::int64_t L, double delta,
                                      std::int64_t trials, Rng& rng) {
    check_sampler(sampler);
    if (L < 1) throw DomainError("uniform concentration: L must be >= 1");
    if (trials < 1000) throw DomainError("uniform concentration: at least 1000 trials required");
    const double range = sampler.hi - sampler.lo;

    std::vector<double> radius(static_cast<std::size_t>(L));
    for (std::int64_t l = 1; l <= L; ++l)
        radius[static_cast<std::size_t>(l - 1)] = adaptive_radius(l, delta, 2.0, range);

    std::int64_t covered = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        double sum = 0.0;
        bool ok = true;
        for (std::int64_t l = 1; l <= L; ++l) {
            sum += sampler.draw(rng);
            const double dev = std::abs(sum / static_cast<double>(l) - sampler.mean);
            // 1e-12 absorbs rounding of the running mean for degenerate samplers.
            if (dev > radius[static_cast<std::size_t>(l - 1)] + 1e-12) ok = false;
        }
        covered += ok ? 1 : 0;
    }
    return static_cast<double>(covered) / static_cast<double>(trials);
}

double validate_maximal_inequality(const BoundedSampler& sampler, std::int64_t n, double t,
                                   std::int64_t trials, Rng& rng) {
    check_sampler(sampler);
    if (n < 1) throw DomainError("maximal inequality: n must be >= 1");
    if (!(t > 0.0)) throw DomainError("maximal inequality: t must be positive");
    if (trials < 1) throw DomainError("maximal inequality: trials must be >= 1");
    std::int64_t hits = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        double excess = 0.0;
        bool hit = false;
        for (std::int64_t i = 0; i < n; ++i) {
            excess += sampler.draw(rng) - sampler.mean;
            if (excess >= t) hit = true;
        }
        hits += hit ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

double maximal_inequality_bound(std::int64_t n, double t, double range) {
    return std::exp(-2.0 * t * t / (static_cast<double>(n) * range * range));
}

} // namespace assort
