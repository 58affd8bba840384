#pragma once

// Hoeffding-style confidence intervals for the mean reward of a probed level
// set, and Monte Carlo validators for the concentration bounds they rely on.

#include <cstdint>
#include <functional>

#include "assort/random.hpp"

namespace assort {

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 1.0;
    std::int64_t count = 0;
    double mean = 0.0;

    double half_width_unclamped = 0.0;

    bool contains(double x) const { return lower <= x && x <= upper; }
};

/// mean +- sqrt(ln(1/delta) / (2 t)), clamped to [0,1]. delta in (0,1].
ConfidenceInterval fixed_ci(double sum, std::int64_t count, double delta);

/// mean +- sqrt(scale * ln(8/(delta t)) / t), clamped to [0,1].
/// The log term is floored at 0 when delta*t > 8.
ConfidenceInterval adaptive_ci(double sum, std::int64_t count, double delta, double scale = 2.0);

/// Radius used by adaptive_ci for variables supported on an interval of
/// width `range` (the general (b-a)^2 form).
double adaptive_radius(std::int64_t count, double delta, double scale, double range = 1.0);

struct CiScheme {
    enum class Kind { fixed_level, adaptive_level };

    Kind kind = Kind::adaptive_level;
    double delta = 1.0;
    // fixed: half-width sqrt(scale * ln(1/delta) / t), 0.5 reproduces fixed_ci.
    // adaptive: 2 is the theoretical constant, 0.1 the empirical tuning.
    double scale = 2.0;

    static CiScheme fixed(double delta, double scale = 0.5) { return {Kind::fixed_level, delta, scale}; }
    static CiScheme adaptive(double delta, double scale = 2.0) { return {Kind::adaptive_level, delta, scale}; }

    void validate() const;
    ConfidenceInterval interval(double sum, std::int64_t count) const;
};

/// A distribution bounded in [lo, hi] with known mean.
struct BoundedSampler {
    std::function<double(Rng&)> draw;
    double mean = 0.0;
    double lo = 0.0;
    double hi = 1.0;
};

BoundedSampler bernoulli_sampler(double p);
BoundedSampler constant_sampler(double mu);
BoundedSampler uniform_sampler(double lo, double hi);

/// Fraction of trials in which every prefix mean l = 1..L stays within
/// sqrt(2 (hi-lo)^2 ln(8/(delta l)) / l) of the true mean. Requires
/// trials >= 1000. The bound it checks against is 1 - L*delta.
double validate_uniform_concentration(const BoundedSampler& sampler, std::int64_t L, double delta,
                                      std::int64_t trials, Rng& rng);

/// Fraction of trials with max_{i<=n} (X_1 + ... + X_i - i mu) >= t.
double validate_maximal_inequality(const BoundedSampler& sampler, std::int64_t n, double t,
                                   std::int64_t trials, Rng& rng);

/// exp(-2 t^2 / (n (hi-lo)^2)).
double maximal_inequality_bound(std::int64_t n, double t, double range = 1.0);

} // namespace assort
