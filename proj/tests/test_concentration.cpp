#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "assort/concentration.hpp"
#include "assort/error.hpp"

using namespace assort;

TEST_CASE("fixed_ci examples") {
    const auto a = fixed_ci(5, 10, 1.0);
    CHECK(a.lower == 0.5);
    CHECK(a.upper == 0.5);
    CHECK(a.mean == 0.5);

    const auto b = fixed_ci(0, 1, std::exp(-2.0));
    CHECK(b.mean == 0.0);
    CHECK(b.half_width_unclamped == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.lower == 0.0);
    CHECK(b.upper == doctest::Approx(1.0));

    const auto c = fixed_ci(50, 100, 1e-6);
    CHECK(c.half_width_unclamped == doctest::Approx(0.262826088487846598931506067905).epsilon(1e-14));
    CHECK(c.lower == doctest::Approx(0.5 - 0.262826088487846598931506067905));
}

TEST_CASE("fixed_ci errors") {
    CHECK_THROWS_AS(fixed_ci(0, 0, 0.5), DomainError);
    CHECK_THROWS_AS(fixed_ci(3, 2, 0.5), DomainError);
    CHECK_THROWS_AS(fixed_ci(-1, 2, 0.5), DomainError);
    CHECK_THROWS_AS(fixed_ci(1, 2, 0.0), DomainError);
    CHECK_THROWS_AS(fixed_ci(1, 2, 1.5), DomainError);
}

TEST_CASE("adaptive_ci examples") {
    const auto degenerate = adaptive_ci(0.3, 1, 8.0);
    CHECK(degenerate.half_width_unclamped == 0.0);
    CHECK(degenerate.lower == doctest::Approx(0.3));
    CHECK(degenerate.upper == doctest::Approx(0.3));
    // delta t > 8: log floored, no error
    CHECK(adaptive_ci(1.0, 100, 1.0).half_width_unclamped == 0.0);

    const auto wide = adaptive_ci(1.0, 1, 1e-3, 2.0);
    CHECK(wide.half_width_unclamped == doctest::Approx(4.23962187480486825084763780465).epsilon(1e-14));
    CHECK(wide.lower == 0.0);
    CHECK(wide.upper == 1.0);

    const auto narrow = adaptive_ci(248.0, 496, 1e-3, 2.0);
    CHECK(narrow.half_width_unclamped == doctest::Approx(0.105887586732060805728375348801).epsilon(1e-14));

    CHECK(adaptive_ci(248.0, 496, 1e-3, 0.1).half_width_unclamped ==
          doctest::Approx(0.105887586732060805728375348801 * std::sqrt(0.05)).epsilon(1e-13));
    CHECK_THROWS_AS(adaptive_ci(0, 0, 1e-3), DomainError);
    CHECK_THROWS_AS(adaptive_ci(0, 1, 1e-3, 0.0), DomainError);
}

TEST_CASE("CiScheme dispatch") {
    CHECK(CiScheme::fixed(1e-6).interval(50, 100).half_width_unclamped == fixed_ci(50, 100, 1e-6).half_width_unclamped);
    CHECK(CiScheme::adaptive(1e-3, 0.1).interval(50, 100).half_width_unclamped ==
          adaptive_ci(50, 100, 1e-3, 0.1).half_width_unclamped);
    CHECK_THROWS_AS(CiScheme::adaptive(0.0).validate(), ConfigError);
    CHECK_THROWS_AS(CiScheme::adaptive(0.5, -1.0).validate(), ConfigError);
}

TEST_CASE("interval properties") {
    Rng rng(4);
    for (int k = 0; k < 2000; ++k) {
        const std::int64_t t = 1 + static_cast<std::int64_t>(rng() % 5000);
        const double mean = uniform01(rng);
        const double delta = std::pow(10.0, -1.0 - 6.0 * uniform01(rng));
        const double sum = mean * static_cast<double>(t);
        for (const auto& ci : {fixed_ci(sum, t, delta), adaptive_ci(sum, t, delta, 2.0), adaptive_ci(sum, t, delta, 0.1)}) {
            CHECK(ci.lower <= ci.mean);
            CHECK(ci.mean <= ci.upper);
            CHECK(0.0 <= ci.lower);
            CHECK(ci.upper <= 1.0);
        }
        // Width shrinks with more samples at the same mean while ln(8/(delta t)) >= 1.
        const std::int64_t t2 = t + 1 + static_cast<std::int64_t>(rng() % 100);
        if (std::log(8.0 / (delta * static_cast<double>(t2))) >= 1.0)
            CHECK(adaptive_radius(t2, delta, 2.0) <= adaptive_radius(t, delta, 2.0));
        CHECK(fixed_ci(mean * t2, t2, delta).half_width_unclamped <= fixed_ci(sum, t, delta).half_width_unclamped);
    }
}

TEST_CASE("fixed (1/T^2) and adaptive (1/T) widths agree within a factor 4") {
    for (std::int64_t horizon : {10, 100, 1000, 10000, 100000, 1000000}) {
        const double T = static_cast<double>(horizon);
        for (std::int64_t t = 1; t <= horizon; t = t < 64 ? t + 1 : t * 5 / 4) {
            if (std::log(8.0 * T / static_cast<double>(t)) <= 0.0) continue;
            const double fixed = fixed_ci(0.5 * t, t, 1.0 / (T * T)).half_width_unclamped;
            const double adaptive = adaptive_radius(t, 1.0 / T, 2.0);
            const double ratio = fixed / adaptive;
            INFO("T=" << horizon << " t=" << t);
            CHECK(ratio >= 0.25);
            CHECK(ratio <= 4.0);
        }
    }
}

TEST_CASE("general range radius rescales") {
    CHECK(adaptive_radius(10, 0.01, 2.0, 3.0) == doctest::Approx(3.0 * adaptive_radius(10, 0.01, 2.0)));
}

TEST_CASE("uniform concentration validator") {
    Rng rng(17);
    CHECK(validate_uniform_concentration(constant_sampler(0.3), 100, 1e-4, 1000, rng) == 1.0);

    const double cov_half = validate_uniform_concentration(bernoulli_sampler(0.5), 100, 1e-4, 10000, rng);
    CHECK(cov_half >= 0.99);
    const double cov_tenth = validate_uniform_concentration(bernoulli_sampler(0.1), 1000, 1e-5, 10000, rng);
    CHECK(cov_tenth >= 0.99);
    // Rescaled support [2, 5].
    CHECK(validate_uniform_concentration(uniform_sampler(2.0, 5.0), 200, 1e-4, 2000, rng) >= 1.0 - 200 * 1e-4);

    CHECK_THROWS_AS(validate_uniform_concentration(bernoulli_sampler(0.5), 10, 0.1, 999, rng), DomainError);
    BoundedSampler unbounded{[](Rng&) { return 0.0; }, 0.0, -INFINITY, INFINITY};
    CHECK_THROWS_AS(validate_uniform_concentration(unbounded, 10, 0.1, 1000, rng), Unsupported);
}

TEST_CASE("maximal inequality validator") {
    Rng rng(23);
    CHECK(validate_maximal_inequality(bernoulli_sampler(0.5), 100, 100.0, 1000, rng) == 0.0);
    CHECK(validate_maximal_inequality(bernoulli_sampler(0.3), 50, 60.0, 1000, rng) == 0.0);

    const std::int64_t trials = 100000;
    for (double t : {20.0, 5.0}) {
        const double bound = maximal_inequality_bound(100, t);
        const double frac = validate_maximal_inequality(bernoulli_sampler(0.5), 100, t, trials, rng);
        const double slack = 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
        INFO("t=" << t << " fraction " << frac << " bound " << bound);
        CHECK(frac <= bound + slack + 1.0 / trials);
    }
    CHECK(maximal_inequality_bound(100, 20.0) == doctest::Approx(std::exp(-8.0)));
    BoundedSampler unbounded{[](Rng&) { return 0.0; }, 0.0, 0.0, INFINITY};
    CHECK_THROWS_AS(validate_maximal_inequality(unbounded, 10, 1.0, 10, rng), Unsupported);
}
