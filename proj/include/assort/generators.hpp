#pragma once

#include <cstdint>

#include "assort/mnl.hpp"

namespace assort {

struct EpisodeLog;

/// Revenues ~ U[revenue_low, revenue_high], utilities ~ U[utility_low/N, utility_high/N].
struct GeneratorSpec {
    double revenue_low = 0.4;
    double revenue_high = 0.5;
    double utility_low = 10.0;
    double utility_high = 20.0;

    void validate() const;
    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

Instance generate_synthetic(ItemId n, const GeneratorSpec& spec, std::uint64_t seed);

enum class LowerBoundVariant { p0, p1 };

/// r = (1, 1/2, 0, ...), v = (1 -+ 1/(4 sqrt T), 1, 0, ...): minus for P0,
/// plus for P1. Requires N >= 2.
Instance generate_lower_bound(LowerBoundVariant variant, ItemId n, std::int64_t horizon);

/// Fraction of periods offering item 1 without item 2. Needs a log recorded
/// with assortments.
double lower_bound_offer_fraction(const EpisodeLog& log);

/// 0 if that fraction is at least 1/2, else 1.
int lower_bound_tester(const EpisodeLog& log);

} // namespace assort
