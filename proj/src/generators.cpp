#include "assort/generators.hpp"

#include <cmath>

#include "assort/harness.hpp"

namespace assort {

void GeneratorSpec::validate() const {
    if (!(0.0 <= revenue_low && revenue_low <= revenue_high && revenue_high <= 1.0))
        throw ConfigError("generator: need 0 <= revenue_low <= revenue_high <= 1");
    if (!(0.0 <= utility_low && utility_low <= utility_high && std::isfinite(utility_high)))
        throw ConfigError("generator: need 0 <= utility_low <= utility_high < inf");
}

Instance generate_synthetic(ItemId n, const GeneratorSpec& spec, std::uint64_t seed) {
    if (n < 1) throw ConfigError("generator: N must be >= 1");
    spec.validate();
    Rng rng(seed);
    const double nd = static_cast<double>(n);
    Vector<double> r(n);
    Vector<double> v(n);
    for (ItemId i = 0; i < n; ++i) {
        r[i] = spec.revenue_low + (spec.revenue_high - spec.revenue_low) * uniform01(rng);
        v[i] = (spec.utility_low + (spec.utility_high - spec.utility_low) * uniform01(rng)) / nd;
    }
    return Instance(std::move(r), std::move(v));
}

Instance generate_lower_bound(LowerBoundVariant variant, ItemId n, std::int64_t horizon) {
    if (n < 2) throw ConfigError("lower-bound instance needs N >= 2");
    if (horizon < 1) throw ConfigError("lower-bound instance needs T >= 1");
    Vector<double> r = Vector<double>::Zero(n);
    Vector<double> v = Vector<double>::Zero(n);
    const double shift = 1.0 / (4.0 * std::sqrt(static_cast<double>(horizon)));
    r[0] = 1.0;
    r[1] = 0.5;
    v[0] = variant == LowerBoundVariant::p0 ? 1.0 - shift : 1.0 + shift;
    v[1] = 1.0;
    return Instance(std::move(r), std::move(v));
}

double lower_bound_offer_fraction(const EpisodeLog& log) {
    if (log.assortments.size() != log.steps.size())
        throw ConfigError("lower-bound tester needs a log with recorded assortments");
    if (log.assortments.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& s : log.assortments)
        if (s.contains(1) && !s.contains(2)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(log.assortments.size());
}

int lower_bound_tester(const EpisodeLog& log) { return lower_bound_offer_fraction(log) >= 0.5 ? 0 : 1; }

} // namespace assort
