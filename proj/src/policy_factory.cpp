#include "assort/policy.hpp"

#include <array>
#include <set>

#include "assort/baselines.hpp"
#include "assort/trisection.hpp"

namespace assort {

Policy::Policy(Vector<double> revenues, std::int64_t horizon)
    : revenues_(std::move(revenues)), horizon_(horizon) {
    if (horizon_ < 1) throw ConfigError("policy horizon must be >= 1");
    if (revenues_.size() < 1) throw ConfigError("policy needs at least one item");
}

Assortment Policy::next_assortment() {
    if (pending_) throw ProtocolError("next_assortment called twice without observe");
    if (used_ >= horizon_) throw HorizonExhausted("horizon of " + std::to_string(horizon_) + " periods exhausted");
    last_ = propose();
    last_.check_range(item_count());
    pending_ = true;
    used_ += 1;
    return last_;
}

void Policy::observe(const PurchaseOutcome& outcome) {
    if (!pending_) throw ProtocolError("observe called without a pending assortment");
    if (outcome.item != 0) {
        if (!last_.contains(outcome.item))
            throw ProtocolError("purchased item " + std::to_string(outcome.item) + " was not offered");
        if (outcome.revenue != revenues_[outcome.item - 1])
            throw ProtocolError("outcome revenue does not match item revenue");
    } else if (outcome.revenue != 0.0) {
        throw ProtocolError("no-purchase outcome must carry zero revenue");
    }
    pending_ = false;
    update(last_, outcome);
}

namespace {

constexpr std::array<const char*, 6> kPolicyNames = {
    "trisection", "adaptive-trisection", "ucb", "thompson", "grs", "static"};

void check_keys(const PolicySpec& spec, std::initializer_list<const char*> allowed) {
    if (!spec.params.is_object()) throw ConfigError("policy params must be a JSON object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : spec.params.items())
        if (!ok.count(key)) throw ConfigError("policy \"" + spec.name + "\" has no parameter \"" + key + "\"");
}

template <typename T>
T param(const PolicySpec& spec, const char* key, T fallback) {
    if (!spec.params.contains(key)) return fallback;
    try {
        return spec.params.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("policy parameter \"" + std::string(key) + "\" has the wrong type");
    }
}

Assortment static_assortment(const PolicySpec& spec, ItemId n) {
    if (!spec.params.contains("assortment")) throw ConfigError("static policy needs \"assortment\"");
    const auto& a = spec.params.at("assortment");
    if (a.is_string()) {
        const auto s = a.get<std::string>();
        if (s == "empty") return Assortment{};
        if (s == "full") return Assortment::full(n);
        throw ConfigError("static assortment \"" + s + "\" must be resolved before building the policy");
    }
    if (!a.is_array()) throw ConfigError("static assortment must be an array of item ids");
    try {
        return Assortment(a.get<std::vector<ItemId>>());
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("static assortment must be an array of item ids");
    }
}

} // namespace

bool is_known_policy(const std::string& name) {
    for (const char* known : kPolicyNames)
        if (name == known) return true;
    return false;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const Vector<double>& revenues,
                                    std::int64_t horizon, std::uint64_t seed) {
    if (spec.name == "trisection") {
        check_keys(spec, {"ci_scale", "epoch_length", "exploit_when_budget_short"});
        auto opt = TrisectionOptions::fixed_level();
        opt.ci_scale = param(spec, "ci_scale", opt.ci_scale);
        const auto form = param<std::string>(spec, "epoch_length", "log_t_squared");
        if (form == "log_t")
            opt.epoch_length = TrisectionOptions::EpochLength::log_t;
        else if (form != "log_t_squared")
            throw ConfigError("epoch_length must be \"log_t_squared\" or \"log_t\"");
        opt.exploit_when_budget_short = param(spec, "exploit_when_budget_short", false);
        return std::make_unique<TrisectionPolicy>(revenues, horizon, opt);
    }
    if (spec.name == "adaptive-trisection") {
        check_keys(spec, {"ci_scale", "exploit_when_budget_short"});
        auto opt = TrisectionOptions::adaptive_level(param(spec, "ci_scale", 2.0));
        opt.exploit_when_budget_short = param(spec, "exploit_when_budget_short", false);
        return std::make_unique<TrisectionPolicy>(revenues, horizon, opt);
    }
    if (spec.name == "ucb") {
        check_keys(spec, {"c1", "c2"});
        UcbOptions opt;
        opt.c1 = param(spec, "c1", opt.c1);
        opt.c2 = param(spec, "c2", opt.c2);
        return std::make_unique<UcbPolicy>(revenues, horizon, opt);
    }
    if (spec.name == "thompson") {
        check_keys(spec, {});
        return std::make_unique<ThompsonPolicy>(revenues, horizon, seed);
    }
    if (spec.name == "grs") {
        check_keys(spec, {});
        return std::make_unique<GoldenRatioSearchPolicy>(revenues, horizon);
    }
    if (spec.name == "static") {
        check_keys(spec, {"assortment"});
        return std::make_unique<StaticPolicy>(revenues, horizon,
                                              static_assortment(spec, static_cast<ItemId>(revenues.size())));
    }
    throw ConfigError("unknown policy \"" + spec.name + "\"");
}

} // namespace assort
