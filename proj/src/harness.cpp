#include "assort/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

#include <Eigen/Dense>

#include "assort/instance_io.hpp"
#include "assort/potential.hpp"

namespace assort {

EpisodeLog run_episode(const Instance& instance, Policy& policy, std::int64_t horizon, Rng& customers,
                       const EpisodeOptions& options) {
    if (horizon < 1) throw ConfigError("episode horizon must be >= 1");
    if (policy.item_count() != instance.size())
        throw ConfigError("policy and instance disagree on the number of items");
    if (policy.remaining() < horizon) throw ConfigError("policy horizon shorter than episode");

    EpisodeLog log;
    log.policy_name = policy.name();
    const auto [best_set, best_value] = oracle_optimal(instance);
    (void)best_value;
    // Same arithmetic path as R(S_t) so the oracle assortment scores exactly 0.
    const double r_star = expected_revenue(instance, best_set);
    log.optimal_revenue = r_star;
    log.steps.reserve(static_cast<std::size_t>(horizon));
    if (options.record_assortments) log.assortments.reserve(static_cast<std::size_t>(horizon));

    Assortment previous;
    double previous_value = 0.0;
    bool have_previous = false;
    double realized = 0.0;
    for (std::int64_t t = 1; t <= horizon; ++t) {
        Assortment offer = policy.next_assortment();
        if (!have_previous || offer != previous) {
            previous_value = expected_revenue(instance, offer);
            previous = offer;
            have_previous = true;
        }
        const PurchaseOutcome outcome = sample_purchase(instance, offer, customers);
        policy.observe(outcome);

        EpisodeStep step;
        step.t = t;
        step.assortment_size = offer.size();
        step.expected_revenue = previous_value;
        step.inst_regret = r_star - previous_value;
        step.realized_revenue = outcome.revenue;
        log.cumulative_regret += step.inst_regret;
        realized += outcome.revenue;
        log.steps.push_back(step);
        if (options.record_assortments) log.assortments.push_back(std::move(offer));
    }
    log.realized_regret = static_cast<double>(horizon) * r_star - realized;
    return log;
}

PolicySpec resolve_policy_spec(const PolicySpec& spec, const Instance& instance) {
    if (spec.name != "static" || !spec.params.contains("assortment")) return spec;
    const auto& a = spec.params.at("assortment");
    if (!a.is_string() || a.get<std::string>() != "oracle") return spec;
    PolicySpec resolved = spec;
    resolved.params["assortment"] = oracle_optimal(instance).first.items();
    return resolved;
}

EpisodeLog run_episode(const Instance& instance, const PolicySpec& spec, std::int64_t horizon,
                       std::uint64_t seed, const EpisodeOptions& options) {
    auto policy = make_policy(resolve_policy_spec(spec, instance), instance.revenues(), horizon,
                              derive_seed(seed, "policy"));
    Rng customers(derive_seed(seed, "customer"));
    EpisodeLog log = run_episode(instance, *policy, horizon, customers, options);
    log.seed = seed;
    return log;
}

void write_episode_csv(const EpisodeLog& log, std::ostream& out) {
    out << "t,assortment_size,expected_revenue,inst_regret,cum_regret\n";
    double cum = 0.0;
    char buf[160];
    for (const auto& s : log.steps) {
        cum += s.inst_regret;
        std::snprintf(buf, sizeof buf, "%lld,%zu,%.17g,%.17g,%.17g\n", static_cast<long long>(s.t),
                      s.assortment_size, s.expected_revenue, s.inst_regret, cum);
        out << buf;
    }
}

AggregateSummary summarize(std::string policy_name, std::int64_t n, std::int64_t t,
                           std::vector<double> regrets) {
    if (regrets.empty()) throw Error("summarize: no replications");
    AggregateSummary s;
    s.policy_name = std::move(policy_name);
    s.n = n;
    s.t = t;
    s.replications = static_cast<std::int64_t>(regrets.size());
    double sum = 0.0;
    for (double r : regrets) sum += r;
    s.mean_regret = sum / static_cast<double>(regrets.size());
    s.max_regret = *std::max_element(regrets.begin(), regrets.end());
    if (regrets.size() > 1) {
        double ss = 0.0;
        for (double r : regrets) ss += (r - s.mean_regret) * (r - s.mean_regret);
        s.std_regret = std::sqrt(ss / static_cast<double>(regrets.size() - 1));
    }
    s.regrets = std::move(regrets);
    return s;
}

nlohmann::json to_json(const AggregateSummary& s) {
    return {{"policy", s.policy_name},         {"n", s.n},
            {"t", s.t},                        {"replications", s.replications},
            {"mean_regret", s.mean_regret},    {"max_regret", s.max_regret},
            {"std_regret", s.std_regret},      {"regrets", s.regrets}};
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::int64_t replication) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(replication));
}

std::uint64_t instance_seed(std::uint64_t master_seed) { return derive_seed(master_seed, "instance"); }

Instance make_instance(const RunConfig& config, std::int64_t replication) {
    const auto n = static_cast<ItemId>(config.n);
    switch (config.generator) {
    case GeneratorKind::synthetic: {
        std::uint64_t seed = instance_seed(config.master_seed);
        if (config.redraw_instance) seed = derive_seed(seed, static_cast<std::uint64_t>(replication));
        return generate_synthetic(n, config.generator_spec, seed);
    }
    case GeneratorKind::lower_bound_p0: return generate_lower_bound(LowerBoundVariant::p0, n, config.t);
    case GeneratorKind::lower_bound_p1: return generate_lower_bound(LowerBoundVariant::p1, n, config.t);
    case GeneratorKind::file: return load_instance(config.instance_file);
    }
    throw ConfigError("unknown generator");
}

AggregateSummary run_batch(const RunConfig& config, int workers) {
    config.validate();
    const auto reps = static_cast<std::size_t>(config.replications);
    std::vector<double> regrets(reps, 0.0);
    std::vector<std::exception_ptr> errors(reps);

    std::optional<Instance> shared;
    if (!config.redraw_instance) shared = make_instance(config, 0);
    if (shared && shared->size() != config.n)
        throw ConfigError("instance file has " + std::to_string(shared->size()) + " items, config says N=" +
                          std::to_string(config.n));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < reps; k = next++) {
            try {
                const Instance instance =
                    shared ? *shared : make_instance(config, static_cast<std::int64_t>(k));
                const auto seed = replication_seed(config.master_seed, static_cast<std::int64_t>(k));
                regrets[k] = run_episode(instance, config.policy, config.t, seed).cumulative_regret;
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int threads = std::clamp<int>(workers, 1, static_cast<int>(reps));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    for (std::size_t k = 0; k < reps; ++k) {
        if (!errors[k]) continue;
        const auto seed = replication_seed(config.master_seed, static_cast<std::int64_t>(k));
        try {
            std::rethrow_exception(errors[k]);
        } catch (const std::exception& e) {
            throw Error("replication " + std::to_string(k) + " (seed " + std::to_string(seed) +
                        ") failed: " + e.what());
        }
    }
    return summarize(config.policy.name, config.n, config.t, std::move(regrets));
}

std::optional<std::pair<double, double>> fit_power_law(const std::vector<double>& x,
                                                       const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const auto m = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) return std::nullopt;
        design(i, 0) = std::log(x[k]);
        design(i, 1) = 1.0;
        rhs[i] = std::log(y[k]);
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
    return std::make_pair(coef[0], coef[1]);
}

ScalingResult regret_scaling_study(const RunConfig& base, const std::vector<std::int64_t>& horizons,
                                   int workers) {
    if (horizons.empty()) throw ConfigError("scaling study needs at least one horizon");
    for (std::size_t i = 1; i < horizons.size(); ++i)
        if (horizons[i] <= horizons[i - 1]) throw ConfigError("scaling horizons must be increasing");
    ScalingResult out;
    std::vector<double> xs;
    for (std::int64_t t : horizons) {
        RunConfig cfg = base;
        cfg.t = t;
        const auto summary = run_batch(cfg, workers);
        out.horizons.push_back(t);
        out.mean_regret.push_back(summary.mean_regret);
        xs.push_back(static_cast<double>(t));
    }
    if (auto fit = fit_power_law(xs, out.mean_regret)) {
        out.exponent = fit->first;
        out.log_intercept = fit->second;
    }
    return out;
}

} // namespace assort
