#pragma once

// Episode driver and replication aggregation.
//
// Regret is expected regret: each period contributes R(S*) - R(S_t) computed
// from the true instance, independent of the sampled purchase.
//
// Seeds: an episode seed s spawns the customer stream derive_seed(s, "customer")
// and the policy stream derive_seed(s, "policy"). Replication k of a batch uses
// s = derive_seed(master, k); the instance uses derive_seed(master, "instance"),
// or derive_seed(that, k) when instances are redrawn per replication.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "assort/config.hpp"
#include "assort/mnl.hpp"
#include "assort/policy.hpp"

namespace assort {

struct EpisodeStep {
    std::int64_t t = 0;
    std::size_t assortment_size = 0;
    double expected_revenue = 0.0;
    double inst_regret = 0.0;
    double realized_revenue = 0.0;
};

struct EpisodeLog {
    std::vector<EpisodeStep> steps;
    std::vector<Assortment> assortments; ///< filled only with record_assortments
    double optimal_revenue = 0.0;
    double cumulative_regret = 0.0;
    double realized_regret = 0.0; ///< T R(S*) - sum of realized revenues
    std::uint64_t seed = 0;
    std::string policy_name;
};

struct EpisodeOptions {
    bool record_assortments = false;
};

/// Drives `policy` for exactly T periods with the given customer stream.
EpisodeLog run_episode(const Instance& instance, Policy& policy, std::int64_t horizon, Rng& customers,
                       const EpisodeOptions& options = {});

/// Builds the policy from `spec` and runs it with streams derived from `seed`.
EpisodeLog run_episode(const Instance& instance, const PolicySpec& spec, std::int64_t horizon,
                       std::uint64_t seed, const EpisodeOptions& options = {});

/// Replaces a static "oracle" assortment by the instance's optimal level set.
PolicySpec resolve_policy_spec(const PolicySpec& spec, const Instance& instance);

/// t,assortment_size,expected_revenue,inst_regret,cum_regret
void write_episode_csv(const EpisodeLog& log, std::ostream& out);

struct AggregateSummary {
    std::string policy_name;
    std::int64_t n = 0;
    std::int64_t t = 0;
    std::int64_t replications = 0;
    double mean_regret = 0.0;
    double max_regret = 0.0;
    double std_regret = 0.0; ///< sample standard deviation, 0 for one replication
    std::vector<double> regrets;
};

AggregateSummary summarize(std::string policy_name, std::int64_t n, std::int64_t t,
                           std::vector<double> regrets);

nlohmann::json to_json(const AggregateSummary& summary);

std::uint64_t replication_seed(std::uint64_t master_seed, std::int64_t replication);
std::uint64_t instance_seed(std::uint64_t master_seed);

/// Instance used by replication k of `config`.
Instance make_instance(const RunConfig& config, std::int64_t replication);

/// Runs all replications, spread over `workers` threads. The result does not
/// depend on the worker count. A failing episode aborts the batch with an
/// Error naming its seed.
AggregateSummary run_batch(const RunConfig& config, int workers = 1);

struct ScalingResult {
    std::vector<std::int64_t> horizons;
    std::vector<double> mean_regret;
    /// Least-squares slope of log(mean regret) on log(T); empty when a mean
    /// regret is not positive or fewer than two horizons were given.
    std::optional<double> exponent;
    std::optional<double> log_intercept;
};

/// log-log least-squares fit of y = c x^alpha.
std::optional<std::pair<double, double>> fit_power_law(const std::vector<double>& x,
                                                       const std::vector<double>& y);

ScalingResult regret_scaling_study(const RunConfig& base, const std::vector<std::int64_t>& horizons,
                                   int workers = 1);

} // namespace assort
