#pragma once

// Experiment descriptions and their JSON form.
//
// Run config:
//   {"generator": "synthetic" | "lower_bound_p0" | "lower_bound_p1" | "file",
//    "generator_spec": {"revenue_low": .4, "revenue_high": .5,
//                       "utility_low": 10, "utility_high": 20},
//    "instance_file": "path.json",          // generator == "file"
//    "n": 100, "t": 500,
//    "policy": {"name": "adaptive-trisection", "params": {"ci_scale": 0.1}},
//    "replications": 20, "master_seed": 1,
//    "redraw_instance": false, "out": "results"}
//
// Bench config (grid of cells x policies):
//   {"cells": [{"n": 100, "t": 500}, ...],
//    "policies": [{"name": ..., "params": {...}}, ...],
//    "replications": 20, "master_seed": 1, "generator_spec": {...}}

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "assort/generators.hpp"
#include "assort/policy.hpp"

namespace assort {

enum class GeneratorKind { synthetic, lower_bound_p0, lower_bound_p1, file };

std::string to_string(GeneratorKind kind);
GeneratorKind generator_from_string(const std::string& s);

struct RunConfig {
    GeneratorKind generator = GeneratorKind::synthetic;
    GeneratorSpec generator_spec;
    std::string instance_file;
    std::int64_t n = 100;
    std::int64_t t = 500;
    PolicySpec policy{"adaptive-trisection"};
    std::int64_t replications = 20;
    std::uint64_t master_seed = 1;
    bool redraw_instance = false;
    std::string out;

    void validate() const;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

struct BenchConfig {
    std::vector<std::pair<std::int64_t, std::int64_t>> cells; ///< (N, T)
    std::vector<PolicySpec> policies;
    std::int64_t replications = 20;
    std::uint64_t master_seed = 1;
    GeneratorSpec generator_spec;

    void validate() const;
    friend bool operator==(const BenchConfig&, const BenchConfig&) = default;
};

nlohmann::json to_json(const BenchConfig& config);
BenchConfig bench_config_from_json(const nlohmann::json& j);

/// The eight (N, T) cells {100,250,500,1000} x {500,1000} with all five
/// learning policies; adaptive trisection uses ci_scale 0.1.
BenchConfig reference_grid_config();

nlohmann::json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PolicySpec& spec);
PolicySpec policy_spec_from_json(const nlohmann::json& j);

} // namespace assort
