#include "assort/config.hpp"

#include <set>

namespace assort {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.count(key)) throw ConfigError(std::string(what) + ": unknown key \"" + key + "\"");
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key \"") + key + "\" has the wrong type");
    }
}

} // namespace

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::synthetic: return "synthetic";
    case GeneratorKind::lower_bound_p0: return "lower_bound_p0";
    case GeneratorKind::lower_bound_p1: return "lower_bound_p1";
    case GeneratorKind::file: return "file";
    }
    return "synthetic";
}

GeneratorKind generator_from_string(const std::string& s) {
    if (s == "synthetic") return GeneratorKind::synthetic;
    if (s == "lower_bound_p0") return GeneratorKind::lower_bound_p0;
    if (s == "lower_bound_p1") return GeneratorKind::lower_bound_p1;
    if (s == "file") return GeneratorKind::file;
    throw ConfigError("unknown generator \"" + s + "\"");
}

void RunConfig::validate() const {
    if (n < 1) throw ConfigError("N must be >= 1");
    if (t < 1) throw ConfigError("T must be >= 1");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if ((generator == GeneratorKind::lower_bound_p0 || generator == GeneratorKind::lower_bound_p1) && n < 2)
        throw ConfigError("lower-bound generators need N >= 2");
    if (generator == GeneratorKind::file && instance_file.empty())
        throw ConfigError("generator \"file\" needs \"instance_file\"");
    if (!is_known_policy(policy.name)) throw ConfigError("unknown policy \"" + policy.name + "\"");
    generator_spec.validate();
}

json to_json(const GeneratorSpec& spec) {
    return {{"revenue_low", spec.revenue_low},
            {"revenue_high", spec.revenue_high},
            {"utility_low", spec.utility_low},
            {"utility_high", spec.utility_high}};
}

GeneratorSpec generator_spec_from_json(const json& j) {
    reject_unknown(j, {"revenue_low", "revenue_high", "utility_low", "utility_high"}, "generator_spec");
    GeneratorSpec spec;
    read(j, "revenue_low", spec.revenue_low);
    read(j, "revenue_high", spec.revenue_high);
    read(j, "utility_low", spec.utility_low);
    read(j, "utility_high", spec.utility_high);
    spec.validate();
    return spec;
}

json to_json(const PolicySpec& spec) { return {{"name", spec.name}, {"params", spec.params}}; }

PolicySpec policy_spec_from_json(const json& j) {
    if (j.is_string()) return PolicySpec{j.get<std::string>()};
    reject_unknown(j, {"name", "params"}, "policy");
    PolicySpec spec;
    read(j, "name", spec.name);
    if (j.contains("params")) spec.params = j.at("params");
    if (!spec.params.is_object()) throw ConfigError("policy params must be an object");
    if (!is_known_policy(spec.name)) throw ConfigError("unknown policy \"" + spec.name + "\"");
    return spec;
}

json to_json(const RunConfig& c) {
    json j = {{"generator", to_string(c.generator)},
              {"generator_spec", to_json(c.generator_spec)},
              {"n", c.n},
              {"t", c.t},
              {"policy", to_json(c.policy)},
              {"replications", c.replications},
              {"master_seed", c.master_seed},
              {"redraw_instance", c.redraw_instance},
              {"out", c.out}};
    if (!c.instance_file.empty()) j["instance_file"] = c.instance_file;
    return j;
}

RunConfig run_config_from_json(const json& j) {
    reject_unknown(j,
                   {"generator", "generator_spec", "instance_file", "n", "t", "policy", "replications",
                    "master_seed", "redraw_instance", "out"},
                   "run config");
    RunConfig c;
    if (j.contains("generator")) {
        std::string g;
        read(j, "generator", g);
        c.generator = generator_from_string(g);
    }
    if (j.contains("generator_spec")) c.generator_spec = generator_spec_from_json(j.at("generator_spec"));
    read(j, "instance_file", c.instance_file);
    read(j, "n", c.n);
    read(j, "t", c.t);
    if (j.contains("policy")) c.policy = policy_spec_from_json(j.at("policy"));
    read(j, "replications", c.replications);
    read(j, "master_seed", c.master_seed);
    read(j, "redraw_instance", c.redraw_instance);
    read(j, "out", c.out);
    c.validate();
    return c;
}

void BenchConfig::validate() const {
    if (cells.empty()) throw ConfigError("bench config needs at least one (n, t) cell");
    if (policies.empty()) throw ConfigError("bench config needs at least one policy");
    for (const auto& [n, t] : cells)
        if (n < 1 || t < 1) throw ConfigError("bench cells need N >= 1 and T >= 1");
    for (const auto& p : policies)
        if (!is_known_policy(p.name)) throw ConfigError("unknown policy \"" + p.name + "\"");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    generator_spec.validate();
}

json to_json(const BenchConfig& c) {
    json cells = json::array();
    for (const auto& [n, t] : c.cells) cells.push_back({{"n", n}, {"t", t}});
    json policies = json::array();
    for (const auto& p : c.policies) policies.push_back(to_json(p));
    return {{"cells", cells},
            {"policies", policies},
            {"replications", c.replications},
            {"master_seed", c.master_seed},
            {"generator_spec", to_json(c.generator_spec)}};
}

BenchConfig bench_config_from_json(const json& j) {
    reject_unknown(j, {"cells", "policies", "replications", "master_seed", "generator_spec"}, "bench config");
    BenchConfig c;
    if (!j.contains("cells") || !j.at("cells").is_array()) throw ConfigError("bench config needs a \"cells\" array");
    for (const auto& cell : j.at("cells")) {
        reject_unknown(cell, {"n", "t"}, "bench cell");
        std::int64_t n = 0;
        std::int64_t t = 0;
        read(cell, "n", n);
        read(cell, "t", t);
        c.cells.emplace_back(n, t);
    }
    if (!j.contains("policies") || !j.at("policies").is_array())
        throw ConfigError("bench config needs a \"policies\" array");
    for (const auto& p : j.at("policies")) c.policies.push_back(policy_spec_from_json(p));
    read(j, "replications", c.replications);
    read(j, "master_seed", c.master_seed);
    if (j.contains("generator_spec")) c.generator_spec = generator_spec_from_json(j.at("generator_spec"));
    c.validate();
    return c;
}

BenchConfig reference_grid_config() {
    BenchConfig c;
    for (std::int64_t t : {500, 1000})
        for (std::int64_t n : {100, 250, 500, 1000}) c.cells.emplace_back(n, t);
    c.policies = {PolicySpec{"ucb"}, PolicySpec{"thompson"}, PolicySpec{"grs"}, PolicySpec{"trisection"},
                  PolicySpec{"adaptive-trisection", {{"ci_scale", 0.1}}}};
    c.replications = 20;
    c.master_seed = 1;
    return c;
}

} // namespace assort
