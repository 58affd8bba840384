#include "assort/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "assort/config.hpp"
#include "assort/generators.hpp"
#include "assort/harness.hpp"
#include "assort/instance_io.hpp"
#include "assort/potential.hpp"
#include "assort/verify.hpp"

namespace assort {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct VerificationFailed : Error {
    using Error::Error;
};

struct CommonFlags {
    std::string policy;
    std::int64_t n = 0;
    std::int64_t t = 0;
    std::int64_t reps = 0;
    std::uint64_t seed = 0;
    std::string config;
    std::string out;
    double ci_scale = 0.0;
    int parallel = 1;
    std::string static_assortment = "oracle";
    std::string generator;
    std::string instance_file;
    std::vector<std::int64_t> horizons;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string output_dir(const CommonFlags& f) {
    if (const char* env = std::getenv("ASSORT_BENCH_OUT"); env && *env) return env;
    return f.out;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

void apply_ci_scale(PolicySpec& spec, double scale) {
    if (scale <= 0.0) return;
    if (spec.name == "trisection" || spec.name == "adaptive-trisection") spec.params["ci_scale"] = scale;
}

// Flags given on the command line override the JSON config.
RunConfig run_config_from_flags(const CommonFlags& f, const CLI::App& sub) {
    RunConfig c;
    if (!f.config.empty()) c = run_config_from_json(read_json_file(f.config));
    if (sub.count("--generator")) c.generator = generator_from_string(f.generator);
    if (sub.count("--instance")) {
        c.generator = GeneratorKind::file;
        c.instance_file = f.instance_file;
    }
    if (sub.count("--policy")) c.policy = PolicySpec{f.policy};
    if (sub.count("--n")) c.n = f.n;
    if (sub.count("--t")) c.t = f.t;
    if (sub.count("--reps")) c.replications = f.reps;
    if (sub.count("--seed")) c.master_seed = f.seed;
    if (sub.count("--ci-scale")) apply_ci_scale(c.policy, f.ci_scale);
    if (c.policy.name == "static" && !c.policy.params.contains("assortment"))
        c.policy.params["assortment"] = f.static_assortment;
    if (c.generator == GeneratorKind::file && !sub.count("--n") && f.config.empty())
        c.n = load_instance(c.instance_file).size();
    c.out = output_dir(f).empty() ? c.out : output_dir(f);
    c.validate();
    return c;
}

int cmd_run(const CommonFlags& f, const CLI::App& sub, std::ostream& out) {
    RunConfig c = run_config_from_flags(f, sub);
    const Instance instance = make_instance(c, 0);
    const auto log = run_episode(instance, c.policy, c.t, replication_seed(c.master_seed, 0));
    std::ostringstream csv;
    write_episode_csv(log, csv);
    if (c.out.empty()) {
        out << csv.str();
    } else {
        write_text(fs::path(c.out) / "episode.csv", csv.str());
        json summary = {{"policy", log.policy_name},
                        {"n", c.n},
                        {"t", c.t},
                        {"seed", log.seed},
                        {"optimal_revenue", log.optimal_revenue},
                        {"cumulative_regret", log.cumulative_regret},
                        {"realized_regret", log.realized_regret},
                        {"config", to_json(c)}};
        write_text(fs::path(c.out) / "episode.json", summary.dump(2) + "\n");
        out << "cumulative regret " << log.cumulative_regret << " written to " << c.out << "\n";
    }
    return kExitOk;
}

std::string cell_key(std::int64_t n, std::int64_t t) {
    return "N=" + std::to_string(n) + ",T=" + std::to_string(t);
}

int cmd_bench(const CommonFlags& f, const CLI::App& sub, std::ostream& out) {
    BenchConfig bc = (f.config.empty() || f.config == "grid") ? reference_grid_config()
                                                                : bench_config_from_json(read_json_file(f.config));
    if (sub.count("--reps")) bc.replications = f.reps;
    if (sub.count("--seed")) bc.master_seed = f.seed;
    if (sub.count("--policy")) bc.policies = {PolicySpec{f.policy}};
    if (sub.count("--ci-scale"))
        for (auto& p : bc.policies) apply_ci_scale(p, f.ci_scale);
    if (sub.count("--n") || sub.count("--t")) {
        if (!(sub.count("--n") && sub.count("--t"))) throw ConfigError("bench: --n and --t must be given together");
        bc.cells = {{f.n, f.t}};
    }
    bc.validate();

    json results = json::object();
    std::ostringstream csv;
    csv << "n,t,policy,mean_regret,max_regret,std_regret\n";
    for (const auto& [n, t] : bc.cells) {
        json cell = json::object();
        for (const auto& policy : bc.policies) {
            RunConfig rc;
            rc.generator_spec = bc.generator_spec;
            rc.n = n;
            rc.t = t;
            rc.policy = policy;
            rc.replications = bc.replications;
            rc.master_seed = bc.master_seed;
            const auto s = run_batch(rc, f.parallel);
            cell[s.policy_name] = to_json(s);
            char line[256];
            std::snprintf(line, sizeof line, "%lld,%lld,%s,%.17g,%.17g,%.17g\n", static_cast<long long>(n),
                          static_cast<long long>(t), s.policy_name.c_str(), s.mean_regret, s.max_regret,
                          s.std_regret);
            csv << line;
        }
        results[cell_key(n, t)] = cell;
    }
    const json doc = {{"config", to_json(bc)}, {"results", results}};
    const std::string dir = output_dir(f);
    if (dir.empty()) {
        out << doc.dump(2) << "\n";
    } else {
        write_text(fs::path(dir) / "bench_summary.json", doc.dump(2) + "\n");
        write_text(fs::path(dir) / "bench_summary.csv", csv.str());
        out << csv.str();
    }
    return kExitOk;
}

int cmd_scaling(const CommonFlags& f, const CLI::App& sub, std::ostream& out) {
    RunConfig c = run_config_from_flags(f, sub);
    std::vector<std::int64_t> horizons = f.horizons;
    if (horizons.empty()) horizons = {1000, 4000, 16000};
    const auto result = regret_scaling_study(c, horizons, f.parallel);

    std::ostringstream csv;
    csv << "t,mean_regret\n";
    json rows = json::array();
    for (std::size_t i = 0; i < result.horizons.size(); ++i) {
        char line[128];
        std::snprintf(line, sizeof line, "%lld,%.17g\n", static_cast<long long>(result.horizons[i]),
                      result.mean_regret[i]);
        csv << line;
        rows.push_back({{"t", result.horizons[i]}, {"mean_regret", result.mean_regret[i]}});
    }
    json doc = {{"config", to_json(c)}, {"rows", rows}};
    doc["exponent"] = result.exponent ? json(*result.exponent) : json(nullptr);
    const std::string dir = output_dir(f);
    if (!dir.empty()) {
        write_text(fs::path(dir) / "scaling.json", doc.dump(2) + "\n");
        write_text(fs::path(dir) / "scaling.csv", csv.str());
    }
    out << csv.str();
    if (result.exponent)
        out << "fitted exponent " << *result.exponent << "\n";
    else
        out << "fitted exponent undefined (non-positive mean regret)\n";
    return kExitOk;
}

int cmd_verify(const CommonFlags& f, const CLI::App& sub, std::ostream& out) {
    VerifyOptions opt;
    if (sub.count("--reps")) opt.instances = f.reps;
    if (sub.count("--seed")) opt.master_seed = f.seed;
    if (opt.instances < 1) throw ConfigError("verify: --reps must be >= 1");
    const auto results = run_verification(opt);
    bool ok = true;
    json doc = json::array();
    for (const auto& r : results) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checked << " checked)\n";
        for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) out << "    " << r.failures[i] << "\n";
        ok = ok && r.passed();
        doc.push_back({{"property", r.name}, {"checked", r.checked}, {"failures", r.failures}});
    }
    if (const std::string dir = output_dir(f); !dir.empty())
        write_text(fs::path(dir) / "verify.json", doc.dump(2) + "\n");
    if (!ok) throw VerificationFailed("property verification failed");
    return kExitOk;
}

int cmd_lower_bound(const CommonFlags& f, const CLI::App& sub, std::ostream& out) {
    const std::int64_t t = sub.count("--t") ? f.t : 10000;
    const auto n = static_cast<ItemId>(sub.count("--n") ? f.n : 2);
    const std::int64_t reps = sub.count("--reps") ? f.reps : 20;
    const std::uint64_t seed = sub.count("--seed") ? f.seed : 1;
    PolicySpec policy{sub.count("--policy") ? f.policy : "adaptive-trisection"};
    if (!is_known_policy(policy.name)) throw ConfigError("unknown policy \"" + policy.name + "\"");
    if (sub.count("--ci-scale")) apply_ci_scale(policy, f.ci_scale);
    if (policy.name == "static") policy.params["assortment"] = f.static_assortment;
    if (t < 1 || reps < 1) throw ConfigError("lower-bound: --t and --reps must be >= 1");

    const Instance p0 = generate_lower_bound(LowerBoundVariant::p0, n, t);
    const Instance p1 = generate_lower_bound(LowerBoundVariant::p1, n, t);

    json kl = json::array();
    for (const auto& s : {Assortment({1}), Assortment({1, 2}), Assortment({2})}) {
        kl.push_back({{"assortment", s.items()},
                      {"kl", kl_purchase_distributions(p0, p1, s)},
                      {"chi_square_bound", kl_chi_square_bound(p0, p1, s)}});
    }
    json doc = {{"n", n}, {"t", t}, {"policy", to_json(policy)}, {"kl_bound", 1.0 / (18.0 * static_cast<double>(t))},
                {"kl", kl}};

    for (const auto& [label, inst] : {std::pair{"P0", &p0}, std::pair{"P1", &p1}}) {
        const auto [opt, value] = oracle_optimal(*inst);
        std::vector<double> regrets;
        std::int64_t zeros = 0;
        for (std::int64_t k = 0; k < reps; ++k) {
            const auto log = run_episode(*inst, resolve_policy_spec(policy, *inst), t, replication_seed(seed, k),
                                         EpisodeOptions{true});
            regrets.push_back(log.cumulative_regret);
            zeros += lower_bound_tester(log) == 0 ? 1 : 0;
        }
        const auto s = summarize(policy.name, n, t, regrets);
        doc[label] = {{"optimal_assortment", opt.items()},
                      {"optimal_revenue", value},
                      {"mean_regret", s.mean_regret},
                      {"max_regret", s.max_regret},
                      {"tester_zero_fraction", static_cast<double>(zeros) / static_cast<double>(reps)}};
    }
    if (const std::string dir = output_dir(f); !dir.empty())
        write_text(fs::path(dir) / "lower_bound.json", doc.dump(2) + "\n");
    out << doc.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamic assortment planning under uncapacitated MNL: simulations and checks", "assort_bench"};
    app.require_subcommand(1);
    CommonFlags f;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--policy", f.policy, "trisection | adaptive-trisection | ucb | thompson | grs | static");
        sub->add_option("--n", f.n, "number of items");
        sub->add_option("--t", f.t, "horizon");
        sub->add_option("--reps", f.reps, "replications (verify: number of random instances)");
        sub->add_option("--seed", f.seed, "master seed");
        sub->add_option("--config", f.config, "JSON config path (bench also accepts \"grid\")");
        sub->add_option("--out", f.out, "output directory (ASSORT_BENCH_OUT overrides)");
        sub->add_option("--ci-scale", f.ci_scale, "confidence-radius constant for the trisection policies");
        sub->add_option("--parallel", f.parallel, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--static-assortment", f.static_assortment, "oracle | empty | full");
    };

    auto* run = app.add_subcommand("run", "single episode, per-period CSV");
    add_common(run);
    run->add_option("--generator", f.generator, "synthetic | lower_bound_p0 | lower_bound_p1 | file");
    run->add_option("--instance", f.instance_file, "instance JSON (implies --generator file)");
    auto* bench = app.add_subcommand("bench", "grid of (N, T) x policies, JSON + CSV summaries");
    add_common(bench);
    auto* scaling = app.add_subcommand("scaling", "mean regret across horizons and log-log exponent");
    add_common(scaling);
    scaling->add_option("--generator", f.generator, "synthetic | lower_bound_p0 | lower_bound_p1 | file");
    scaling->add_option("--instance", f.instance_file, "instance JSON");
    scaling->add_option("--horizons", f.horizons, "increasing list of horizons")->delimiter(',');
    auto* verify = app.add_subcommand("verify", "property suites on random small instances");
    add_common(verify);
    auto* lower = app.add_subcommand("lower-bound", "diagnostics on the two-point lower-bound instances");
    add_common(lower);

    std::vector<std::string> storage{"assort_bench"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfigError;
    }

    try {
        if (run->parsed()) return cmd_run(f, *run, out);
        if (bench->parsed()) return cmd_bench(f, *bench, out);
        if (scaling->parsed()) return cmd_scaling(f, *scaling, out);
        if (verify->parsed()) return cmd_verify(f, *verify, out);
        if (lower->parsed()) return cmd_lower_bound(f, *lower, out);
    } catch (const VerificationFailed& e) {
        err << e.what() << "\n";
        return kExitVerificationFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    err << app.help();
    return kExitConfigError;
}

} // namespace assort
