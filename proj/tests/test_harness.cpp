#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "assort/generators.hpp"
#include "assort/harness.hpp"
#include "assort/potential.hpp"

using namespace assort;

namespace {

RunConfig small_config(PolicySpec policy, std::int64_t n = 40, std::int64_t t = 600) {
    RunConfig c;
    c.n = n;
    c.t = t;
    c.policy = std::move(policy);
    c.replications = 6;
    c.master_seed = 17;
    return c;
}

const std::vector<PolicySpec>& learners() {
    static const std::vector<PolicySpec> specs = {
        {"trisection"}, {"adaptive-trisection"}, {"ucb"}, {"thompson"}, {"grs"}};
    return specs;
}

} // namespace

TEST_CASE("static oracle has zero regret") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = generate_synthetic(50, GeneratorSpec{}, seed);
        const auto log = run_episode(inst, PolicySpec{"static", {{"assortment", "oracle"}}}, 300, seed);
        CHECK(log.cumulative_regret == 0.0);
        for (const auto& s : log.steps) CHECK(s.inst_regret == 0.0);
    }
}

TEST_CASE("empty assortment loses F* every period") {
    const Instance inst = generate_synthetic(50, GeneratorSpec{}, 2);
    const auto log = run_episode(inst, PolicySpec{"static", {{"assortment", "empty"}}}, 250, 1);
    const double f_star = oracle_optimal(inst).second;
    CHECK(log.cumulative_regret == doctest::Approx(250 * f_star).epsilon(1e-12));
    CHECK(log.realized_regret == doctest::Approx(250 * f_star).epsilon(1e-12));
}

TEST_CASE("regret accounting identity and non-negativity") {
    const Instance inst = generate_synthetic(80, GeneratorSpec{}, 5);
    for (const auto& spec : learners()) {
        const auto log = run_episode(inst, spec, 1500, 3);
        double expected_total = 0.0;
        double sum = 0.0;
        for (const auto& s : log.steps) {
            CHECK(s.inst_regret >= -1e-12);
            expected_total += s.expected_revenue;
            sum += s.inst_regret;
        }
        CHECK(std::abs(log.cumulative_regret - (1500 * log.optimal_revenue - expected_total)) <= 1e-9);
        CHECK(std::abs(log.cumulative_regret - sum) <= 1e-9);
        CHECK(log.cumulative_regret >= 0.0);
    }
}

TEST_CASE("episodes are reproducible from their seed") {
    const Instance inst = generate_synthetic(30, GeneratorSpec{}, 1);
    for (const auto& spec : learners()) {
        EpisodeOptions opt{true};
        const auto a = run_episode(inst, spec, 700, 42, opt);
        const auto b = run_episode(inst, spec, 700, 42, opt);
        CHECK(a.assortments == b.assortments);
        CHECK(a.cumulative_regret == b.cumulative_regret);
        CHECK(a.realized_regret == b.realized_regret);
    }
}

TEST_CASE("summaries") {
    const auto one = summarize("p", 1, 1, {3.5});
    CHECK(one.mean_regret == 3.5);
    CHECK(one.max_regret == 3.5);
    CHECK(one.std_regret == 0.0);
    const auto many = summarize("p", 1, 1, {1.0, 2.0, 3.0, 4.0});
    CHECK(many.mean_regret == 2.5);
    CHECK(many.max_regret == 4.0);
    CHECK(many.std_regret == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK_THROWS_AS(summarize("p", 1, 1, {}), Error);

    const auto j = to_json(many);
    CHECK(j.at("policy") == "p");
    CHECK(j.at("regrets").size() == 4);

    auto cfg = small_config({"trisection"});
    cfg.replications = 1;
    const auto s = run_batch(cfg);
    CHECK(s.mean_regret == s.max_regret);
}

TEST_CASE("batch results do not depend on the worker count") {
    for (const auto& spec : learners()) {
        const auto cfg = small_config(spec);
        const auto serial = run_batch(cfg, 1);
        const auto parallel = run_batch(cfg, 4);
        CHECK(serial.regrets == parallel.regrets);
        CHECK(serial.mean_regret == parallel.mean_regret);
        CHECK(serial.std_regret == parallel.std_regret);
    }
}

TEST_CASE("replication seeds do not depend on the replication count") {
    auto cfg = small_config({"ucb"});
    cfg.replications = 3;
    const auto few = run_batch(cfg, 2);
    cfg.replications = 6;
    const auto more = run_batch(cfg, 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(few.regrets[k] == more.regrets[k]);
    CHECK(make_instance(cfg, 0) == make_instance(cfg, 5));

    cfg.redraw_instance = true;
    CHECK_FALSE(make_instance(cfg, 0) == make_instance(cfg, 1));
    CHECK(replication_seed(1, 0) != replication_seed(1, 1));
    CHECK(replication_seed(1, 0) != replication_seed(2, 0));
}

TEST_CASE("episode CSV") {
    const Instance inst = generate_synthetic(10, GeneratorSpec{}, 1);
    const auto log = run_episode(inst, PolicySpec{"static", {{"assortment", "empty"}}}, 3, 1);
    std::ostringstream os;
    write_episode_csv(log, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,assortment_size,expected_revenue,inst_regret,cum_regret");
    int rows = 0;
    double last_cum = 0.0;
    while (std::getline(is, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 5);
        CHECK(std::stoi(cells[0]) == rows);
        CHECK(cells[1] == "0");
        CHECK(std::stod(cells[2]) == 0.0);
        last_cum = std::stod(cells[4]);
    }
    CHECK(rows == 3);
    CHECK(last_cum == log.cumulative_regret);
}

TEST_CASE("a failing replication names its seed") {
    auto cfg = small_config({"static", {{"assortment", {1, 500}}}});
    try {
        (void)run_batch(cfg, 2);
        FAIL("expected an error");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("replication 0") != std::string::npos);
        CHECK(msg.find(std::to_string(replication_seed(cfg.master_seed, 0))) != std::string::npos);
    }
}

TEST_CASE("power-law fit") {
    const std::vector<double> x{1000, 4000, 16000, 64000};
    std::vector<double> y;
    for (double t : x) y.push_back(3.0 * std::pow(t, 0.5));
    const auto fit = fit_power_law(x, y);
    REQUIRE(fit);
    CHECK(fit->first == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::exp(fit->second) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK_FALSE(fit_power_law({1.0}, {1.0}));
    CHECK_FALSE(fit_power_law({1.0, 2.0}, {1.0, 0.0}));
}

TEST_CASE("scaling study") {
    auto cfg = small_config({"static", {{"assortment", "oracle"}}});
    const auto flat = regret_scaling_study(cfg, {100, 200, 400});
    CHECK(flat.mean_regret == std::vector<double>{0.0, 0.0, 0.0});
    CHECK_FALSE(flat.exponent);
    CHECK_THROWS_AS(regret_scaling_study(cfg, {200, 100}), ConfigError);

    cfg.policy = {"static", {{"assortment", "empty"}}};
    const auto linear = regret_scaling_study(cfg, {100, 200, 400});
    REQUIRE(linear.exponent);
    CHECK(*linear.exponent == doctest::Approx(1.0).epsilon(1e-9));
}
