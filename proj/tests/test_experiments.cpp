#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "kbst/experiments.hpp"
#include "kbst/rng.hpp"

using namespace kbst;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Strips the last comma-separated field (wall_time_s).
std::string drop_last_field(const std::string& line) {
    const std::size_t pos = line.rfind(',');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.n = 8;
    cfg.k_values = {1, 2};
    cfg.region = 1000.0;
    cfg.trials = 2;
    cfg.seed = 5;
    cfg.algorithms = {"msth", "prebeaded"};
    return cfg;
}

}  // namespace

TEST_CASE("random stream matches the documented mapping") {
    std::mt19937_64 eng(123);
    const double expect = (eng() >> 11) * 0x1.0p-53;
    Rng rng(123);
    CHECK(rng.uniform() == expect);
}

TEST_CASE("trial seeds are stable and spread") {
    CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
    std::set<std::uint64_t> seen;
    for (int k = 0; k < 5; ++k)
        for (int t = 0; t < 5; ++t) seen.insert(trial_seed(42, k, t));
    CHECK(seen.size() == 25);
    CHECK(trial_seed(1, 0, 0) != trial_seed(2, 0, 0));
}

TEST_CASE("uniform generator") {
    const auto a = generate_uniform(50, 100.0, 9);
    const auto b = generate_uniform(50, 100.0, 9);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
        CHECK(a[i].x >= 0.0);
        CHECK(a[i].x <= 100.0);
        CHECK(a[i].y >= 0.0);
        CHECK(a[i].y <= 100.0);
    }
    CHECK(generate_uniform(5, 100.0, 1)[0].x != generate_uniform(5, 100.0, 2)[0].x);
    CHECK_THROWS_AS(generate_uniform(0, 100.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_uniform(5, 0.0, 1), std::invalid_argument);
}

TEST_CASE("weighted generator clusters around the base") {
    const WeightedField f = generate_base_station_weighted(200, 1000.0, 6.0, 4);
    REQUIRE(f.points.size() == 200);
    CHECK(f.base.x >= 0.0);
    CHECK(f.base.x <= 1000.0);
    double mean_dist = 0.0;
    for (const Point& p : f.points) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 1000.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 1000.0);
        mean_dist += dist(p, f.base);
    }
    mean_dist /= 200.0;
    // gamma 6 pulls the mass close to the base; uniform would sit near 520.
    CHECK(mean_dist < 300.0);

    const WeightedField g = generate_base_station_weighted(200, 1000.0, 6.0, 4);
    CHECK(g.points[7].x == f.points[7].x);
    CHECK_THROWS_AS(generate_base_station_weighted(5, 1000.0, 1.0, 1),
                    std::invalid_argument);
}

TEST_CASE("lifetime") {
    CHECK(lifetime(10.0, 2.0, 0.0, 1e12) == doctest::Approx(1e10).epsilon(1e-12));
    CHECK(lifetime(10.0, 4.0, 0.0, 1e12) == doctest::Approx(1e8).epsilon(1e-12));
    CHECK(lifetime(0.0, 2.0, 0.0, 1e12) == std::numeric_limits<double>::infinity());
    CHECK(lifetime(0.0, 2.0, 5.0, 1e12) == doctest::Approx(2e11).epsilon(1e-12));
    CHECK_THROWS_AS(lifetime(-1.0, 2.0, 0.0, 1e12), std::invalid_argument);
}

TEST_CASE("experiment runs every algorithm on the same instance") {
    const ExperimentConfig cfg = tiny_config();
    std::ostringstream progress;
    const auto records = run_experiment(cfg, &progress);
    REQUIRE(records.size() == 2 * 2 * 2);

    // Order is (k, trial, algorithm in config order).
    CHECK(records[0].k == 1);
    CHECK(records[0].trial == 0);
    CHECK(records[0].algorithm == "msth");
    CHECK(records[1].algorithm == "prebeaded");
    CHECK(records[2].trial == 1);
    CHECK(records[4].k == 2);

    for (std::size_t i = 0; i + 1 < records.size(); i += 2) {
        CHECK(!records[i].failed);
        CHECK(records[i].seed == records[i + 1].seed);
        CHECK(records[i].n == 8);
        CHECK(records[i + 1].bottleneck <= records[i].bottleneck + 1e-9);
        CHECK(records[i].lifetime_a2 > 0.0);
    }

    // Progress lines mention every record.
    const auto lines = split_lines(progress.str());
    CHECK(lines.size() == records.size());
    CHECK(lines[0].find("k=1 trial=0 alg=msth bottleneck=") == 0);
}

TEST_CASE("worker threads do not change the results") {
    ExperimentConfig cfg = tiny_config();
    const auto base = run_experiment(cfg);
    cfg.jobs = 3;
    const auto par = run_experiment(cfg);
    REQUIRE(base.size() == par.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].algorithm == par[i].algorithm);
        CHECK(base[i].k == par[i].k);
        CHECK(base[i].trial == par[i].trial);
        CHECK(base[i].seed == par[i].seed);
        CHECK(base[i].bottleneck == par[i].bottleneck);
    }
}

TEST_CASE("csv output is reproducible apart from timings") {
    const ExperimentConfig cfg = tiny_config();
    std::ostringstream a, b;
    write_csv(run_experiment(cfg), a);
    write_csv(run_experiment(cfg), b);

    const auto la = split_lines(a.str());
    const auto lb = split_lines(b.str());
    REQUIRE(la.size() == lb.size());
    CHECK(la[0] ==
          "algorithm,n,k,trial,seed,bottleneck,lifetime_a2,lifetime_a4,wall_time_s");
    for (std::size_t i = 0; i < la.size(); ++i)
        CHECK(drop_last_field(la[i]) == drop_last_field(lb[i]));
    CHECK(a.str().find('\r') == std::string::npos);
}

TEST_CASE("csv skips failed records") {
    TrialRecord ok;
    ok.algorithm = "msth";
    ok.n = 4;
    ok.k = 1;
    ok.bottleneck = 2.5;
    TrialRecord bad = ok;
    bad.failed = true;
    std::ostringstream out;
    write_csv({ok, bad}, out);
    CHECK(split_lines(out.str()).size() == 2);  // header + one row
}

TEST_CASE("summary json structure") {
    const ExperimentConfig cfg = tiny_config();
    const auto records = run_experiment(cfg);
    const auto j = nlohmann::json::parse(summary_json(records, cfg));

    REQUIRE(j.contains("msth"));
    REQUIRE(j.contains("prebeaded"));
    REQUIRE(j.at("msth").contains("1"));
    const auto& cell = j.at("msth").at("1");
    CHECK(cell.at("trials") == 2);
    CHECK(cell.at("mean_bottleneck").get<double>() > 0.0);
    CHECK(cell.contains("std_lifetime_a2"));
    CHECK(cell.contains("mean_lifetime_a4"));

    REQUIRE(j.contains("ratio_series"));
    const auto& series = j.at("ratio_series");
    REQUIRE(series.size() == 2);
    CHECK(series[0].at("k") == 1);
    CHECK(std::fabs(series[0].at("k_over_n").get<double>() - 1.0 / 8.0) <= 1e-12);
    CHECK(series[0].at("mean_ratio_prebeaded_msth").get<double>() <= 1.0 + 1e-12);
    CHECK(series[0].contains("mean_relative_improvement"));
}

TEST_CASE("config parsing") {
    const char* text = R"({
        "n": 12, "k_values": [2, 4], "region": 500.0,
        "distribution": "weighted", "gamma": 3.0, "trials": 7,
        "alpha": 4.0, "c": 1.5, "B": 2e12, "seed": 99,
        "algorithms": ["msth", "naive"], "jobs": 2
    })";
    const ExperimentConfig cfg = config_from_json(text);
    CHECK(cfg.n == 12);
    CHECK(cfg.k_values == std::vector<int>{2, 4});
    CHECK(cfg.region == 500.0);
    CHECK(cfg.distribution == FieldDistribution::BaseStationWeighted);
    CHECK(cfg.gamma == 3.0);
    CHECK(cfg.trials == 7);
    CHECK(cfg.alpha == 4.0);
    CHECK(cfg.energy_c == 1.5);
    CHECK(cfg.battery == 2e12);
    CHECK(cfg.seed == 99);
    CHECK(cfg.algorithms == std::vector<std::string>{"msth", "naive"});
    CHECK(cfg.jobs == 2);

    const ExperimentConfig fixed = config_from_json(
        R"({"terminals": [[0,0],[5,5],[9,1]], "k_values":[1], "algorithms":["msth"]})");
    REQUIRE(fixed.terminals.has_value());
    CHECK(fixed.terminals->size() == 3);
    CHECK((*fixed.terminals)[1].x == 5.0);
}

TEST_CASE("config rejection") {
    CHECK_THROWS_AS(config_from_json("not json"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json("[1,2]"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"k_values": []})"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"k_values": [-1]})"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"n": 1})"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"region": -5})"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"trials": 0})"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"alpha": 5})"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"algorithms": ["nope"]})"),
                    std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"distribution": "weird"})"),
                    std::runtime_error);
    CHECK_THROWS_AS(
        config_from_json(R"({"distribution": "weighted", "gamma": 0.5})"),
        std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"jobs": 0})"), std::runtime_error);
    CHECK_THROWS_AS(config_from_json(R"({"terminals": [[1]]})"), std::runtime_error);
}

TEST_CASE("algorithm dispatch") {
    const std::vector<Point> pts{{0, 0}, {10, 0}, {5, 8}};
    for (const char* name : {"msth", "naive", "postbeaded", "prebeaded", "meta"}) {
        const Solution sol = run_algorithm(name, pts, 1);
        CHECK(sol.bottleneck > 0.0);
    }
    CHECK_THROWS_AS(run_algorithm("bogus", pts, 1), std::invalid_argument);
}
