#include "kbst/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "kbst/beading.hpp"
#include "kbst/heuristics.hpp"
#include "kbst/rng.hpp"

namespace kbst {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, int k, int trial) {
    std::uint64_t h = splitmix64(master ^ 0x5851F42D4C957F2Dull);
    h = splitmix64(h ^ static_cast<std::uint64_t>(k));
    h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
    return h;
}

std::vector<Point> generate_uniform(int n, double region, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_uniform: n < 1");
    if (region <= 0.0) throw std::invalid_argument("generate_uniform: region <= 0");
    Rng rng(seed);
    std::vector<Point> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, region);
        const double y = rng.uniform(0.0, region);
        pts.push_back({x, y});
    }
    return pts;
}

WeightedField generate_base_station_weighted(int n, double region, double gamma,
                                             std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_base_station_weighted: n < 1");
    if (region <= 0.0)
        throw std::invalid_argument("generate_base_station_weighted: region <= 0");
    if (gamma <= 1.0)
        throw std::invalid_argument("generate_base_station_weighted: gamma must be > 1");
    Rng rng(seed);
    WeightedField out;
    const double bx = rng.uniform(0.0, region);
    const double by = rng.uniform(0.0, region);
    out.base = {bx, by};
    // Largest distance from the base to a region corner.
    double r_max = 0.0;
    for (const double cx : {0.0, region})
        for (const double cy : {0.0, region})
            r_max = std::max(r_max, dist(out.base, Point{cx, cy}));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    out.points.reserve(n);
    for (int i = 0; i < n; ++i) {
        while (true) {
            const double theta = rng.uniform(0.0, kTwoPi);
            const double r = r_max * std::pow(rng.uniform(), gamma);
            const Point p{bx + r * std::cos(theta), by + r * std::sin(theta)};
            if (p.x >= 0.0 && p.x <= region && p.y >= 0.0 && p.y <= region) {
                out.points.push_back(p);
                break;
            }
        }
    }
    return out;
}

double lifetime(double l_max, double alpha, double c, double battery) {
    if (l_max < 0.0) throw std::invalid_argument("lifetime: negative bottleneck");
    const double power = std::pow(l_max, alpha) + c;
    if (power == 0.0) return std::numeric_limits<double>::infinity();
    return battery / power;
}

Solution run_algorithm(const std::string& name, const std::vector<Point>& terminals,
                       int k) {
    if (name == "msth") return msth(terminals, k);
    if (name == "naive") return naive_i1bsth(terminals, k);
    if (name == "postbeaded") return postbeaded_i1bsth(terminals, k);
    if (name == "prebeaded") return prebeaded_i1bsth(terminals, k);
    if (name == "meta") return meta_naive_msth(terminals, k);
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

std::vector<TrialRecord> run_task(const ExperimentConfig& cfg, int k, int trial) {
    const std::uint64_t seed = trial_seed(cfg.seed, k, trial);
    std::vector<Point> pts;
    if (cfg.terminals) {
        pts = *cfg.terminals;
    } else if (cfg.distribution == FieldDistribution::Uniform) {
        pts = generate_uniform(cfg.n, cfg.region, seed);
    } else {
        pts = generate_base_station_weighted(cfg.n, cfg.region, cfg.gamma, seed).points;
    }

    std::vector<TrialRecord> out;
    out.reserve(cfg.algorithms.size());
    for (const std::string& alg : cfg.algorithms) {
        TrialRecord rec;
        rec.algorithm = alg;
        rec.n = static_cast<int>(pts.size());
        rec.k = k;
        rec.trial = trial;
        rec.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Solution sol = run_algorithm(alg, pts, k);
            rec.bottleneck = sol.bottleneck;
            rec.lifetime_a2 = lifetime(sol.bottleneck, 2.0, cfg.energy_c, cfg.battery);
            rec.lifetime_a4 = lifetime(sol.bottleneck, 4.0, cfg.energy_c, cfg.battery);
        } catch (const std::exception&) {
            rec.failed = true;
            rec.bottleneck = std::numeric_limits<double>::quiet_NaN();
            rec.lifetime_a2 = rec.lifetime_a4 = std::numeric_limits<double>::quiet_NaN();
        }
        rec.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(rec));
    }
    return out;
}

void emit_progress(std::ostream* progress, std::mutex& mtx,
                   const std::vector<TrialRecord>& recs) {
    if (!progress) return;
    std::lock_guard<std::mutex> lock(mtx);
    for (const TrialRecord& r : recs) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6g", r.bottleneck);
        *progress << "k=" << r.k << " trial=" << r.trial << " alg=" << r.algorithm
                  << " bottleneck=" << (r.failed ? "failed" : buf) << "\n";
    }
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg,
                                        std::ostream* progress) {
    if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials < 1");
    if (cfg.algorithms.empty())
        throw std::invalid_argument("run_experiment: no algorithms");

    struct Task {
        int k, trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(cfg.k_values.size() * cfg.trials);
    for (int k : cfg.k_values)
        for (int t = 0; t < cfg.trials; ++t) tasks.push_back({k, t});

    std::vector<std::vector<TrialRecord>> slots(tasks.size());
    const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks.size())));

    if (jobs == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            slots[i] = run_task(cfg, tasks[i].k, tasks[i].trial);
            std::mutex dummy;
            emit_progress(progress, dummy, slots[i]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex progress_mtx;
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) break;
                    slots[i] = run_task(cfg, tasks[i].k, tasks[i].trial);
                    emit_progress(progress, progress_mtx, slots[i]);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    std::vector<TrialRecord> records;
    records.reserve(tasks.size() * cfg.algorithms.size());
    for (auto& slot : slots)
        for (TrialRecord& r : slot) records.push_back(std::move(r));
    return records;
}

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Stats {
    double mean = 0.0;
    double stdev = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / xs.size();
    if (xs.size() < 2) return s;
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stdev = std::sqrt(acc / (xs.size() - 1));
    return s;
}

}  // namespace

void write_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
    out << "algorithm,n,k,trial,seed,bottleneck,lifetime_a2,lifetime_a4,wall_time_s\n";
    for (const TrialRecord& r : records) {
        if (r.failed) continue;
        out << r.algorithm << ',' << r.n << ',' << r.k << ',' << r.trial << ','
            << r.seed << ',' << fmt6(r.bottleneck) << ',' << fmt6(r.lifetime_a2) << ','
            << fmt6(r.lifetime_a4) << ',' << fmt6(r.wall_time) << '\n';
    }
}

std::string summary_json(const std::vector<TrialRecord>& records,
                         const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;

    // (algorithm, k) -> record pointers, in configured algorithm order.
    for (const std::string& alg : cfg.algorithms) {
        nlohmann::ordered_json per_k;
        std::vector<int> ks = cfg.k_values;
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        for (int k : ks) {
            std::vector<double> bn, l2, l4, wt;
            for (const TrialRecord& r : records) {
                if (r.failed || r.algorithm != alg || r.k != k) continue;
                bn.push_back(r.bottleneck);
                l2.push_back(r.lifetime_a2);
                l4.push_back(r.lifetime_a4);
                wt.push_back(r.wall_time);
            }
            if (bn.empty()) continue;
            const Stats sb = stats_of(bn), s2 = stats_of(l2), s4 = stats_of(l4),
                        sw = stats_of(wt);
            per_k[std::to_string(k)] = {{"mean_bottleneck", sb.mean},
                                        {"mean_lifetime_a2", s2.mean},
                                        {"std_lifetime_a2", s2.stdev},
                                        {"mean_lifetime_a4", s4.mean},
                                        {"std_lifetime_a4", s4.stdev},
                                        {"mean_wall_time", sw.mean},
                                        {"trials", static_cast<int>(bn.size())}};
        }
        j[alg] = per_k;
    }

    // Paired ratio of the look-ahead heuristic to plain beading, and the
    // relative improvement, per k.
    const bool have_pair =
        std::count(cfg.algorithms.begin(), cfg.algorithms.end(), "prebeaded") &&
        std::count(cfg.algorithms.begin(), cfg.algorithms.end(), "msth");
    nlohmann::ordered_json series = nlohmann::ordered_json::array();
    if (have_pair) {
        std::vector<int> ks = cfg.k_values;
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        for (int k : ks) {
            std::map<int, double> msth_by_trial, pre_by_trial;
            for (const TrialRecord& r : records) {
                if (r.failed || r.k != k) continue;
                if (r.algorithm == "msth") msth_by_trial[r.trial] = r.bottleneck;
                if (r.algorithm == "prebeaded") pre_by_trial[r.trial] = r.bottleneck;
            }
            std::vector<double> ratios, improvements;
            int n_seen = cfg.n;
            for (const auto& [trial, m] : msth_by_trial) {
                const auto it = pre_by_trial.find(trial);
                if (it == pre_by_trial.end() || m <= 0.0) continue;
                ratios.push_back(it->second / m);
                improvements.push_back((m - it->second) / m);
            }
            for (const TrialRecord& r : records)
                if (r.k == k) { n_seen = r.n; break; }
            if (ratios.empty()) continue;
            series.push_back({{"k", k},
                              {"k_over_n", static_cast<double>(k) / n_seen},
                              {"mean_ratio_prebeaded_msth", stats_of(ratios).mean},
                              {"mean_relative_improvement", stats_of(improvements).mean},
                              {"trials", static_cast<int>(ratios.size())}});
        }
    }
    j["ratio_series"] = series;
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object");

    ExperimentConfig cfg;
    try {
        if (j.contains("n")) cfg.n = j.at("n").get<int>();
        if (j.contains("k_values")) cfg.k_values = j.at("k_values").get<std::vector<int>>();
        if (j.contains("region")) cfg.region = j.at("region").get<double>();
        if (j.contains("distribution")) {
            const std::string d = j.at("distribution").get<std::string>();
            if (d == "uniform")
                cfg.distribution = FieldDistribution::Uniform;
            else if (d == "weighted")
                cfg.distribution = FieldDistribution::BaseStationWeighted;
            else
                throw std::runtime_error("unknown distribution: " + d);
        }
        if (j.contains("gamma")) cfg.gamma = j.at("gamma").get<double>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
        if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
        if (j.contains("c")) cfg.energy_c = j.at("c").get<double>();
        if (j.contains("B")) cfg.battery = j.at("B").get<double>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("algorithms"))
            cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
        if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
        if (j.contains("terminals")) {
            std::vector<Point> pts;
            for (const auto& row : j.at("terminals")) {
                if (!row.is_array() || row.size() != 2)
                    throw std::runtime_error("terminals rows must be [x,y]");
                pts.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
            }
            cfg.terminals = std::move(pts);
        }
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("config field error: ") + e.what());
    }

    const int effective_n =
        cfg.terminals ? static_cast<int>(cfg.terminals->size()) : cfg.n;
    if (effective_n < 2) throw std::runtime_error("config: need n >= 2");
    if (cfg.k_values.empty()) throw std::runtime_error("config: k_values empty");
    for (int k : cfg.k_values)
        if (k < 0) throw std::runtime_error("config: negative k");
    if (cfg.region <= 0.0) throw std::runtime_error("config: region must be positive");
    if (cfg.trials < 1) throw std::runtime_error("config: trials must be >= 1");
    if (cfg.alpha < 2.0 || cfg.alpha > 4.0)
        throw std::runtime_error("config: alpha must be in [2,4]");
    if (cfg.energy_c < 0.0) throw std::runtime_error("config: c must be >= 0");
    if (cfg.battery <= 0.0) throw std::runtime_error("config: B must be positive");
    if (cfg.distribution == FieldDistribution::BaseStationWeighted && cfg.gamma <= 1.0)
        throw std::runtime_error("config: gamma must be > 1");
    if (cfg.jobs < 1) throw std::runtime_error("config: jobs must be >= 1");
    if (cfg.algorithms.empty()) throw std::runtime_error("config: algorithms empty");
    for (const std::string& a : cfg.algorithms)
        if (a != "msth" && a != "naive" && a != "postbeaded" && a != "prebeaded" &&
            a != "meta")
            throw std::runtime_error("config: unknown algorithm " + a);
    return cfg;
}

}  // namespace kbst
