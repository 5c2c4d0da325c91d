#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kbst/beading.hpp"
#include "kbst/experiments.hpp"
#include "kbst/heuristics.hpp"
#include "kbst/mst.hpp"
#include "kbst/one_bst.hpp"
#include "kbst/oracle.hpp"
#include "kbst/solution.hpp"

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

// Reads a point list: optional comment lines starting with '#', a header
// row "x,y", then one "x,y" pair per line.
bool read_points_file(const std::string& path, std::vector<kbst::Point>& out,
                      std::string& err) {
    std::ifstream in(path);
    if (!in) {
        err = "cannot open " + path;
        return false;
    }
    bool header_seen = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!header_seen) {
            if (t != "x,y") {
                err = "line " + std::to_string(lineno) + ": expected header x,y";
                return false;
            }
            header_seen = true;
            continue;
        }
        const std::size_t comma = t.find(',');
        if (comma == std::string::npos) {
            err = "line " + std::to_string(lineno) + ": expected x,y";
            return false;
        }
        double x = 0.0, y = 0.0;
        if (!parse_double(t.substr(0, comma), x) ||
            !parse_double(t.substr(comma + 1), y)) {
            err = "line " + std::to_string(lineno) + ": bad coordinate";
            return false;
        }
        out.push_back({x, y});
    }
    if (!header_seen) {
        err = "missing header x,y";
        return false;
    }
    if (out.size() < 2) {
        err = "need at least 2 points";
        return false;
    }
    return true;
}

int cmd_solve(const std::string& points_path, int k, const std::string& alg,
              const std::string& out_path) {
    std::vector<kbst::Point> pts;
    std::string err;
    if (!read_points_file(points_path, pts, err)) {
        std::cerr << "error: " << err << "\n";
        return 2;
    }
    const bool known = alg == "msth" || alg == "naive" || alg == "postbeaded" ||
                       alg == "prebeaded" || alg == "meta" || alg == "exact1";
    if (!known) {
        std::cerr << "error: unknown algorithm " << alg << "\n";
        return 3;
    }
    if (k < 0) {
        std::cerr << "error: k must be >= 0\n";
        return 4;
    }
    if (alg == "exact1" && k != 1) {
        std::cerr << "error: exact1 requires k=1\n";
        return 4;
    }

    kbst::Solution sol;
    try {
        if (alg == "exact1") {
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<kbst::Node> nodes;
            for (std::size_t i = 0; i < pts.size(); ++i)
                nodes.push_back({static_cast<int>(i), kbst::NodeKind::Terminal, pts[i]});
            const kbst::OneBstResult res = kbst::solve_1bst_fast(nodes);
            sol.tree = res.tree;
            sol.bottleneck = res.bottleneck.length;
            sol.steiner_points = {res.steiner};
            sol.algorithm = "exact1";
            sol.iterations = 1;
            sol.nonbead_count = 1;
            sol.wall_time = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        } else {
            sol = kbst::run_algorithm(alg, pts, k);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::printf("algorithm=%s n=%d k=%d bottleneck=%.2f wall_time_s=%.3f\n",
                sol.algorithm.c_str(), static_cast<int>(pts.size()), k,
                sol.bottleneck, sol.wall_time);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        out << kbst::solution_to_json(sol, k, static_cast<int>(pts.size()));
    }
    return 0;
}

int cmd_gen(int n, double region, const std::string& dist, double gamma,
            std::uint64_t seed, const std::string& out_path) {
    if (n < 2) {
        std::cerr << "error: n must be >= 2\n";
        return 2;
    }
    if (region <= 0.0) {
        std::cerr << "error: region must be positive\n";
        return 2;
    }
    if (dist != "uniform" && dist != "weighted") {
        std::cerr << "error: dist must be uniform or weighted\n";
        return 2;
    }
    if (dist == "weighted" && gamma <= 1.0) {
        std::cerr << "error: gamma must be > 1\n";
        return 2;
    }

    std::ostringstream body;
    char buf[80];
    if (dist == "uniform") {
        body << "x,y\n";
        for (const kbst::Point& p : kbst::generate_uniform(n, region, seed)) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
            body << buf;
        }
    } else {
        const kbst::WeightedField f =
            kbst::generate_base_station_weighted(n, region, gamma, seed);
        std::snprintf(buf, sizeof(buf), "# base %.17g %.17g\n", f.base.x, f.base.y);
        body << buf << "x,y\n";
        for (const kbst::Point& p : f.points) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
            body << buf;
        }
    }

    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        out << body.str();
    }
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& csv_path,
                   const std::string& summary_path, int jobs_override,
                   int trials_cap) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open " << config_path << "\n";
        return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();

    kbst::ExperimentConfig cfg;
    try {
        cfg = kbst::config_from_json(ss.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (jobs_override > 0) cfg.jobs = jobs_override;
    if (trials_cap > 0) cfg.trials = std::min(cfg.trials, trials_cap);

    std::vector<kbst::TrialRecord> records;
    try {
        records = kbst::run_experiment(cfg, &std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) {
            std::cerr << "error: cannot write " << csv_path << "\n";
            return 2;
        }
        kbst::write_csv(records, out);
    }
    if (!summary_path.empty()) {
        std::ofstream out(summary_path);
        if (!out) {
            std::cerr << "error: cannot write " << summary_path << "\n";
            return 2;
        }
        out << kbst::summary_json(records, cfg);
    }

    int usable = 0;
    for (const kbst::TrialRecord& r : records)
        if (!r.failed) ++usable;
    return usable > 0 ? 0 : 1;
}

int cmd_oracle(const std::string& suite, std::uint64_t seed, int cases) {
    struct Entry {
        const char* name;
        int default_cases;
        kbst::OracleReport (*run)(std::uint64_t, int, std::ostream*);
    };
    const Entry entries[] = {
        {"sec", 1000, kbst::oracle_sec_suite},
        {"mst", 100, kbst::oracle_mst_suite},
        {"bead", 60, kbst::oracle_bead_suite},
        {"onebst", 100, kbst::oracle_onebst_suite},
    };
    bool matched = false;
    int failures = 0;
    for (const Entry& e : entries) {
        if (suite != "all" && suite != e.name) continue;
        matched = true;
        const int c = cases > 0 ? cases : e.default_cases;
        const kbst::OracleReport rep = e.run(seed, c, &std::cerr);
        std::printf("suite=%s cases=%d failures=%d\n", e.name, rep.cases,
                    rep.failures);
        failures += rep.failures;
    }
    if (!matched) {
        std::cerr << "error: unknown suite " << suite << "\n";
        return 2;
    }
    return failures > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bottleneck Steiner tree toolkit"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one instance from a points file");
    std::string points_path, alg = "prebeaded", out_path;
    int k = 0;
    solve->add_option("--points", points_path, "CSV points file")->required();
    solve->add_option("--k", k, "relay budget")->required();
    solve->add_option("--alg", alg,
                      "msth | naive | postbeaded | prebeaded | meta | exact1");
    solve->add_option("--out", out_path, "write the solution as JSON");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random points file");
    int gen_n = 60;
    double gen_region = 10000.0, gen_gamma = 2.0;
    std::string gen_dist = "uniform", gen_out;
    std::uint64_t gen_seed = 1;
    gen->add_option("--n", gen_n, "number of points");
    gen->add_option("--region", gen_region, "square side length");
    gen->add_option("--dist", gen_dist, "uniform | weighted");
    gen->add_option("--gamma", gen_gamma, "decay exponent for weighted fields");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a batch experiment");
    std::string cfg_path, csv_path, summary_path;
    int jobs = 0, trials_cap = 0;
    exp->add_option("--config", cfg_path, "JSON config file")->required();
    exp->add_option("--out-csv", csv_path, "per-trial CSV output");
    exp->add_option("--out-summary", summary_path, "summary JSON output");
    exp->add_option("--jobs", jobs, "worker threads (overrides config)");
    exp->add_option("--trials-cap", trials_cap, "cap trials per k");

    // oracle
    auto* orc = app.add_subcommand("oracle", "Check solvers against brute force");
    std::string suite = "all";
    std::uint64_t orc_seed = 7;
    int orc_cases = 0;
    orc->add_option("--suite", suite, "sec | mst | bead | onebst | all");
    orc->add_option("--seed", orc_seed, "random seed");
    orc->add_option("--cases", orc_cases, "cases per suite (0 = default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (solve->parsed()) return cmd_solve(points_path, k, alg, out_path);
    if (gen->parsed()) return cmd_gen(gen_n, gen_region, gen_dist, gen_gamma,
                                      gen_seed, gen_out);
    if (exp->parsed())
        return cmd_experiment(cfg_path, csv_path, summary_path, jobs, trials_cap);
    if (orc->parsed()) return cmd_oracle(suite, orc_seed, orc_cases);
    return 2;
}
