#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kbst/solution.hpp"

namespace kbst {

enum class FieldDistribution { Uniform, BaseStationWeighted };

struct ExperimentConfig {
    int n = 60;
    std::vector<int> k_values{2};
    double region = 10000.0;
    FieldDistribution distribution = FieldDistribution::Uniform;
    double gamma = 2.0;  // weighted mode only, must be > 1
    int trials = 50;
    double alpha = 2.0;      // in [2,4]
    double energy_c = 0.0;   // additive energy constant, config key "c"
    double battery = 1e12;   // config key "B"
    std::uint64_t seed = 1;
    std::vector<std::string> algorithms{"msth", "prebeaded"};
    // When set, every trial runs on this fixed instance instead of a
    // generated one.
    std::optional<std::vector<Point>> terminals;
    int jobs = 1;
};

struct TrialRecord {
    std::string algorithm;
    int n = 0;
    int k = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double bottleneck = 0.0;
    double lifetime_a2 = 0.0;
    double lifetime_a4 = 0.0;
    double wall_time = 0.0;
    bool failed = false;  // algorithm threw; excluded from CSV and summaries
};

// Per-trial seed derived from the master seed so trials are independent of
// execution order.
std::uint64_t trial_seed(std::uint64_t master, int k, int trial);

std::vector<Point> generate_uniform(int n, double region, std::uint64_t seed);

struct WeightedField {
    Point base;
    std::vector<Point> points;
};

// Points clustered around a uniformly placed base station: distance drawn as
// R_max * u^gamma with u uniform, direction uniform, resampled until inside
// the region. gamma > 1 concentrates mass toward the base.
WeightedField generate_base_station_weighted(int n, double region, double gamma,
                                             std::uint64_t seed);

// battery / (l_max^alpha + c); infinity when both l_max and c are zero.
double lifetime(double l_max, double alpha, double c, double battery);

// Dispatch by algorithm name: msth, naive, postbeaded, prebeaded, meta.
Solution run_algorithm(const std::string& name, const std::vector<Point>& terminals,
                       int k);

// Runs every configured algorithm on the identical instance per (k, trial).
// Records are ordered by (k, trial, algorithm) regardless of how many worker
// threads run. Progress lines go to *progress when given.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg,
                                        std::ostream* progress = nullptr);

// Header algorithm,n,k,trial,seed,bottleneck,lifetime_a2,lifetime_a4,
// wall_time_s; floats with 6 significant digits; LF endings. Failed records
// are skipped.
void write_csv(const std::vector<TrialRecord>& records, std::ostream& out);

// Per algorithm and k: mean/std lifetimes, mean bottleneck, mean wall time;
// plus the paired prebeaded/msth ratio series when both algorithms are
// present.
std::string summary_json(const std::vector<TrialRecord>& records,
                         const ExperimentConfig& cfg);

// Flat JSON mirroring ExperimentConfig. Throws std::runtime_error with a
// message on parse or validation failure.
ExperimentConfig config_from_json(const std::string& text);

}  // namespace kbst
