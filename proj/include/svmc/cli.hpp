#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "svmc/analysis.hpp"
#include "svmc/rotor_model.hpp"

// Batch experiment commands behind the `svmc` tool. Each command is a plain
// function over an options struct so tests can call them in-process.
//
// Every output file starts with `#` metadata lines carrying the tool version,
// the master seed and all result-affecting parameters. Thread count is
// deliberately not part of the metadata: results are thread-invariant (per-run
// seeds derive from (master seed, instance id, run index)), so files from
// different --threads runs are byte-identical.

namespace svmc {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct GenOptions {
    int rows = 4;
    int cols = 4;
    int half = 4;
    std::string broken_file;       // optional list of inactive site indices
    std::string coupling = "pm1";  // pm1 | range<N>
    bool with_fields = false;
    int count = 1;
    std::uint64_t seed = 1;
    std::string out_dir;
};

/// Writes `count` instance files named <seed>-<index>.ising plus manifest.csv.
/// Returns the instance file paths. Each instance depends only on
/// (seed, index), so growing `count` extends a suite without changing it.
std::vector<std::string> run_gen(const GenOptions& opts);

struct RunOptions {
    std::string solver = "svmc";         // svmc | sa_o2 | sa_bits
    std::vector<std::string> instances;  // .ising files (or directories of them)
    int runs_per_instance = 100;
    std::string schedule_file;       // empty -> built-in dw1-approx
    bool allow_nonmonotone = false;  // admit schedules with non-monotone A or B
    double temperature = kDefaultTemperatureGHz;
    int sweeps = kDefaultSweeps;
    double sa_t_start = 10.0;  // sa_bits ladder
    double sa_t_end = 0.05;
    std::string sa_kind = "linear";  // linear | geometric
    int threads = 0;                 // 0 -> $SVMC_THREADS, else hardware
    std::uint64_t seed = 1;
    std::string out_csv;
    std::string cache_file;  // optional ground cache, extended as needed
};

/// Runs the campaign, grades every run against the exact ground energy and
/// writes one SuccessEstimate row per instance.
std::vector<SuccessEstimate> run_run(const RunOptions& opts);

struct StatsOptions {
    std::string results_csv;
    int bins = 20;
    std::string out_csv;
};

/// Emits the histogram CSV and returns the bimodality score.
double run_stats(const StatsOptions& opts);

struct CorrelateOptions {
    std::string results_a;
    std::string results_b;
    std::string out_csv;
};

/// Joins two results files on instance_id, writes the paired scatter CSV and
/// returns the Pearson R of the p_hat pairs.
double run_correlate(const CorrelateOptions& opts);

struct MinimaOptions {
    std::string instance_file;
    double s_star = 0.31;
    int probes = 500;
    std::string schedule_file;
    bool allow_nonmonotone = false;
    double temperature = kDefaultTemperatureGHz;
    int sweeps = kDefaultSweeps;
    int threads = 0;
    std::uint64_t seed = 1;
    std::string out_json;
};

/// Emits the local-minima catalog at s_star, with the branching diff of the
/// top two minima when the catalog has at least two entries.
MinimaCatalog run_minima(const MinimaOptions& opts);

struct ExactOptions {
    std::vector<std::string> instances;
    std::string out_cache;
};

/// Precomputes ground states into a cache CSV.
void run_exact(const ExactOptions& opts);

/// Results CSV reader (skips `#` metadata lines).
std::vector<SuccessEstimate> read_results_csv(const std::string& path);

/// Expands directories to their sorted *.ising contents.
std::vector<std::string> expand_instance_paths(const std::vector<std::string>& paths);

/// requested > 0, else $SVMC_THREADS, else std::thread::hardware_concurrency.
int resolve_threads(int requested);

}  // namespace svmc
