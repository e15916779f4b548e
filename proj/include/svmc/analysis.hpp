#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svmc/instance.hpp"
#include "svmc/rotor_model.hpp"
#include "svmc/run_record.hpp"
#include "svmc/schedule.hpp"

// Statistics over annealing campaigns: success probabilities with Wilson
// intervals, histograms and the bimodality signature, solver correlation,
// and the local-minima / branching-point analysis.

namespace svmc {

struct SuccessEstimate {
    std::string instance_id;
    int n_runs = 0;
    int n_success = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;  // 95% Wilson interval
    double ci_hi = 0.0;
};

/// Estimate from raw counts: p_hat = n_success/n_runs plus the 95% Wilson
/// interval, clamped so that ci_lo <= p_hat <= ci_hi holds exactly.
SuccessEstimate make_success_estimate(std::string instance_id, int n_runs, int n_success);

/// Fraction of records whose final config attains ground_energy, with a 95%
/// Wilson interval. Throws on an empty record list.
SuccessEstimate success_probability(const std::vector<RunRecord>& records,
                                    const IsingInstance& inst, double ground_energy,
                                    std::string instance_id);

/// Uniform bins on [0, 1], last bin right-closed; counts sum to the number
/// of values. n_bins >= 2.
std::vector<std::uint64_t> histogram(const std::vector<double>& p_hats, int n_bins = 20);

/// (mass at p < 0.1 plus p > 0.9) minus (mass at 0.4 <= p <= 0.6); positive
/// marks the bimodal easy/hard signature. Needs >= 20 instances.
double bimodality_score(const std::vector<double>& p_hats);

/// Pearson product-moment correlation. Throws on length mismatch, fewer than
/// two points, or zero variance in either argument.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

/// Lexicographically smaller of the config and its global flip (with
/// -1 < 0 < +1 per site); quotients out the Z2 symmetry of h == 0 instances.
SpinConfig canonicalize(const SpinConfig& config);

struct MinimaCatalogEntry {
    SpinConfig config;  // canonical form
    std::uint64_t hits = 0;
};

struct MinimaCatalog {
    double s_star = 0.0;
    std::uint64_t total_runs = 0;
    std::vector<MinimaCatalogEntry> entries;  // by hits desc, then config asc
};

/// Runs n_probes independent anneals stopped at fraction s_star, greedy-
/// descends each frozen state under H(s_star), rounds, canonicalizes and
/// tallies. Probe seeds derive from (seed, instance id, probe index); the
/// result is independent of `threads`.
MinimaCatalog minima_catalog(const IsingInstance& inst, const AnnealSchedule& sched,
                             const ModelParams& params, double s_star, int n_probes,
                             std::uint64_t seed, int threads = 1);

/// Sites whose spins differ between two minima, minimized over the global
/// flip of the second (ties keep the unflipped orientation). Sorted site
/// indices.
std::vector<int> branching_diff(const SpinConfig& min_a, const SpinConfig& min_b);

}  // namespace svmc
