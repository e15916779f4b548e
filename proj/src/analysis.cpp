#include "svmc/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "svmc/oracle.hpp"

namespace svmc {

namespace {

constexpr double kWilsonZ = 1.959963984540054;  // 97.5% normal quantile

}  // namespace

SuccessEstimate make_success_estimate(std::string instance_id, int n_runs, int n_success) {
    if (n_runs < 1) throw std::invalid_argument("success estimate needs n_runs >= 1");
    if (n_success < 0 || n_success > n_runs) {
        throw std::invalid_argument("success count outside [0, n_runs]");
    }
    SuccessEstimate est;
    est.instance_id = std::move(instance_id);
    est.n_runs = n_runs;
    est.n_success = n_success;
    est.p_hat = static_cast<double>(n_success) / n_runs;

    const double z = kWilsonZ, n = n_runs, p = est.p_hat;
    double denom = 1.0 + z * z / n;
    double center = (p + z * z / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    // the interval brackets p_hat mathematically; enforce it through rounding
    est.ci_lo = std::min(std::max(0.0, center - half), est.p_hat);
    est.ci_hi = std::max(std::min(1.0, center + half), est.p_hat);
    return est;
}

SuccessEstimate success_probability(const std::vector<RunRecord>& records,
                                    const IsingInstance& inst, double ground_energy,
                                    std::string instance_id) {
    if (records.empty()) throw std::invalid_argument("success_probability: no records");
    int n_success = 0;
    for (const RunRecord& rec : records) {
        if (is_ground(rec.final_config, inst, ground_energy)) ++n_success;
    }
    return make_success_estimate(std::move(instance_id), static_cast<int>(records.size()),
                                 n_success);
}

std::vector<std::uint64_t> histogram(const std::vector<double>& p_hats, int n_bins) {
    if (n_bins < 2) throw std::invalid_argument("histogram: n_bins must be >= 2");
    std::vector<std::uint64_t> counts(n_bins, 0);
    for (double p : p_hats) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("histogram: p outside [0,1]");
        int bin = std::min(static_cast<int>(p * n_bins), n_bins - 1);
        ++counts[bin];
    }
    return counts;
}

double bimodality_score(const std::vector<double>& p_hats) {
    if (p_hats.size() < 20) {
        throw std::invalid_argument("bimodality_score: need at least 20 instances");
    }
    std::uint64_t extreme = 0, middle = 0;
    for (double p : p_hats) {
        if (p < 0.1 || p > 0.9) ++extreme;
        if (p >= 0.4 && p <= 0.6) ++middle;
    }
    double n = static_cast<double>(p_hats.size());
    return (extreme - static_cast<double>(middle)) / n;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("pearson: need at least 2 points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double dx = xs[k] - mx, dy = ys[k] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::invalid_argument("pearson: zero variance in an argument");
    }
    return sxy / std::sqrt(sxx * syy);
}

SpinConfig canonicalize(const SpinConfig& config) {
    SpinConfig flipped(config.size());
    for (std::size_t i = 0; i < config.size(); ++i) {
        flipped[i] = static_cast<std::int8_t>(-config[i]);
    }
    return std::min(config, flipped);
}

MinimaCatalog minima_catalog(const IsingInstance& inst, const AnnealSchedule& sched,
                             const ModelParams& params, double s_star, int n_probes,
                             std::uint64_t seed, int threads) {
    if (!(s_star > 0.0 && s_star <= 1.0)) {
        throw std::invalid_argument("minima_catalog: s_star must be in (0, 1]");
    }
    if (n_probes < 1) throw std::invalid_argument("minima_catalog: n_probes must be >= 1");
    params.validate();

    auto [A, B] = sched.evaluate(s_star);
    ModelParams probe_params = params;
    probe_params.snapshot_at.clear();

    std::vector<SpinConfig> outcomes(n_probes);
    auto run_probe = [&](int probe) {
        std::uint64_t probe_seed = derive_run_seed(seed, inst.id(), probe);
        RunRecord rec = anneal_until(inst, sched, probe_params, probe_seed, s_star);
        RotorState minimum = greedy_descent(std::move(rec.final_theta), A, B, inst);
        outcomes[probe] = canonicalize(round_to_spins(minimum));
    };

    if (threads <= 1) {
        for (int probe = 0; probe < n_probes; ++probe) run_probe(probe);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (int probe = next.fetch_add(1); probe < n_probes; probe = next.fetch_add(1)) {
                run_probe(probe);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::map<SpinConfig, std::uint64_t> tally;
    for (const SpinConfig& config : outcomes) ++tally[config];

    MinimaCatalog catalog;
    catalog.s_star = s_star;
    catalog.total_runs = n_probes;
    for (auto& [config, hits] : tally) catalog.entries.push_back({config, hits});
    std::sort(catalog.entries.begin(), catalog.entries.end(),
              [](const MinimaCatalogEntry& a, const MinimaCatalogEntry& b) {
                  if (a.hits != b.hits) return a.hits > b.hits;
                  return a.config < b.config;
              });
    return catalog;
}

std::vector<int> branching_diff(const SpinConfig& min_a, const SpinConfig& min_b) {
    if (min_a.size() != min_b.size()) throw std::invalid_argument("branching_diff: length mismatch");
    std::vector<int> direct, flipped;
    for (std::size_t i = 0; i < min_a.size(); ++i) {
        if (min_a[i] != min_b[i]) direct.push_back(static_cast<int>(i));
        if (min_a[i] != -min_b[i]) flipped.push_back(static_cast<int>(i));
    }
    return flipped.size() < direct.size() ? flipped : direct;
}

}  // namespace svmc
