#include "svmc/rotor_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace svmc {

void ModelParams::validate() const {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    for (double f : snapshot_at) {
        if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("snapshot fraction outside [0,1]");
    }
}

RotorState initial_state(const IsingInstance& inst, InitMode init, Rng& rng) {
    RotorState state(inst.n(), kBrokenTheta);
    for (int i : inst.active_sites()) {
        state[i] = (init == InitMode::transverse) ? std::numbers::pi / 2 : uniform_angle(rng);
    }
    return state;
}

namespace {

void check_state_size(const RotorState& state, const IsingInstance& inst) {
    if (static_cast<int>(state.size()) != inst.n()) {
        throw std::invalid_argument("rotor state length " + std::to_string(state.size()) +
                                    " != n " + std::to_string(inst.n()));
    }
}

void check_site(int i, const IsingInstance& inst) {
    if (i < 0 || i >= inst.n()) throw std::invalid_argument("site out of range");
    if (!inst.is_active(i)) throw std::invalid_argument("site " + std::to_string(i) + " is broken");
}

/// z component of the local field at `i` divided by B, i.e.
/// sum_j J_ij cos(theta_j) + h_i, from precomputed cosines.
double local_z_sum(const std::vector<double>& cos_cache, int i, const IsingInstance& inst) {
    double sum = 0.0;
    for (const auto& [j, coupling] : inst.neighbors(i)) sum += coupling * cos_cache[j];
    return sum + inst.fields()[i];
}

/// Sweep core shared by the public function and the anneal loop; keeps
/// cos/sin caches so neighbor sums cost one multiply per edge.
int sweep_cached(RotorState& state, std::vector<double>& cos_cache, std::vector<double>& sin_cache,
                 double A, double B, double temperature, const IsingInstance& inst, Rng& rng) {
    int accepted = 0;
    for (int i : inst.active_sites()) {
        double theta_new = uniform_angle(rng);
        double cos_new = std::cos(theta_new);
        double sin_new = std::sin(theta_new);
        double delta = -A * (sin_new - sin_cache[i]) -
                       B * local_z_sum(cos_cache, i, inst) * (cos_new - cos_cache[i]);
        bool accept = delta <= 0.0 || uniform01(rng) < std::exp(-delta / temperature);
        if (accept) {
            state[i] = theta_new;
            cos_cache[i] = cos_new;
            sin_cache[i] = sin_new;
            ++accepted;
        }
    }
    return accepted;
}

void build_caches(const RotorState& state, const IsingInstance& inst, std::vector<double>& cosc,
                  std::vector<double>& sinc) {
    cosc.assign(state.size(), 0.0);
    sinc.assign(state.size(), 0.0);
    for (int i : inst.active_sites()) {
        cosc[i] = std::cos(state[i]);
        sinc[i] = std::sin(state[i]);
    }
}

double circular_distance(double a, double b) {
    double d = std::fabs(a - b);
    d = std::fmod(d, kTwoPi);
    return std::min(d, kTwoPi - d);
}

}  // namespace

double model_energy(const RotorState& state, double A, double B, const IsingInstance& inst) {
    check_state_size(state, inst);
    double transverse = 0.0;
    for (int i : inst.active_sites()) transverse += std::sin(state[i]);
    double coupling = 0.0;
    for (const Edge& e : inst.edges()) {
        coupling += e.coupling * std::cos(state[e.i]) * std::cos(state[e.j]);
    }
    double field = 0.0;
    if (inst.has_fields()) {
        for (int i : inst.active_sites()) field += inst.fields()[i] * std::cos(state[i]);
    }
    return -A * transverse - B * coupling - B * field;
}

double local_delta_energy(const RotorState& state, int i, double theta_new, double A, double B,
                          const IsingInstance& inst) {
    check_state_size(state, inst);
    check_site(i, inst);
    double z_sum = inst.fields()[i];
    for (const auto& [j, coupling] : inst.neighbors(i)) z_sum += coupling * std::cos(state[j]);
    return -A * (std::sin(theta_new) - std::sin(state[i])) -
           B * z_sum * (std::cos(theta_new) - std::cos(state[i]));
}

int metropolis_sweep(RotorState& state, double A, double B, double temperature,
                     const IsingInstance& inst, Rng& rng) {
    check_state_size(state, inst);
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
    std::vector<double> cosc, sinc;
    build_caches(state, inst, cosc, sinc);
    return sweep_cached(state, cosc, sinc, A, B, temperature, inst, rng);
}

SpinConfig round_to_spins(const RotorState& state) {
    SpinConfig config(state.size(), 0);
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i] == kBrokenTheta) continue;
        double c = std::cos(state[i]);
        config[i] = (c < -kRoundTieEps) ? -1 : 1;
    }
    return config;
}

RunRecord anneal_until(const IsingInstance& inst, const AnnealSchedule& sched,
                       const ModelParams& params, std::uint64_t seed, double stop_fraction) {
    params.validate();
    if (!(stop_fraction >= 0.0 && stop_fraction <= 1.0)) {
        throw std::invalid_argument("stop fraction outside [0,1]");
    }
    Rng rng(seed);
    RunRecord rec;
    rec.seed = seed;

    RotorState state = initial_state(inst, params.init, rng);
    std::vector<double> cosc, sinc;
    build_caches(state, inst, cosc, sinc);

    std::vector<double> pending = params.snapshot_at;
    std::sort(pending.begin(), pending.end());
    std::size_t next_snap = 0;

    const int sweeps = params.sweeps;
    for (int k = 0; k < sweeps; ++k) {
        double s = (sweeps == 1) ? 0.0 : static_cast<double>(k) / (sweeps - 1);
        if (s > stop_fraction + 1e-12) break;
        auto [A, B] = sched.evaluate(s);
        rec.accepted += sweep_cached(state, cosc, sinc, A, B, params.temperature, inst, rng);
        rec.proposed += inst.active_sites().size();
        while (next_snap < pending.size() && s >= pending[next_snap] - 1e-12) {
            rec.snapshots.emplace_back(pending[next_snap], state);
            ++next_snap;
        }
    }

    rec.final_theta = std::move(state);
    rec.final_config = round_to_spins(rec.final_theta);
    rec.final_energy = ising_energy(rec.final_config, inst);
    return rec;
}

RunRecord anneal(const IsingInstance& inst, const AnnealSchedule& sched, const ModelParams& params,
                 std::uint64_t seed) {
    return anneal_until(inst, sched, params, seed, 1.0);
}

double zero_temp_align(const RotorState& state, int i, double A, double B,
                       const IsingInstance& inst) {
    check_state_size(state, inst);
    check_site(i, inst);
    if (!(A >= 0.0)) throw std::invalid_argument("zero_temp_align needs A >= 0");
    double z_sum = inst.fields()[i];
    for (const auto& [j, coupling] : inst.neighbors(i)) z_sum += coupling * std::cos(state[j]);
    double z_field = B * z_sum;
    if (A == 0.0 && z_field == 0.0) {
        throw std::invalid_argument("zero_temp_align: effective field is zero at site " +
                                    std::to_string(i));
    }
    return std::atan2(A, z_field);  // in [0, pi] since A >= 0
}

RotorState greedy_descent(RotorState state, double A, double B, const IsingInstance& inst,
                          double tol, int max_passes) {
    check_state_size(state, inst);
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    std::vector<double> cosc(state.size(), 0.0);
    for (int i : inst.active_sites()) cosc[i] = std::cos(state[i]);

    for (int pass = 0; pass < max_passes; ++pass) {
        double max_move = 0.0;
        for (int i : inst.active_sites()) {
            double z_field = B * local_z_sum(cosc, i, inst);
            if (A == 0.0 && z_field == 0.0) continue;  // any angle is stationary
            double aligned = std::atan2(A, z_field);
            max_move = std::max(max_move, circular_distance(aligned, state[i]));
            state[i] = aligned;
            cosc[i] = std::cos(aligned);
        }
        if (max_move < tol) return state;
    }
    throw std::runtime_error("greedy_descent: no convergence after " +
                             std::to_string(max_passes) + " passes");
}

}  // namespace svmc
