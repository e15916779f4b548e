#pragma once

#include <cstdint>
#include <vector>

#include "svmc/instance.hpp"
#include "svmc/rng.hpp"
#include "svmc/run_record.hpp"
#include "svmc/schedule.hpp"

// The classical spin-vector model: each spin is an O(2) rotor at angle
// theta_i in the XZ plane with energy
//
//   H(s) = -A(s) sum_i sin(theta_i) - B(s) sum_{i<j} J_ij cos(theta_i) cos(theta_j)
//          - B(s) sum_i h_i cos(theta_i)
//
// evolved by single-site Metropolis updates at a fixed temperature while the
// schedule moves A down and B up.

namespace svmc {

inline constexpr double kDefaultTemperatureGHz = 0.22;
inline constexpr int kDefaultSweeps = 150000;

/// Angles whose z-projection is this close to zero round to +1 (tie rule).
/// Covers the exactly-transverse fixed point of greedy descent, where every
/// cos(theta_i) converges to 0 from a random side.
inline constexpr double kRoundTieEps = 1e-9;

inline constexpr double kGreedyTol = 1e-10;
inline constexpr int kGreedyMaxPasses = 100000;

enum class InitMode {
    transverse,  // theta_i = pi/2, the s = 0 ground state
    random,      // uniform angles; used by the O(2)-SA baseline
};

struct ModelParams {
    double temperature = kDefaultTemperatureGHz;  // GHz; constant over the anneal
    int sweeps = kDefaultSweeps;                  // one sweep = one pass over all spins
    std::vector<double> snapshot_at;              // anneal fractions to record
    InitMode init = InitMode::transverse;

    void validate() const;  // throws std::invalid_argument
};

/// Fresh initial state per `init`; broken sites hold kBrokenTheta.
RotorState initial_state(const IsingInstance& inst, InitMode init, Rng& rng);

/// H(s) for fixed A, B in GHz. Throws on state length mismatch.
double model_energy(const RotorState& state, double A, double B, const IsingInstance& inst);

/// Energy change of moving site `i` to `theta_new`, computed from the local
/// field only. Matches the global energy difference to ~1e-10. Throws when
/// `i` is broken or out of range.
double local_delta_energy(const RotorState& state, int i, double theta_new, double A, double B,
                          const IsingInstance& inst);

/// One Metropolis sweep: visits each active site once in index order,
/// proposes a uniform angle in [0, 2*pi), accepts when dE <= 0 and with
/// probability exp(-dE/T) otherwise. Updated values are visible to later
/// sites within the sweep. Returns the number of accepted moves.
int metropolis_sweep(RotorState& state, double A, double B, double temperature,
                     const IsingInstance& inst, Rng& rng);

/// z_i = sign(cos theta_i); |cos theta_i| <= kRoundTieEps rounds to +1.
/// Broken sites map to 0.
SpinConfig round_to_spins(const RotorState& state);

/// Full anneal: `sweeps` Metropolis sweeps with (A, B) evaluated at
/// s = k/(sweeps-1). Records requested snapshots, rounds the final state and
/// attaches its dimensionless Ising energy.
RunRecord anneal(const IsingInstance& inst, const AnnealSchedule& sched, const ModelParams& params,
                 std::uint64_t seed);

/// Same as anneal but stops after the sweep at the largest s <= stop_fraction.
/// Used to probe the model mid-schedule.
RunRecord anneal_until(const IsingInstance& inst, const AnnealSchedule& sched,
                       const ModelParams& params, std::uint64_t seed, double stop_fraction);

/// Angle of the local effective field at site `i`: x component A, z component
/// B (sum_j J_ij cos theta_j + h_i). Result lies in [0, pi] (sin >= 0).
/// Throws when the field is exactly zero (direction undefined) or `i` is
/// broken/out of range.
double zero_temp_align(const RotorState& state, int i, double A, double B,
                       const IsingInstance& inst);

/// Coordinate descent on the frozen Hamiltonian: aligns sites one at a time
/// in index order until no site moves by more than `tol` (circular distance)
/// in a full pass. Sites with an exactly zero local field are left unchanged.
/// Throws std::runtime_error when `max_passes` is exhausted.
RotorState greedy_descent(RotorState state, double A, double B, const IsingInstance& inst,
                          double tol = kGreedyTol, int max_passes = kGreedyMaxPasses);

}  // namespace svmc
