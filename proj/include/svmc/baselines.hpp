#pragma once

#include <cstdint>

#include "svmc/instance.hpp"
#include "svmc/rotor_model.hpp"
#include "svmc/run_record.hpp"

// Classical comparison solvers: conventional bit-spin simulated annealing and
// the O(2) rotor reduction obtained by forcing A == 0.

namespace svmc {

/// Temperature ladder for bit-spin SA, in the instance's dimensionless
/// energy units. Defaults are deliberately plain; both ends and the shape
/// are exposed as flags and echoed in run metadata.
struct TempLadder {
    enum class Kind { linear, geometric };
    double t_start = 10.0;
    double t_end = 0.05;
    Kind kind = Kind::linear;

    /// Temperature for sweep k of `sweeps` (k in [0, sweeps)).
    double at(int k, int sweeps) const;
    void validate() const;  // throws std::invalid_argument
};

/// Single-spin-flip Metropolis on z in {-1,+1}^n under the Ising energy,
/// from a random initial configuration. Deterministic given seed.
RunRecord sa_bits(const IsingInstance& inst, const TempLadder& ladder, int sweeps,
                  std::uint64_t seed);

/// O(2) simulated annealing: the rotor model with A forced to zero and
/// random initial angles (theta = pi/2 would start every site in a
/// zero-field singularity). Identical mechanics otherwise — it delegates to
/// anneal(), so states match the A==0 rotor run sweep for sweep.
RunRecord sa_o2(const IsingInstance& inst, const AnnealSchedule& sched, const ModelParams& params,
                std::uint64_t seed);

}  // namespace svmc
