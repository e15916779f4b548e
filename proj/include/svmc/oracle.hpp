#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "svmc/instance.hpp"

// Exact ground-state computation for success grading. Two independent
// routes: brute-force enumeration (small instances) and a transfer-matrix
// style dynamic program over Chimera columns (up to full C4). The DP is
// validated against the enumeration wherever both run.

namespace svmc {

struct GroundResult {
    double energy = 0.0;
    SpinConfig config;           // one minimizer; broken sites 0
    std::uint64_t degeneracy = 0;  // number of minimizing configurations
};

/// Exact minimum over all 2^n configurations of the active sites, by Gray
/// code enumeration. Throws when more than 24 sites are active.
GroundResult exhaustive_ground(const IsingInstance& inst);

/// Exact minimum via dynamic programming: sweeps cells column by column,
/// carrying the right-block spins of the working column plus the left block
/// of the adjacent cell as boundary state. Needs rows*half <= 16.
std::pair<double, SpinConfig> chimera_ground(const IsingInstance& inst);

/// True iff ising_energy(config) equals ground_energy — exactly for
/// integral instances, within 1e-9 otherwise.
bool is_ground(const SpinConfig& config, const IsingInstance& inst, double ground_energy);

/// Picks exhaustive_ground for <= 20 active sites, chimera_ground otherwise.
std::pair<double, SpinConfig> compute_ground(const IsingInstance& inst);

/// Per-instance ground-state cache (CSV `id,energy,config`) so experiment
/// batches do not recompute oracles.
using GroundCache = std::map<std::string, std::pair<double, SpinConfig>>;

GroundCache load_ground_cache(const std::string& path);
void save_ground_cache(const GroundCache& cache, const std::string& path);

}  // namespace svmc
