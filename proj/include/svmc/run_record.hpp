#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "svmc/instance.hpp"

namespace svmc {

/// Angles theta_i in [0, 2*pi), one per site. Broken sites hold
/// kBrokenTheta and are excluded from every sum.
using RotorState = std::vector<double>;

/// Sentinel angle for broken sites (outside [0, 2*pi), detected exactly).
inline constexpr double kBrokenTheta = -1.0;

/// Everything recorded about one annealing run.
struct RunRecord {
    std::uint64_t seed = 0;
    RotorState final_theta;     // empty for bit-spin SA runs
    SpinConfig final_config;    // rounded final state
    double final_energy = 0.0;  // dimensionless Ising energy of final_config
    bool success = false;       // graded by the caller against an oracle energy
    std::vector<std::pair<double, RotorState>> snapshots;  // (fraction, state)
    std::uint64_t accepted = 0;  // Metropolis acceptances over the whole run
    std::uint64_t proposed = 0;  // proposals = active sites x sweeps
};

/// '+' / '-' per spin, '.' for broken sites.
std::string config_to_string(const SpinConfig& config);
SpinConfig config_from_string(const std::string& text);

/// JSON round-trip (angles kept at full double precision).
std::string run_record_to_json(const RunRecord& rec);
RunRecord run_record_from_json(const std::string& text);

}  // namespace svmc
