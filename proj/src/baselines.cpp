#include "svmc/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace svmc {

double TempLadder::at(int k, int sweeps) const {
    if (sweeps <= 1) return t_start;
    double t = static_cast<double>(k) / (sweeps - 1);
    if (kind == Kind::linear) return t_start + t * (t_end - t_start);
    return t_start * std::pow(t_end / t_start, t);
}

void TempLadder::validate() const {
    if (!(t_start > 0.0) || !(t_end > 0.0)) {
        throw std::invalid_argument("temperature ladder must be positive");
    }
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
        throw std::invalid_argument("temperature ladder must be finite");
    }
}

RunRecord sa_bits(const IsingInstance& inst, const TempLadder& ladder, int sweeps,
                  std::uint64_t seed) {
    ladder.validate();
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");

    Rng rng(seed);
    RunRecord rec;
    rec.seed = seed;

    SpinConfig z(inst.n(), 0);
    for (int i : inst.active_sites()) z[i] = (rng() & 1u) ? 1 : -1;

    for (int k = 0; k < sweeps; ++k) {
        double temperature = ladder.at(k, sweeps);
        for (int i : inst.active_sites()) {
            double local = inst.fields()[i];
            for (const auto& [j, coupling] : inst.neighbors(i)) local += coupling * z[j];
            double delta = 2.0 * z[i] * local;
            if (delta <= 0.0 || uniform01(rng) < std::exp(-delta / temperature)) {
                z[i] = -z[i];
                ++rec.accepted;
            }
        }
        rec.proposed += inst.active_sites().size();
    }

    rec.final_config = std::move(z);
    rec.final_energy = ising_energy(rec.final_config, inst);
    return rec;
}

RunRecord sa_o2(const IsingInstance& inst, const AnnealSchedule& sched, const ModelParams& params,
                std::uint64_t seed) {
    ModelParams o2 = params;
    o2.init = InitMode::random;
    return anneal(inst, sched.with_zero_A(), o2, seed);
}

}  // namespace svmc
