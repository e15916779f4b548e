#include "svmc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <vector>

#include "svmc/run_record.hpp"
#include "svmc/text.hpp"

namespace svmc {

namespace {

constexpr double kEnergyTol = 1e-9;

double coupling_between(const IsingInstance& inst, int i, int j) {
    for (const auto& [nb, coupling] : inst.neighbors(i)) {
        if (nb == j) return coupling;
    }
    return 0.0;
}

}  // namespace

GroundResult exhaustive_ground(const IsingInstance& inst) {
    const auto& active = inst.active_sites();
    const int m = static_cast<int>(active.size());
    if (m < 1) throw std::invalid_argument("exhaustive_ground: no active sites");
    if (m > 24) {
        throw std::invalid_argument("exhaustive_ground: instance too large (" + std::to_string(m) +
                                    " active sites, limit 24)");
    }

    // reduced problem over active sites only
    std::vector<int> reduced_index(inst.n(), -1);
    for (int a = 0; a < m; ++a) reduced_index[active[a]] = a;
    std::vector<std::vector<std::pair<int, double>>> nbr(m);
    for (const Edge& e : inst.edges()) {
        int a = reduced_index[e.i], b = reduced_index[e.j];
        nbr[a].emplace_back(b, e.coupling);
        nbr[b].emplace_back(a, e.coupling);
    }
    std::vector<double> h(m, 0.0);
    for (int a = 0; a < m; ++a) h[a] = inst.fields()[active[a]];

    std::vector<double> z(m, -1.0);
    long double energy = 0.0;
    for (int a = 0; a < m; ++a) {
        for (const auto& [b, coupling] : nbr[a]) {
            if (b > a) energy -= coupling * z[a] * z[b];
        }
        energy -= h[a] * z[a];
    }

    const double eps = inst.integral() ? 0.0 : kEnergyTol;
    double best = static_cast<double>(energy);
    std::uint64_t best_mask = 0;
    std::uint64_t degeneracy = 1;

    // Gray-code walk: step k flips spin ctz(k), so each energy update is
    // O(degree).
    const std::uint64_t total = 1ull << m;
    std::uint64_t mask = 0;
    for (std::uint64_t k = 1; k < total; ++k) {
        int a = std::countr_zero(k);
        double local = h[a];
        for (const auto& [b, coupling] : nbr[a]) local += coupling * z[b];
        energy += 2.0 * z[a] * local;  // flip cost: 2 z_a (sum_j J_ab z_b + h_a)
        z[a] = -z[a];
        mask ^= 1ull << a;

        double e = static_cast<double>(energy);
        if (e < best - eps) {
            best = e;
            best_mask = mask;
            degeneracy = 1;
        } else if (e <= best + eps) {
            ++degeneracy;
        }
    }

    GroundResult result;
    result.degeneracy = degeneracy;
    result.config.assign(inst.n(), 0);
    for (int a = 0; a < m; ++a) {
        result.config[active[a]] = (best_mask >> a) & 1 ? 1 : -1;
    }
    // fresh evaluation of the reported minimizer, free of accumulated drift
    result.energy = ising_energy(result.config, inst);
    return result;
}

std::pair<double, SpinConfig> chimera_ground(const IsingInstance& inst) {
    const ChimeraSpec& g = inst.geometry();
    const int R = g.rows, C = g.cols, K = g.half;
    if (R * K > 16) {
        throw std::invalid_argument("chimera_ground: unsupported shape (rows*half must be <= 16)");
    }
    const int L = 1 << K;                    // states of one block
    const std::size_t M = 1ull << (R * K);   // boundary: right blocks of a column
    const double inf = std::numeric_limits<double>::infinity();

    auto spin = [](std::uint32_t bits, int k) { return (bits >> k) & 1u ? 1.0 : -1.0; };

    // val[m*L + l]: best energy so far, given mixed right-block state m and
    // left block l of the cell just processed.
    std::vector<double> val(M * L, 0.0), tmp(M * L, 0.0);
    std::vector<double> colv(M, 0.0);

    // argmin tables for reconstructing one minimizer
    std::vector<std::vector<std::uint8_t>> arg_lprev(R * C), arg_rold(R * C);
    std::vector<std::vector<std::uint8_t>> colend_arg(C);

    std::vector<double> intra(L * L), vert(L * L), horiz(L * L);

    for (int c = 0; c < C; ++c) {
        for (int r = 0; r < R; ++r) {
            const int cell = r * C + c;
            // per-cell interaction tables (fields folded into intra)
            for (int lb = 0; lb < L; ++lb) {
                for (int rb = 0; rb < L; ++rb) {
                    double e = 0.0;
                    for (int a = 0; a < K; ++a) {
                        for (int b = 0; b < K; ++b) {
                            double J = coupling_between(inst, g.site_at(r, c, 0, a),
                                                        g.site_at(r, c, 1, b));
                            e -= J * spin(lb, a) * spin(rb, b);
                        }
                    }
                    for (int a = 0; a < K; ++a) e -= inst.fields()[g.site_at(r, c, 0, a)] * spin(lb, a);
                    for (int b = 0; b < K; ++b) e -= inst.fields()[g.site_at(r, c, 1, b)] * spin(rb, b);
                    intra[lb * L + rb] = e;
                }
            }
            if (r > 0) {
                for (int lp = 0; lp < L; ++lp) {
                    for (int lb = 0; lb < L; ++lb) {
                        double e = 0.0;
                        for (int k = 0; k < K; ++k) {
                            double J = coupling_between(inst, g.site_at(r - 1, c, 0, k),
                                                        g.site_at(r, c, 0, k));
                            e -= J * spin(lp, k) * spin(lb, k);
                        }
                        vert[lp * L + lb] = e;
                    }
                }
            }
            if (c > 0) {
                for (int ro = 0; ro < L; ++ro) {
                    for (int rn = 0; rn < L; ++rn) {
                        double e = 0.0;
                        for (int k = 0; k < K; ++k) {
                            double J = coupling_between(inst, g.site_at(r, c - 1, 1, k),
                                                        g.site_at(r, c, 1, k));
                            e -= J * spin(ro, k) * spin(rn, k);
                        }
                        horiz[ro * L + rn] = e;
                    }
                }
            }

            // step A: pick this cell's left block, paying the vertical bond
            if (r == 0) {
                for (std::size_t m = 0; m < M; ++m) {
                    for (int lb = 0; lb < L; ++lb) val[m * L + lb] = colv[m];
                }
            } else {
                arg_lprev[cell].assign(M * L, 0);
                for (std::size_t m = 0; m < M; ++m) {
                    for (int lb = 0; lb < L; ++lb) {
                        double best = inf;
                        std::uint8_t arg = 0;
                        for (int lp = 0; lp < L; ++lp) {
                            double e = tmp[m * L + lp] + vert[lp * L + lb];
                            if (e < best) {
                                best = e;
                                arg = static_cast<std::uint8_t>(lp);
                            }
                        }
                        val[m * L + lb] = best;
                        arg_lprev[cell][m * L + lb] = arg;
                    }
                }
            }

            // step B: replace this row's boundary slot with the new right
            // block, paying the horizontal bond and the intra-cell energy
            const int shift = r * K;
            const std::size_t slot_mask = static_cast<std::size_t>(L - 1) << shift;
            arg_rold[cell].assign(M * L, 0);
            for (std::size_t m = 0; m < M; ++m) {
                if (m & slot_mask) continue;  // enumerate slot-cleared states once
                for (int lb = 0; lb < L; ++lb) {
                    for (int rn = 0; rn < L; ++rn) {
                        double best = inf;
                        std::uint8_t arg = 0;
                        for (int ro = 0; ro < L; ++ro) {
                            std::size_t m_old = m | (static_cast<std::size_t>(ro) << shift);
                            double e = val[m_old * L + lb];
                            if (c > 0) e += horiz[ro * L + rn];
                            if (e < best) {
                                best = e;
                                arg = static_cast<std::uint8_t>(ro);
                            }
                        }
                        std::size_t m_new = m | (static_cast<std::size_t>(rn) << shift);
                        tmp[m_new * L + lb] = best + intra[lb * L + rn];
                        arg_rold[cell][m_new * L + lb] = arg;
                    }
                }
            }
            // tmp now holds the post-cell table; it feeds the next step A
        }

        // close the column: the bottom cell's left block has no bond below
        colend_arg[c].assign(M, 0);
        for (std::size_t m = 0; m < M; ++m) {
            double best = inf;
            std::uint8_t arg = 0;
            for (int lb = 0; lb < L; ++lb) {
                if (tmp[m * L + lb] < best) {
                    best = tmp[m * L + lb];
                    arg = static_cast<std::uint8_t>(lb);
                }
            }
            colv[m] = best;
            colend_arg[c][m] = arg;
        }
    }

    std::size_t m_best = 0;
    for (std::size_t m = 1; m < M; ++m) {
        if (colv[m] < colv[m_best]) m_best = m;
    }

    // walk the argmin tables backwards to recover one minimizer
    SpinConfig config(inst.n(), 0);
    std::size_t m = m_best;
    for (int c = C - 1; c >= 0; --c) {
        int lb = colend_arg[c][m];
        for (int r = R - 1; r >= 0; --r) {
            const int cell = r * C + c;
            const int shift = r * K;
            const std::size_t slot_mask = static_cast<std::size_t>((1 << K) - 1) << shift;
            std::uint32_t rb = static_cast<std::uint32_t>((m & slot_mask) >> shift);
            for (int k = 0; k < K; ++k) {
                config[g.site_at(r, c, 0, k)] = spin(lb, k) > 0 ? 1 : -1;
                config[g.site_at(r, c, 1, k)] = spin(rb, k) > 0 ? 1 : -1;
            }
            int ro = arg_rold[cell][m * static_cast<std::size_t>(L) + lb];
            m = (m & ~slot_mask) | (static_cast<std::size_t>(ro) << shift);
            if (r > 0) lb = arg_lprev[cell][m * static_cast<std::size_t>(L) + lb];
        }
    }
    for (int site : g.broken) config[site] = 0;

    // report the config's own energy; must equal the DP optimum
    double energy = ising_energy(config, inst);
    if (std::fabs(energy - colv[m_best]) > 1e-6) {
        throw std::runtime_error("chimera_ground: reconstruction mismatch");
    }
    return {energy, std::move(config)};
}

bool is_ground(const SpinConfig& config, const IsingInstance& inst, double ground_energy) {
    double e = ising_energy(config, inst);
    if (inst.integral()) return e == ground_energy;
    return std::fabs(e - ground_energy) <= kEnergyTol;
}

std::pair<double, SpinConfig> compute_ground(const IsingInstance& inst) {
    if (inst.active_count() <= 20) {
        GroundResult res = exhaustive_ground(inst);
        return {res.energy, std::move(res.config)};
    }
    return chimera_ground(inst);
}

GroundCache load_ground_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ground cache: " + path);
    GroundCache cache;
    std::string raw;
    bool have_header = false;
    while (std::getline(in, raw)) {
        std::string_view line = strip_cr(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            if (line != "id,energy,config") {
                throw std::invalid_argument(path + ": cache header must be 'id,energy,config'");
            }
            have_header = true;
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() != 3) throw std::invalid_argument(path + ": malformed cache row");
        cache[std::string(fields[0])] = {parse_double(fields[1], "energy"),
                                         config_from_string(std::string(fields[2]))};
    }
    return cache;
}

void save_ground_cache(const GroundCache& cache, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write ground cache: " + path);
    out << "id,energy,config\n";
    for (const auto& [id, entry] : cache) {
        out << id << ',' << format_double(entry.first) << ',' << config_to_string(entry.second)
            << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace svmc
