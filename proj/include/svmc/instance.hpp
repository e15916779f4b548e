#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svmc/chimera.hpp"
#include "svmc/rng.hpp"

namespace svmc {

/// Spin configuration over all sites of an instance: +1/-1 per active site,
/// 0 at broken sites (sentinel, excluded from every energy sum).
using SpinConfig = std::vector<std::int8_t>;

struct Edge {
    int i = 0;
    int j = 0;              // i < j, both active
    double coupling = 0.0;  // J_ij in [-1, 1]
};

/// Distribution the couplings (and optional fields) are drawn from.
struct CouplingModel {
    enum class Kind { pm1, range };
    Kind kind = Kind::pm1;
    int levels = 2;  // range: uniform over `levels` evenly spaced values in [-1, 1]

    double draw(Rng& rng) const;
    std::string name() const;
};

/// An Ising problem -sum J_ij z_i z_j - sum h_i z_i on a subgraph of a
/// Chimera topology. Immutable after construction.
class IsingInstance {
public:
    /// `fields` is either empty (h == 0) or one value per site, zero at
    /// broken sites. Throws std::invalid_argument on edges off the Chimera
    /// adjacency, duplicate edges, broken endpoints, or out-of-range values.
    IsingInstance(ChimeraSpec geometry, std::vector<Edge> edges, std::vector<double> fields,
                  std::string id);

    const ChimeraSpec& geometry() const { return geometry_; }
    int n() const { return geometry_.total_sites(); }
    int active_count() const { return geometry_.active_count(); }
    bool is_active(int site) const { return !geometry_.is_broken(site); }
    const std::vector<int>& active_sites() const { return active_sites_; }

    const std::vector<Edge>& edges() const { return edges_; }
    /// Local field per site; zero-filled when the instance has no fields.
    const std::vector<double>& fields() const { return fields_; }
    bool has_fields() const { return has_fields_; }

    /// (neighbor, J) pairs of `site`, in ascending neighbor order.
    const std::vector<std::pair<int, double>>& neighbors(int site) const {
        return neighbors_[site];
    }

    /// True when every J and h is one of {-1, 0, +1}; energies are then exact
    /// integers and ground-state comparisons use exact equality.
    bool integral() const { return integral_; }

    const std::string& id() const { return id_; }

private:
    ChimeraSpec geometry_;
    std::vector<Edge> edges_;
    std::vector<double> fields_;
    std::vector<std::vector<std::pair<int, double>>> neighbors_;
    std::vector<int> active_sites_;
    std::string id_;
    bool has_fields_ = false;
    bool integral_ = true;
};

/// Ising energy -sum_edges J_ij z_i z_j - sum_i h_i z_i (dimensionless).
/// Throws std::invalid_argument when the config length differs from n().
double ising_energy(const SpinConfig& config, const IsingInstance& inst);

/// Random instance on the full Chimera adjacency of `spec`: one coupling per
/// edge drawn from `model`, fields all zero unless `with_fields`. Pure
/// function of (spec, rng state, model). Throws when the adjacency is empty.
IsingInstance random_instance(const ChimeraSpec& spec, Rng& rng, const CouplingModel& model,
                              bool with_fields = false, std::string id = "");

/// Instance file round-trip; see README for the format. read_instance
/// validates the header, adjacency membership and duplicates, and takes the
/// instance id from the file name stem.
IsingInstance read_instance(const std::string& path);
void write_instance(const IsingInstance& inst, const std::string& path);

}  // namespace svmc
