#include "svmc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "svmc/text.hpp"

namespace svmc {

double CouplingModel::draw(Rng& rng) const {
    if (kind == Kind::pm1) {
        return (rng() & 1u) ? 1.0 : -1.0;
    }
    // `levels` evenly spaced values in [-1, 1]
    int idx = static_cast<int>(uniform01(rng) * levels);
    if (idx >= levels) idx = levels - 1;
    if (levels == 1) return 0.0;
    return -1.0 + 2.0 * idx / (levels - 1);
}

std::string CouplingModel::name() const {
    if (kind == Kind::pm1) return "pm1";
    return "range" + std::to_string(levels);
}

namespace {

bool is_integral_value(double v) { return v == -1.0 || v == 0.0 || v == 1.0; }

}  // namespace

IsingInstance::IsingInstance(ChimeraSpec geometry, std::vector<Edge> edges,
                             std::vector<double> fields, std::string id)
    : geometry_(std::move(geometry)), edges_(std::move(edges)), fields_(std::move(fields)),
      id_(std::move(id)) {
    geometry_.validate();
    const int n = geometry_.total_sites();

    std::set<SitePair> adjacency;
    for (const SitePair& e : build_chimera(geometry_)) adjacency.insert(e);

    std::set<SitePair> seen;
    for (Edge& e : edges_) {
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.i == e.j || e.i < 0 || e.j >= n) {
            throw std::invalid_argument(id_ + ": invalid edge (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ")");
        }
        if (geometry_.is_broken(e.i) || geometry_.is_broken(e.j)) {
            throw std::invalid_argument(id_ + ": edge touches broken site (" +
                                        std::to_string(e.i) + "," + std::to_string(e.j) + ")");
        }
        if (!adjacency.count({e.i, e.j})) {
            throw std::invalid_argument(id_ + ": edge (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ") is not a Chimera coupler");
        }
        if (!seen.insert({e.i, e.j}).second) {
            throw std::invalid_argument(id_ + ": duplicate edge (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ")");
        }
        if (!(e.coupling >= -1.0 && e.coupling <= 1.0)) {
            throw std::invalid_argument(id_ + ": coupling out of [-1,1] on edge (" +
                                        std::to_string(e.i) + "," + std::to_string(e.j) + ")");
        }
        if (!is_integral_value(e.coupling)) integral_ = false;
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });

    if (fields_.empty()) {
        fields_.assign(n, 0.0);
    } else if (static_cast<int>(fields_.size()) != n) {
        throw std::invalid_argument(id_ + ": field vector length mismatch");
    }
    for (int i = 0; i < n; ++i) {
        double h = fields_[i];
        if (!(h >= -1.0 && h <= 1.0)) {
            throw std::invalid_argument(id_ + ": field out of [-1,1] at site " + std::to_string(i));
        }
        if (h != 0.0 && geometry_.is_broken(i)) {
            throw std::invalid_argument(id_ + ": field on broken site " + std::to_string(i));
        }
        if (h != 0.0) has_fields_ = true;
        if (!is_integral_value(h)) integral_ = false;
    }

    neighbors_.assign(n, {});
    for (const Edge& e : edges_) {
        neighbors_[e.i].emplace_back(e.j, e.coupling);
        neighbors_[e.j].emplace_back(e.i, e.coupling);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());

    active_sites_.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (!geometry_.is_broken(i)) active_sites_.push_back(i);
    }
}

double ising_energy(const SpinConfig& config, const IsingInstance& inst) {
    if (static_cast<int>(config.size()) != inst.n()) {
        throw std::invalid_argument("ising_energy: config length " +
                                    std::to_string(config.size()) + " != n " +
                                    std::to_string(inst.n()));
    }
    double energy = 0.0;
    for (const Edge& e : inst.edges()) {
        energy -= e.coupling * config[e.i] * config[e.j];
    }
    if (inst.has_fields()) {
        const auto& h = inst.fields();
        for (int i : inst.active_sites()) energy -= h[i] * config[i];
    }
    return energy;
}

IsingInstance random_instance(const ChimeraSpec& spec, Rng& rng, const CouplingModel& model,
                              bool with_fields, std::string id) {
    std::vector<SitePair> adjacency = build_chimera(spec);
    if (adjacency.empty()) {
        throw std::invalid_argument("random_instance: adjacency is empty");
    }
    std::vector<Edge> edges;
    edges.reserve(adjacency.size());
    for (const SitePair& e : adjacency) {
        edges.push_back({e.first, e.second, model.draw(rng)});
    }
    std::vector<double> fields;
    if (with_fields) {
        fields.assign(spec.total_sites(), 0.0);
        for (int i = 0; i < spec.total_sites(); ++i) {
            if (!spec.is_broken(i)) fields[i] = model.draw(rng);
        }
    }
    return IsingInstance(spec, std::move(edges), std::move(fields), std::move(id));
}

IsingInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);

    ChimeraSpec spec;
    bool have_header = false;
    bool have_edges = false;
    long long declared_n = 0;
    std::vector<Edge> edges;
    std::vector<std::pair<int, double>> fields;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = strip_cr(raw);
        auto fail = [&](const std::string& msg) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + msg);
        };
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tok = split_ws(line);
        if (tok.empty()) continue;

        if (tok[0] == "n") {
            if (have_header) fail("duplicate header line");
            if (tok.size() != 8 || tok[2] != "rows" || tok[4] != "cols" || tok[6] != "half") {
                fail("header must be 'n <sites> rows <r> cols <c> half <k>'");
            }
            declared_n = parse_int(tok[1], "site count");
            spec.rows = static_cast<int>(parse_int(tok[3], "rows"));
            spec.cols = static_cast<int>(parse_int(tok[5], "cols"));
            spec.half = static_cast<int>(parse_int(tok[7], "half"));
            spec.validate();
            if (declared_n != spec.total_sites()) fail("site count does not match rows*cols*2*half");
            have_header = true;
        } else if (tok[0] == "broken") {
            if (!have_header) fail("'broken' before header");
            if (have_edges) fail("'broken' must precede edges");
            for (std::size_t t = 1; t < tok.size(); ++t) {
                long long site = parse_int(tok[t], "broken site");
                if (site < 0 || site >= declared_n) fail("broken site out of range");
                if (!spec.broken.insert(static_cast<int>(site)).second) fail("duplicate broken site");
            }
        } else if (tok[0] == "field") {
            if (!have_header) fail("'field' before header");
            if (tok.size() != 3) fail("field line must be 'field <site> <h>'");
            int site = static_cast<int>(parse_int(tok[1], "field site"));
            double h = parse_double(tok[2], "field value");
            for (const auto& f : fields) {
                if (f.first == site) fail("duplicate field line for site " + std::to_string(site));
            }
            fields.emplace_back(site, h);
        } else {
            if (!have_header) fail("edge before header");
            if (tok.size() != 3) fail("edge line must be '<i> <j> <J>'");
            Edge e;
            e.i = static_cast<int>(parse_int(tok[0], "edge endpoint"));
            e.j = static_cast<int>(parse_int(tok[1], "edge endpoint"));
            e.coupling = parse_double(tok[2], "coupling");
            edges.push_back(e);
            have_edges = true;
        }
    }
    if (!have_header) throw std::invalid_argument(path + ": missing header line");

    std::vector<double> h;
    if (!fields.empty()) {
        h.assign(spec.total_sites(), 0.0);
        for (const auto& f : fields) {
            if (f.first < 0 || f.first >= spec.total_sites()) {
                throw std::invalid_argument(path + ": field site out of range");
            }
            h[f.first] = f.second;
        }
    }
    // IsingInstance validates adjacency membership, duplicates, broken
    // endpoints and value ranges.
    return IsingInstance(spec, std::move(edges), std::move(h), path_stem(path));
}

void write_instance(const IsingInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    const ChimeraSpec& g = inst.geometry();
    out << "# chimera ising instance\n";
    out << "n " << g.total_sites() << " rows " << g.rows << " cols " << g.cols << " half "
        << g.half << "\n";
    if (!g.broken.empty()) {
        out << "broken";
        for (int site : g.broken) out << ' ' << site;
        out << "\n";
    }
    for (const Edge& e : inst.edges()) {
        out << e.i << ' ' << e.j << ' ' << format_double(e.coupling) << "\n";
    }
    if (inst.has_fields()) {
        for (int i = 0; i < inst.n(); ++i) {
            if (inst.fields()[i] != 0.0) {
                out << "field " << i << ' ' << format_double(inst.fields()[i]) << "\n";
            }
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace svmc
