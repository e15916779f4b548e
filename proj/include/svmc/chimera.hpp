#pragma once

#include <set>
#include <utility>
#include <vector>

namespace svmc {

using SitePair = std::pair<int, int>;

/// Chimera topology: a rows x cols grid of complete-bipartite K_{half,half}
/// unit cells. Left-block qubits couple vertically to the matching qubit in
/// the cells above and below; right-block qubits couple horizontally.
///
/// Site indexing is cell-major (row-major over cells); within a cell the
/// left block occupies offsets [0, half) and the right block [half, 2*half).
/// Instance files depend on this scheme, so it must not change.
struct ChimeraSpec {
    int rows = 1;
    int cols = 1;
    int half = 4;          // qubits per side of each cell
    std::set<int> broken;  // inactive sites, removed from all couplings

    int total_sites() const { return rows * cols * 2 * half; }
    int active_count() const { return total_sites() - static_cast<int>(broken.size()); }
    bool is_broken(int site) const { return broken.count(site) != 0; }

    /// Site index of cell (r, c), side 0 = left block / 1 = right block,
    /// offset k in [0, half).
    int site_at(int r, int c, int side, int k) const {
        return ((r * cols + c) * 2 + side) * half + k;
    }

    /// Throws std::invalid_argument on non-positive dimensions or broken
    /// indices outside [0, total_sites()).
    void validate() const;

    bool operator==(const ChimeraSpec&) const = default;
};

/// Edge list of the Chimera graph for `spec`: intra-cell bipartite edges plus
/// inter-cell vertical (left) and horizontal (right) couplers. Edges touching
/// broken sites are removed. Pairs have i < j and are sorted.
std::vector<SitePair> build_chimera(const ChimeraSpec& spec);

}  // namespace svmc
