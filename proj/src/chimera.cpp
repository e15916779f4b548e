#include "svmc/chimera.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace svmc {

void ChimeraSpec::validate() const {
    if (rows < 1 || cols < 1 || half < 1) {
        throw std::invalid_argument("ChimeraSpec: rows, cols and half must be >= 1");
    }
    for (int site : broken) {
        if (site < 0 || site >= total_sites()) {
            throw std::invalid_argument("ChimeraSpec: broken site " + std::to_string(site) +
                                        " out of range [0, " + std::to_string(total_sites()) + ")");
        }
    }
}

std::vector<SitePair> build_chimera(const ChimeraSpec& spec) {
    spec.validate();
    std::vector<SitePair> edges;
    edges.reserve(static_cast<std::size_t>(spec.rows) * spec.cols * spec.half * (spec.half + 2));

    auto add = [&](int i, int j) {
        if (spec.is_broken(i) || spec.is_broken(j)) return;
        if (i > j) std::swap(i, j);
        edges.emplace_back(i, j);
    };

    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            // intra-cell complete bipartite block
            for (int a = 0; a < spec.half; ++a) {
                for (int b = 0; b < spec.half; ++b) {
                    add(spec.site_at(r, c, 0, a), spec.site_at(r, c, 1, b));
                }
            }
            // left block couples vertically, right block horizontally
            if (r + 1 < spec.rows) {
                for (int k = 0; k < spec.half; ++k) {
                    add(spec.site_at(r, c, 0, k), spec.site_at(r + 1, c, 0, k));
                }
            }
            if (c + 1 < spec.cols) {
                for (int k = 0; k < spec.half; ++k) {
                    add(spec.site_at(r, c, 1, k), spec.site_at(r, c + 1, 1, k));
                }
            }
        }
    }

    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace svmc
