// Proper edge coloring of a simple graph with at most max-degree + 1 colors,
// realized as balanced insertion with k = Delta + 1: every m_v is then 0, so
// class sizes are capped at 1 and "balanced" collapses to "proper".
#pragma once

#include <vector>

#include "chromaflux/balanced.hpp"
#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"

namespace chromaflux {

struct VizingResult {
    int palette = 0;              // Delta + 1 (0 when there are no edges)
    std::vector<int> color;       // per-edge colors in {1..palette}
};

inline VizingResult vizing_color(const Instance& inst) {
    if (inst.has_parallel_edges())
        throw InputError("proper coloring with Delta+1 colors requires a simple graph");
    VizingResult res;
    if (inst.num_edges() == 0) return res;
    res.palette = inst.max_degree() + 1;
    BalancedState st(inst, res.palette);
    for (int e = 0; e < inst.num_edges(); ++e) balanced_color_edge(st, e);
    // With k = Delta + 1 balancedness means properness; recount to be sure.
    for (int v = 0; v < inst.num_nodes(); ++v)
        for (int c = 1; c <= res.palette; ++c)
            internal_check(st.class_size(v, c) <= 1, "coloring is not proper");
    res.color = st.colors();
    return res;
}

}  // namespace chromaflux
