// Optimal migration scheduling when every transfer constraint c_v is even.
// Pad the multigraph so node v has degree exactly c_v * Delta' (loops, then
// one pairing edge per odd-deficiency node), walk an Euler cycle, orient each
// edge by its traversal direction, and peel off Delta' bipartite subgraphs in
// which every node sends and receives exactly c_v/2 transfers. Each peel is a
// round, so the schedule meets the trivial lower bound Delta' = max ceil(d_v/c_v).
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "chromaflux/bounds.hpp"
#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"
#include "chromaflux/max_flow.hpp"

namespace chromaflux {

struct PaddedGraph {
    int delta_prime = 0;
    // Dummy edges appended after the instance's real edges; loops allowed.
    std::vector<std::pair<int, int>> dummies;
    int real_edges = 0;
    int total_edges() const { return real_edges + static_cast<int>(dummies.size()); }
};

// One directed arc u_out -> v_in per padded edge, in Euler-traversal order.
struct OrientedBipartite {
    struct Arc {
        int edge;  // index into the padded edge list
        int from;
        int to;
    };
    std::vector<Arc> arcs;
};

namespace detail {

inline void require_even_caps(const Instance& inst) {
    if (inst.is_channel()) throw InputError("migration instance required");
    for (int v = 0; v < inst.num_nodes(); ++v)
        if (inst.capacity(v) % 2 != 0)
            throw InputError("node " + inst.node(v).id + ": transfer constraint must be even");
}

inline std::pair<int, int> padded_endpoints(const Instance& inst, const PaddedGraph& pg, int e) {
    if (e < pg.real_edges) return {inst.edge(e).u, inst.edge(e).v};
    return pg.dummies[e - pg.real_edges];
}

}  // namespace detail

inline PaddedGraph pad_graph(const Instance& inst) {
    detail::require_even_caps(inst);
    PaddedGraph pg;
    pg.real_edges = inst.num_edges();
    pg.delta_prime = migration_lower_bounds(inst).lb1;
    if (pg.delta_prime == 0) return pg;

    std::vector<int> odd;  // nodes one short of their target degree
    for (int v = 0; v < inst.num_nodes(); ++v) {
        int deficiency = inst.capacity(v) * pg.delta_prime - inst.degree(v);
        internal_check(deficiency >= 0, "degree exceeds c_v * Delta'");
        for (int i = 0; i < deficiency / 2; ++i) pg.dummies.emplace_back(v, v);
        if (deficiency % 2 != 0) odd.push_back(v);
    }
    // Targets are even, so the odd-deficiency nodes are the odd-degree nodes:
    // evenly many by the handshake count. Pair them in ascending order.
    internal_check(odd.size() % 2 == 0, "odd number of deficient nodes");
    for (std::size_t i = 0; i + 1 < odd.size(); i += 2) pg.dummies.emplace_back(odd[i], odd[i + 1]);
    return pg;
}

// Hierholzer per connected component; loops traverse v -> v.
inline OrientedBipartite euler_orientation(const Instance& inst, const PaddedGraph& pg) {
    int n = inst.num_nodes();
    int m = pg.total_edges();
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (edge, other end)
    for (int e = 0; e < m; ++e) {
        auto [u, v] = detail::padded_endpoints(inst, pg, e);
        adj[u].emplace_back(e, v);
        adj[v].emplace_back(e, u);  // loops get two entries at one node
    }
    for (int v = 0; v < n; ++v)
        internal_check(adj[v].size() % 2 == 0, "padded degree is odd");

    OrientedBipartite h;
    std::vector<char> used(m, 0);
    std::vector<std::size_t> ptr(n, 0);
    for (int start = 0; start < n; ++start) {
        if (ptr[start] >= adj[start].size()) continue;
        // (vertex, edge used to arrive; -1 at the root)
        std::vector<std::pair<int, int>> stack{{start, -1}}, circuit;
        while (!stack.empty()) {
            int x = stack.back().first;
            while (ptr[x] < adj[x].size() && used[adj[x][ptr[x]].first]) ++ptr[x];
            if (ptr[x] == adj[x].size()) {
                circuit.push_back(stack.back());
                stack.pop_back();
            } else {
                auto [e, y] = adj[x][ptr[x]];
                used[e] = 1;
                stack.emplace_back(y, e);
            }
        }
        // circuit holds the closed trail reversed; walking it backwards, each
        // entry's edge is the one arriving from the entry after it.
        for (std::size_t i = circuit.size(); i > 1; --i) {
            internal_check(circuit[i - 2].second >= 0, "trail entry without an arrival edge");
            h.arcs.push_back({circuit[i - 2].second, circuit[i - 1].first, circuit[i - 2].first});
        }
    }
    internal_check(static_cast<int>(h.arcs.size()) == m, "Euler trail missed edges");
    return h;
}

// Selects arcs so each node sends and receives exactly c_v/2 of them, via a
// flow network with per-side quotas; the decomposition lemma guarantees a
// saturating flow on every peel.
inline std::vector<int> extract_cv2_matching(const Instance& inst, const OrientedBipartite& h,
                                             const std::vector<char>& removed) {
    int n = inst.num_nodes();
    int source = 2 * n, sink = 2 * n + 1;
    MaxFlow flow(2 * n + 2);
    long long quota = 0;
    for (int v = 0; v < n; ++v) {
        flow.add_edge(source, v, inst.capacity(v) / 2);
        flow.add_edge(n + v, sink, inst.capacity(v) / 2);
        quota += inst.capacity(v) / 2;
    }
    std::vector<int> handle(h.arcs.size(), -1);
    for (std::size_t i = 0; i < h.arcs.size(); ++i) {
        if (removed[i]) continue;
        handle[i] = flow.add_edge(h.arcs[i].from, n + h.arcs[i].to, 1);
    }
    long long pushed = flow.run(source, sink);
    internal_check(pushed == quota, "matching extraction fell short of the quota");
    std::vector<int> picked;
    for (std::size_t i = 0; i < h.arcs.size(); ++i)
        if (handle[i] != -1 && flow.flow_on(handle[i]) == 1) picked.push_back(static_cast<int>(i));
    return picked;
}

struct EvenTrace {
    PaddedGraph padded;
    OrientedBipartite oriented;
    std::vector<std::vector<int>> matchings;  // arc indices per round
};

inline std::vector<std::vector<int>> schedule_even(const Instance& inst,
                                                   EvenTrace* trace = nullptr) {
    PaddedGraph pg = pad_graph(inst);
    if (trace) trace->padded = pg;
    if (pg.delta_prime == 0) return {};
    OrientedBipartite h = euler_orientation(inst, pg);
    if (trace) trace->oriented = h;

    std::vector<char> removed(h.arcs.size(), 0);
    std::vector<std::vector<int>> rounds(pg.delta_prime);
    for (int r = 0; r < pg.delta_prime; ++r) {
        std::vector<int> picked = extract_cv2_matching(inst, h, removed);
        if (trace) trace->matchings.push_back(picked);
        for (int i : picked) {
            removed[i] = 1;
            if (h.arcs[i].edge < pg.real_edges) rounds[r].push_back(h.arcs[i].edge);
        }
    }
    for (std::size_t i = 0; i < removed.size(); ++i)
        internal_check(removed[i], "arc left unscheduled after all peels");
    return rounds;
}

}  // namespace chromaflux
