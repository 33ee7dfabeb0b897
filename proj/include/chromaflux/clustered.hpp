// Extended greedy for instances whose card counts are all 1 or k. Vertices
// with one card force every incident edge onto a single color, and
// 1-card vertices connected through 1-card paths (clusters) transitively
// share that color. Each cluster picks the color minimizing the conflicts it
// forces on k-card neighbors; the remaining edges run through the plain
// greedy rule.
#pragma once

#include <vector>

#include "chromaflux/errors.hpp"
#include "chromaflux/greedy.hpp"
#include "chromaflux/instance.hpp"

namespace chromaflux {

struct ClusterDecomposition {
    // Clusters in ascending order of their smallest vertex; members ascending.
    std::vector<std::vector<int>> clusters;
    std::vector<int> cluster_of;                    // -1 for k-card vertices
    std::vector<std::vector<int>> internal_edges;   // both endpoints in the cluster
    std::vector<std::vector<int>> boundary_edges;   // one endpoint in the cluster
    std::vector<int> free_edges;                    // both endpoints k-card
};

namespace detail {

inline void require_two_level(const Instance& inst, int k) {
    if (!inst.is_channel()) throw InputError("channel instance required");
    if (k < 1) throw InputError("k must be >= 1");
    if (k > inst.global_channels()) throw InputError("k exceeds the global channel count");
    for (int v = 0; v < inst.num_nodes(); ++v)
        if (inst.capacity(v) != 1 && inst.capacity(v) != k)
            throw InputError("node " + inst.node(v).id + ": card count must be 1 or " +
                             std::to_string(k));
}

}  // namespace detail

inline ClusterDecomposition find_clusters(const Instance& inst, int k) {
    detail::require_two_level(inst, k);
    ClusterDecomposition dec;
    dec.cluster_of.assign(inst.num_nodes(), -1);
    for (int v = 0; v < inst.num_nodes(); ++v) {
        if (inst.capacity(v) != 1 || dec.cluster_of[v] != -1) continue;
        int id = static_cast<int>(dec.clusters.size());
        std::vector<int> stack{v}, members;
        dec.cluster_of[v] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (int e : inst.incident(x)) {
                int y = inst.other_end(e, x);
                if (inst.capacity(y) == 1 && dec.cluster_of[y] == -1) {
                    dec.cluster_of[y] = id;
                    stack.push_back(y);
                }
            }
        }
        std::sort(members.begin(), members.end());
        dec.clusters.push_back(std::move(members));
    }
    dec.internal_edges.resize(dec.clusters.size());
    dec.boundary_edges.resize(dec.clusters.size());
    for (int e = 0; e < inst.num_edges(); ++e) {
        int cu = dec.cluster_of[inst.edge(e).u];
        int cv = dec.cluster_of[inst.edge(e).v];
        if (cu == -1 && cv == -1) {
            dec.free_edges.push_back(e);
        } else if (cu != -1 && cv != -1) {
            internal_check(cu == cv, "1-card endpoints in different clusters");
            dec.internal_edges[cu].push_back(e);
        } else {
            dec.boundary_edges[cu != -1 ? cu : cv].push_back(e);
        }
    }
    return dec;
}

inline std::vector<int> extended_greedy(const Instance& inst, int k) {
    ClusterDecomposition dec = find_clusters(inst, k);
    std::vector<int> color(inst.num_edges(), 0);
    // cnt[v*(k+1)+c]: already-colored incident edges of color c at v
    std::vector<long long> cnt(static_cast<std::size_t>(inst.num_nodes()) * (k + 1), 0);
    auto paint = [&](int e, int c) {
        color[e] = c;
        ++cnt[static_cast<std::size_t>(inst.edge(e).u) * (k + 1) + c];
        ++cnt[static_cast<std::size_t>(inst.edge(e).v) * (k + 1) + c];
    };

    for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
        int chosen = 1;
        if (!dec.boundary_edges[i].empty()) {
            long long best = 0;
            for (int c = 1; c <= k; ++c) {
                long long forced = 0;
                for (int e : dec.boundary_edges[i]) {
                    int u = inst.edge(e).u;
                    int hub = dec.cluster_of[u] == -1 ? u : inst.edge(e).v;
                    forced += cnt[static_cast<std::size_t>(hub) * (k + 1) + c];
                }
                if (c == 1 || forced < best) {
                    best = forced;
                    chosen = c;
                }
            }
        }
        for (int e : dec.internal_edges[i]) paint(e, chosen);
        for (int e : dec.boundary_edges[i]) paint(e, chosen);
    }

    // Remaining edges: plain greedy rule over both endpoints' counts.
    for (int e : dec.free_edges) {
        const Edge& ed = inst.edge(e);
        int chosen = 1;
        long long best = 0;
        for (int c = 1; c <= k; ++c) {
            long long n_ce = cnt[static_cast<std::size_t>(ed.u) * (k + 1) + c] +
                             cnt[static_cast<std::size_t>(ed.v) * (k + 1) + c];
            if (c == 1 || n_ce < best) {
                best = n_ce;
                chosen = c;
            }
        }
        paint(e, chosen);
    }
    return color;
}

}  // namespace chromaflux
