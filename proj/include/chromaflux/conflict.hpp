// Conflict metric and solution validators.
//
// For an edge e = (u,v), CF_e(v) is the number of edges at v sharing e's
// color, e itself included. The instance-wide objective
//     CF_G = sum over edges of CF_e(u) + CF_e(v)
// counts every conflicting pair twice and equals the sum over vertices of the
// squared color-class sizes. CF_G >= 2|E| with equality iff the coloring is
// proper.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"

namespace chromaflux {

struct ConflictReport {
    long long total = 0;                  // CF_G
    std::vector<long long> per_vertex;    // sum of squared class sizes at v
    std::vector<long long> per_edge;      // CF_e(u) + CF_e(v)
    long long excess() const { return total - 2 * static_cast<long long>(per_edge.size()); }
};

// `color[e]` must be a total assignment with colors >= 1.
inline ConflictReport conflict_report(const Instance& inst, const std::vector<int>& color) {
    if (static_cast<int>(color.size()) != inst.num_edges())
        throw InputError("assignment size does not match edge count");
    for (int e = 0; e < inst.num_edges(); ++e)
        if (color[e] < 1)
            throw InputError("edge " + inst.edge(e).id + " is uncolored or has color < 1");

    ConflictReport rep;
    rep.per_vertex.assign(inst.num_nodes(), 0);
    rep.per_edge.assign(inst.num_edges(), 0);

    // class_count[v] : color -> multiplicity at v
    std::vector<std::map<int, int>> class_count(inst.num_nodes());
    for (int e = 0; e < inst.num_edges(); ++e) {
        ++class_count[inst.edge(e).u][color[e]];
        ++class_count[inst.edge(e).v][color[e]];
    }
    for (int v = 0; v < inst.num_nodes(); ++v)
        for (auto& [c, cnt] : class_count[v])
            rep.per_vertex[v] += static_cast<long long>(cnt) * cnt;
    for (int e = 0; e < inst.num_edges(); ++e) {
        const Edge& ed = inst.edge(e);
        rep.per_edge[e] = class_count[ed.u][color[e]] + class_count[ed.v][color[e]];
        rep.total += rep.per_edge[e];
    }
    return rep;
}

// ---- validators ---------------------------------------------------------
//
// Validators collect human-readable violations instead of throwing: the CLI
// prints them and exits 2, tests assert on emptiness.

inline std::vector<std::string> validate_assignment(const Instance& inst,
                                                    const std::vector<int>& color) {
    std::vector<std::string> out;
    if (static_cast<int>(color.size()) != inst.num_edges()) {
        out.push_back("assignment size does not match edge count");
        return out;
    }
    if (!inst.is_channel()) {
        out.push_back("assignments apply to channel instances only");
        return out;
    }
    std::vector<int> global_colors;
    for (int e = 0; e < inst.num_edges(); ++e) {
        if (color[e] < 1 || color[e] > inst.global_channels())
            out.push_back("edge " + inst.edge(e).id + ": color " + std::to_string(color[e]) +
                          " outside [1, " + std::to_string(inst.global_channels()) + "]");
        global_colors.push_back(color[e]);
    }
    std::sort(global_colors.begin(), global_colors.end());
    global_colors.erase(std::unique(global_colors.begin(), global_colors.end()),
                        global_colors.end());
    if (static_cast<int>(global_colors.size()) > inst.global_channels())
        out.push_back("more than C_G = " + std::to_string(inst.global_channels()) +
                      " distinct colors used globally");
    for (int v = 0; v < inst.num_nodes(); ++v) {
        std::vector<int> local;
        for (int e : inst.incident(v)) local.push_back(color[e]);
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        if (static_cast<int>(local.size()) > inst.capacity(v))
            out.push_back("node " + inst.node(v).id + ": " + std::to_string(local.size()) +
                          " distinct colors exceed C_v = " + std::to_string(inst.capacity(v)));
    }
    return out;
}

// A schedule is a partition of the edge set into rounds; in each round a node
// may touch at most c_v edges.
inline std::vector<std::string> validate_schedule(const Instance& inst,
                                                  const std::vector<std::vector<int>>& rounds) {
    std::vector<std::string> out;
    std::vector<int> seen(inst.num_edges(), 0);
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        std::vector<int> load(inst.num_nodes(), 0);
        for (int e : rounds[r]) {
            if (e < 0 || e >= inst.num_edges()) {
                out.push_back("round " + std::to_string(r + 1) + ": edge index out of range");
                continue;
            }
            ++seen[e];
            ++load[inst.edge(e).u];
            ++load[inst.edge(e).v];
        }
        for (int v = 0; v < inst.num_nodes(); ++v)
            if (load[v] > inst.capacity(v))
                out.push_back("round " + std::to_string(r + 1) + ": node " + inst.node(v).id +
                              " moves " + std::to_string(load[v]) + " > c_v = " +
                              std::to_string(inst.capacity(v)));
    }
    for (int e = 0; e < inst.num_edges(); ++e) {
        if (seen[e] == 0) out.push_back("edge " + inst.edge(e).id + " not scheduled");
        if (seen[e] > 1)
            out.push_back("edge " + inst.edge(e).id + " scheduled " + std::to_string(seen[e]) +
                          " times");
    }
    return out;
}

}  // namespace chromaflux
