// Problem instance: a loop-free multigraph with per-node capacities.
//
// Two kinds share the representation. For a channel instance the capacity is
// the card count C_v and a global channel count C_G is present; for a
// migration instance the capacity is the per-round transfer limit c_v.
// Node and edge order is file/insertion order and is the tie-break order used
// by every deterministic algorithm in the library.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromaflux/errors.hpp"

namespace chromaflux {

enum class ProblemKind { Channel, Migration };

struct Node {
    std::string id;
    int capacity = 1;  // C_v (channel) or c_v (migration)
};

struct Edge {
    std::string id;
    int u = -1;  // node indices, u != v (self-loops are rejected at parse)
    int v = -1;
};

class Instance {
public:
    Instance(ProblemKind kind, std::vector<Node> nodes, std::vector<Edge> edges,
             int global_channels = 0)
        : kind_(kind),
          nodes_(std::move(nodes)),
          edges_(std::move(edges)),
          global_channels_(global_channels) {
        validate();
        build_adjacency();
    }

    ProblemKind kind() const { return kind_; }
    bool is_channel() const { return kind_ == ProblemKind::Channel; }

    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const Node& node(int i) const { return nodes_[i]; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    int global_channels() const { return global_channels_; }
    int capacity(int v) const { return nodes_[v].capacity; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    // Incident edge indices, ascending. Parallel edges appear once per copy.
    const std::vector<int>& incident(int v) const { return adj_[v]; }

    int other_end(int e, int v) const {
        const Edge& ed = edges_[e];
        return ed.u == v ? ed.v : ed.u;
    }

    std::optional<int> node_index(const std::string& id) const {
        auto it = node_by_id_.find(id);
        if (it == node_by_id_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<int> edge_index(const std::string& id) const {
        auto it = edge_by_id_.find(id);
        if (it == edge_by_id_.end()) return std::nullopt;
        return it->second;
    }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < num_nodes(); ++v) d = std::max(d, degree(v));
        return d;
    }

    // Common card count k when every node has the same capacity.
    std::optional<int> homogeneous_k() const {
        if (nodes_.empty()) return std::nullopt;
        int k = nodes_[0].capacity;
        for (const Node& n : nodes_)
            if (n.capacity != k) return std::nullopt;
        return k;
    }

    bool has_parallel_edges() const {
        std::vector<std::pair<int, int>> seen;
        seen.reserve(edges_.size());
        for (const Edge& e : edges_)
            seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
        std::sort(seen.begin(), seen.end());
        return std::adjacent_find(seen.begin(), seen.end()) != seen.end();
    }

private:
    void validate() {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            if (n.id.empty()) throw InputError("node with empty id");
            if (n.capacity < 1)
                throw InputError("node " + n.id + ": capacity must be >= 1");
            if (!node_by_id_.emplace(n.id, static_cast<int>(i)).second)
                throw InputError("duplicate node id " + n.id);
        }
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (e.id.empty()) throw InputError("edge with empty id");
            if (e.u < 0 || e.u >= num_nodes() || e.v < 0 || e.v >= num_nodes())
                throw InputError("edge " + e.id + ": endpoint out of range");
            if (e.u == e.v) throw InputError("edge " + e.id + ": self-loops are not allowed");
            if (!edge_by_id_.emplace(e.id, static_cast<int>(i)).second)
                throw InputError("duplicate edge id " + e.id);
        }
        if (kind_ == ProblemKind::Channel) {
            if (global_channels_ < 1) throw InputError("channel count C_G must be >= 1");
            for (const Node& n : nodes_)
                if (n.capacity > global_channels_)
                    throw InputError("node " + n.id + ": C_v exceeds C_G");
        }
    }

    void build_adjacency() {
        adj_.assign(nodes_.size(), {});
        for (int e = 0; e < num_edges(); ++e) {
            adj_[edges_[e].u].push_back(e);
            adj_[edges_[e].v].push_back(e);
        }
    }

    ProblemKind kind_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    int global_channels_;
    std::vector<std::vector<int>> adj_;
    std::map<std::string, int> node_by_id_;
    std::map<std::string, int> edge_by_id_;
};

// Convenience builders used by tests and generators. Node ids are v0..v{n-1},
// edge ids are 1-based positions.
inline Instance make_channel_instance(int n, const std::vector<std::pair<int, int>>& edge_list,
                                      int card, int global_channels = 0) {
    std::vector<Node> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back({"v" + std::to_string(i), card});
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edge_list.size(); ++i)
        edges.push_back({std::to_string(i + 1), edge_list[i].first, edge_list[i].second});
    if (global_channels == 0) global_channels = card;
    return Instance(ProblemKind::Channel, std::move(nodes), std::move(edges), global_channels);
}

inline Instance make_migration_instance(int n, const std::vector<std::pair<int, int>>& edge_list,
                                        const std::vector<int>& caps) {
    std::vector<Node> nodes;
    for (int i = 0; i < n; ++i)
        nodes.push_back({"v" + std::to_string(i), caps[i % caps.size()]});
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edge_list.size(); ++i)
        edges.push_back({std::to_string(i + 1), edge_list[i].first, edge_list[i].second});
    return Instance(ProblemKind::Migration, std::move(nodes), std::move(edges));
}

}  // namespace chromaflux
