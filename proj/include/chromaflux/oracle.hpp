// Exhaustive-search oracles, used to pin expected values in tests and to
// measure approximation gaps on small instances.
//
// Both searches are deterministic branch-and-bound over declaration order and
// return the lexicographically least witness. Work is capped by OracleLimits;
// past the cap the oracle reports TooLarge instead of guessing (the node
// budget is a deterministic stand-in for a wall-clock budget).
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "chromaflux/bounds.hpp"
#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"

namespace chromaflux {

struct OracleLimits {
    int max_edges = 10;
    int max_colors = 4;
    long long max_nodes = 200000000;  // search-tree nodes
};

enum class OracleStatus { Exact, TooLarge, BudgetExceeded };

struct ConflictOracleResult {
    OracleStatus status = OracleStatus::Exact;
    long long value = 0;
    std::vector<int> witness;  // per-edge colors
};

struct RoundsOracleResult {
    OracleStatus status = OracleStatus::Exact;
    int value = 0;
    std::vector<std::vector<int>> witness;  // edge indices per round
};

namespace detail {

// Edges forced to share a color because they touch a common C_v = 1 vertex
// collapse into one decision variable (cuts the search on cluster instances).
struct EdgeGroups {
    std::vector<int> group_of_edge;
    std::vector<std::vector<int>> members;  // group -> edges, ascending
};

inline EdgeGroups conflict_edge_groups(const Instance& inst) {
    int m = inst.num_edges();
    std::vector<int> parent(m);
    for (int e = 0; e < m; ++e) parent[e] = e;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int v = 0; v < inst.num_nodes(); ++v) {
        if (inst.capacity(v) != 1 || inst.incident(v).empty()) continue;
        int root = find(inst.incident(v)[0]);
        for (int e : inst.incident(v)) parent[find(e)] = root;
    }
    EdgeGroups g;
    g.group_of_edge.assign(m, -1);
    for (int e = 0; e < m; ++e) {
        int r = find(e);
        if (g.group_of_edge[r] == -1) {
            g.group_of_edge[r] = static_cast<int>(g.members.size());
            g.members.emplace_back();
        }
        g.group_of_edge[e] = g.group_of_edge[r];
        g.members[g.group_of_edge[r]].push_back(e);
    }
    for (auto& mem : g.members) std::sort(mem.begin(), mem.end());
    return g;
}

}  // namespace detail

// Minimum CF_G over all assignments with colors in {1..k} that respect every
// per-node card count. The first decision variable is pinned to color 1
// (color-permutation symmetry; exactness is preserved because capacities and
// the objective are color-blind).
inline ConflictOracleResult min_conflicts_exact(const Instance& inst, int k,
                                                const OracleLimits& limits = {}) {
    if (!inst.is_channel()) throw InputError("conflict oracle needs a channel instance");
    if (k < 1) throw InputError("k must be >= 1");
    ConflictOracleResult res;
    if (inst.num_edges() == 0) return res;
    if (inst.num_edges() > limits.max_edges || k > limits.max_colors) {
        res.status = OracleStatus::TooLarge;
        return res;
    }

    auto groups = detail::conflict_edge_groups(inst);
    int ng = static_cast<int>(groups.members.size());
    int n = inst.num_nodes();

    // cnt[v*(k+1)+c]: edges of color c at v; distinct[v]: colors present at v
    std::vector<int> cnt(static_cast<std::size_t>(n) * (k + 1), 0);
    std::vector<int> distinct(n, 0);
    std::vector<int> group_color(ng, 0);
    std::vector<int> best_witness;
    long long best = -1;
    long long nodes = 0;
    bool budget_hit = false;

    // Color one edge; returns the CF_G increase, or -1 if v's card count
    // would be exceeded. apply=false only probes feasibility bookkeeping.
    auto place = [&](int e, int c) -> long long {
        const Edge& ed = inst.edge(e);
        for (int v : {ed.u, ed.v}) {
            if (cnt[static_cast<std::size_t>(v) * (k + 1) + c] == 0 &&
                distinct[v] + 1 > inst.capacity(v))
                return -1;
        }
        long long delta = 2;
        for (int v : {ed.u, ed.v}) {
            int& x = cnt[static_cast<std::size_t>(v) * (k + 1) + c];
            delta += 2 * x;
            if (x == 0) ++distinct[v];
            ++x;
        }
        return delta;
    };
    auto unplace = [&](int e, int c) {
        const Edge& ed = inst.edge(e);
        for (int v : {ed.u, ed.v}) {
            int& x = cnt[static_cast<std::size_t>(v) * (k + 1) + c];
            --x;
            if (x == 0) --distinct[v];
        }
    };

    long long edges_left_total = inst.num_edges();

    auto dfs = [&](auto&& self, int gi, long long partial, long long edges_left) -> void {
        if (budget_hit) return;
        if (++nodes > limits.max_nodes) {
            budget_hit = true;
            return;
        }
        if (gi == ng) {
            if (best < 0 || partial < best) {
                best = partial;
                best_witness.resize(inst.num_edges());
                for (int e = 0; e < inst.num_edges(); ++e)
                    best_witness[e] = group_color[groups.group_of_edge[e]];
            }
            return;
        }
        // every remaining edge contributes at least 2
        if (best >= 0 && partial + 2 * edges_left >= best) return;
        int cmax = (gi == 0) ? 1 : k;  // symmetry pinning
        const auto& mem = groups.members[gi];
        for (int c = 1; c <= cmax; ++c) {
            long long delta = 0;
            std::size_t placed = 0;
            bool ok = true;
            for (int e : mem) {
                long long d = place(e, c);
                if (d < 0) {
                    ok = false;
                    break;
                }
                delta += d;
                ++placed;
            }
            if (ok) {
                group_color[gi] = c;
                self(self, gi + 1, partial + delta,
                     edges_left - static_cast<long long>(mem.size()));
            }
            for (std::size_t i = placed; i > 0; --i) unplace(mem[i - 1], c);
        }
    };
    dfs(dfs, 0, 0, edges_left_total);

    if (budget_hit) {
        res.status = OracleStatus::BudgetExceeded;
        return res;
    }
    internal_check(best >= 0, "conflict oracle found no feasible assignment");
    res.value = best;
    res.witness = std::move(best_witness);
    return res;
}

// Minimum number of rounds for a migration instance: iterative deepening from
// LB1, assigning edges in declaration order. An edge may only open round
// r+1 when rounds 1..r are already in use, which kills round-permutation
// symmetry, so the first feasible schedule is the lexicographically least.
inline RoundsOracleResult min_rounds_exact(const Instance& inst,
                                           const OracleLimits& limits = {}) {
    if (inst.is_channel()) throw InputError("rounds oracle needs a migration instance");
    RoundsOracleResult res;
    int m = inst.num_edges();
    if (m == 0) return res;
    if (m > limits.max_edges) {
        res.status = OracleStatus::TooLarge;
        return res;
    }

    int lb1 = migration_lower_bounds(inst).lb1;
    long long nodes = 0;
    for (int r_total = std::max(lb1, 1); r_total <= m; ++r_total) {
        std::vector<std::vector<int>> load(r_total, std::vector<int>(inst.num_nodes(), 0));
        std::vector<int> round_of(m, -1);
        bool budget_hit = false;

        auto dfs = [&](auto&& self, int e, int rounds_used) -> bool {
            if (budget_hit) return false;
            if (++nodes > limits.max_nodes) {
                budget_hit = true;
                return false;
            }
            if (e == m) return true;
            const Edge& ed = inst.edge(e);
            int rmax = std::min(r_total - 1, rounds_used);
            for (int r = 0; r <= rmax; ++r) {
                if (load[r][ed.u] >= inst.capacity(ed.u)) continue;
                if (load[r][ed.v] >= inst.capacity(ed.v)) continue;
                ++load[r][ed.u];
                ++load[r][ed.v];
                round_of[e] = r;
                if (self(self, e + 1, std::max(rounds_used, r + 1))) return true;
                round_of[e] = -1;
                --load[r][ed.u];
                --load[r][ed.v];
            }
            return false;
        };
        if (dfs(dfs, 0, 0)) {
            res.value = r_total;
            res.witness.assign(r_total, {});
            for (int e = 0; e < m; ++e) res.witness[round_of[e]].push_back(e);
            // drop trailing empty rounds (r_total may exceed what was needed
            // only on the first feasible depth, but stay defensive)
            while (!res.witness.empty() && res.witness.back().empty()) res.witness.pop_back();
            res.value = static_cast<int>(res.witness.size());
            return res;
        }
        if (budget_hit) {
            res.status = OracleStatus::BudgetExceeded;
            return res;
        }
    }
    throw InternalError("rounds oracle: no schedule with <= |E| rounds");
}

}  // namespace chromaflux
