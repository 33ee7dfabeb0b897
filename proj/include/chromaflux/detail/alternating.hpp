// Shared alternating-walk search. Both the balanced channel algorithm and the
// general migration scheduler re-color along walks whose edges alternate
// between two colors and whose endpoints satisfy missing-color conditions;
// the only difference between the two callers is what "missing" means, so the
// state is a template parameter exposing
//     int  color_of(int edge) const;      // 0 = uncolored
//     bool missing(int vertex, int color) const;
#pragma once

#include <optional>
#include <vector>

#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"

namespace chromaflux::detail {

struct WalkOptions {
    int forbidden_end = -1;  // vertex the walk may pass through but not end at
    int target_end = -1;     // when >= 0, the walk must end exactly here
    // Edges the walk may traverse but not end on (indexed by edge). Used-marks
    // go here: a used edge must never become the uncolor target again, but it
    // is still an ordinary colored edge for the walk to pass through.
    const std::vector<char>* forbidden_last = nullptr;
    // When set, the walk must contain a vertex w with (*known)[w] == 0
    // (orbit growth wants a vertex outside the current orbit).
    const std::vector<char>* known = nullptr;
    bool require_new_vertex = false;
    // Accept a stop vertex that is missing the arrival color too. Flipping is
    // valid as long as the partner color is missing at the stop (the arriving
    // edge only vacates a slot there); the stricter default additionally
    // demands the arrival color saturated, which is automatic at capacity one
    // but can be unsatisfiable when capacities exceed one.
    bool allow_missing_arrival = false;
    long long max_steps = 1LL << 22;
};

// Finds a walk from `start` whose first edge is colored `a` and whose colors
// then alternate a,b,a,... Each edge is traversed at most once (walks may
// revisit vertices). The walk may stop at vertex z reached via color x with
// partner color y only when
//     z != start, z missing y, z not missing x,
// plus the endpoint constraints in `opt`. The search is a deterministic
// depth-first enumeration of all such walks — lowest edge index first — and
// returns the first one that may stop, or nullopt if none exists.
//
// Precondition (checked): start is missing b and not missing a.
template <class State>
std::optional<std::vector<int>> find_alternating_walk(const Instance& inst, const State& st,
                                                      int start, int a, int b,
                                                      const WalkOptions& opt = {}) {
    internal_check(a >= 1 && b >= 1 && a != b, "walk colors must be distinct and positive");
    internal_check(st.missing(start, b) && !st.missing(start, a),
                   "walk start violates the endpoint condition");

    std::vector<char> visited(inst.num_edges(), 0);
    std::vector<int> path;
    long long steps = 0;
    int new_vertices = 0;  // vertices on the path with (*opt.known)[v] == 0

    auto is_new = [&](int v) { return opt.known && !(*opt.known)[v]; };

    // cur was reached via color x; the next edge (if any) has color y.
    auto dfs = [&](auto&& self, int cur, int x, int y) -> bool {
        if (++steps > opt.max_steps)
            throw InternalError("alternating-walk search budget exceeded");
        if (!path.empty() && cur != start && cur != opt.forbidden_end &&
            (opt.target_end < 0 || cur == opt.target_end) &&
            (!opt.forbidden_last || !(*opt.forbidden_last)[path.back()]) &&
            (!opt.require_new_vertex || new_vertices > 0) && st.missing(cur, y) &&
            (opt.allow_missing_arrival || !st.missing(cur, x)))
            return true;
        for (int e : inst.incident(cur)) {
            if (visited[e] || st.color_of(e) != y) continue;
            int nxt = inst.other_end(e, cur);
            visited[e] = 1;
            path.push_back(e);
            if (is_new(nxt)) ++new_vertices;
            if (self(self, nxt, y, x)) return true;
            if (is_new(nxt)) --new_vertices;
            path.pop_back();
            visited[e] = 0;
        }
        return false;
    };

    // Seed the recursion: "reached start via b" makes the first edge color a.
    if (dfs(dfs, start, b, a)) return path;
    return std::nullopt;
}

}  // namespace chromaflux::detail
