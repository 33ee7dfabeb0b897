// General-case migration scheduling as capacity-relaxed edge coloring: color
// edges with at most c_v same-colored edges per node, one color per round.
//
// Phase 1 starts from a greedy partial coloring with q ~ Delta' + sqrt(Delta')
// colors and repairs the uncolored remainder through three subgraph
// structures (balancing orbits, color orbits, edge orbits). Whenever an edge
// orbit can neither be resolved nor grown, it certifies a lower-bound witness
// and the palette grows by one. Phase 2 colors the residual simple graph by
// splitting each node into c_v copies and running the proper-coloring
// subroutine per component with fresh colors.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chromaflux/bounds.hpp"
#include "chromaflux/detail/alternating.hpp"
#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"
#include "chromaflux/vizing.hpp"

namespace chromaflux {

// Partial coloring with per-node per-color counts. Colors are 1..q; 0 means
// uncolored. A color c is missing at v while fewer than c_v incident edges
// carry it: lightly missing at exactly c_v - 1, strongly missing below that.
class MigrationColoring {
  public:
    MigrationColoring(const Instance& inst, int q)
        : inst_(&inst), q_(q), color_(inst.num_edges(), 0),
          cnt_(inst.num_nodes(), std::vector<int>(q + 1, 0)) {
        internal_check(q >= 1, "palette must be positive");
    }

    const Instance& instance() const { return *inst_; }
    int q() const { return q_; }
    int color_of(int e) const { return color_[e]; }
    const std::vector<int>& colors() const { return color_; }
    int count(int v, int c) const { return cnt_[v][c]; }

    bool missing(int v, int c) const { return cnt_[v][c] < inst_->capacity(v); }
    bool lightly_missing(int v, int c) const { return cnt_[v][c] == inst_->capacity(v) - 1; }
    bool strongly_missing(int v, int c) const { return cnt_[v][c] < inst_->capacity(v) - 1; }

    void set_color(int e, int c) {
        internal_check(color_[e] == 0, "edge already colored");
        internal_check(c >= 1 && c <= q_, "color outside palette");
        const Edge& ed = inst_->edge(e);
        internal_check(missing(ed.u, c) && missing(ed.v, c), "coloring would exceed a transfer constraint");
        color_[e] = c;
        ++cnt_[ed.u][c];
        ++cnt_[ed.v][c];
    }

    void uncolor(int e) {
        internal_check(color_[e] != 0, "uncolor on an uncolored edge");
        const Edge& ed = inst_->edge(e);
        --cnt_[ed.u][color_[e]];
        --cnt_[ed.v][color_[e]];
        color_[e] = 0;
    }

    void flip(const std::vector<int>& path, int a, int b) {
        for (int e : path) {
            internal_check(color_[e] == a || color_[e] == b, "flip edge off-palette");
            int to = color_[e] == a ? b : a;
            const Edge& ed = inst_->edge(e);
            --cnt_[ed.u][color_[e]];
            --cnt_[ed.v][color_[e]];
            color_[e] = to;
            ++cnt_[ed.u][to];
            ++cnt_[ed.v][to];
        }
    }

    void grow_palette(int new_q) {
        internal_check(new_q >= q_, "palette cannot shrink");
        q_ = new_q;
        for (auto& row : cnt_) row.resize(new_q + 1, 0);
    }

  private:
    const Instance* inst_;
    int q_;
    std::vector<int> color_;
    std::vector<std::vector<int>> cnt_;
};

struct GeneralStats {
    int palette_initial = 0;
    int palette_final = 0;
    int rounds = 0;
    int witnesses_delta = 0;
    int witnesses_gamma = 0;
    int orbit_growths = 0;
    int fallbacks = 0;
    long long flips = 0;
    int bound_violations = 0;  // witness/size assertions that did not hold
    std::vector<long long> progress_history;  // 2*colored - bad after each mutation
    std::vector<std::string> log;  // one stable line per event
};

namespace detail {

// Integer floor square root (avoids platform-dependent floating point).
inline int isqrt(long long x) {
    int r = 0;
    while (static_cast<long long>(r + 1) * (r + 1) <= x) ++r;
    return r;
}

class GeneralScheduler {
  public:
    GeneralScheduler(const Instance& inst, int q0, bool strict)
        : inst_(inst), col_(inst, q0), strict_(strict), delta_prime_(migration_lower_bounds(inst).lb1) {
        stats_.palette_initial = q0;
        // Edges sharing an unordered endpoint pair, for lean/bad tests.
        std::map<std::pair<int, int>, std::vector<int>> groups;
        for (int e = 0; e < inst.num_edges(); ++e) {
            auto [u, v] = std::minmax(inst.edge(e).u, inst.edge(e).v);
            groups[{u, v}].push_back(e);
        }
        groups_storage_.reserve(groups.size());
        parallel_group_.resize(inst.num_edges());
        for (auto& [key, members] : groups) {
            groups_storage_.push_back(members);
            for (int e : members) parallel_group_[e] = &groups_storage_.back();
        }
    }

    // q0 = max(floor((1 + 1/sqrt(Delta')) * Delta') - 1, Delta'); the floor
    // form Delta' + isqrt(Delta') - 1 is exact in integers.
    static int default_palette(const Instance& inst) {
        int dp = migration_lower_bounds(inst).lb1;
        if (dp == 0) return 1;
        return std::max(dp + isqrt(dp) - 1, dp);
    }

    void initial_coloring() {
        for (int e = 0; e < inst_.num_edges(); ++e) {
            const Edge& ed = inst_.edge(e);
            for (int c = 1; c <= col_.q(); ++c) {
                if (col_.missing(ed.u, c) && col_.missing(ed.v, c)) {
                    col_.set_color(e, c);
                    break;
                }
            }
        }
        note_progress();
    }

    void eliminate_bad_edges() {
        long long episode_cap = 4LL * inst_.num_edges() + 16;
        while (true) {
            int seed = lowest_bad_edge();
            if (seed < 0) break;
            internal_check(--episode_cap > 0, "bad-edge elimination failed to terminate");
            run_episode(seed);
        }
    }

    void reduce_components() {
        long long cap = 2LL * inst_.num_edges() + 16;
        while (true) {
            bool progressed = false;
            for (const auto& comp : uncolored_components()) {
                if (resolve_balancing(comp) != Outcome::NotApplicable ||
                    resolve_color_pair(comp) != Outcome::NotApplicable) {
                    progressed = true;
                    break;
                }
            }
            if (!progressed) break;
            internal_check(--cap > 0, "component reduction failed to terminate");
        }
        // Every surviving component is a tight color orbit; the size lemma
        // bounds it by (q + 2) / (q - Delta' + 2).
        for (const auto& comp : uncolored_components()) check_size_bound(comp);
    }

    void color_residual() {
        std::vector<int> rest;
        for (int e = 0; e < inst_.num_edges(); ++e)
            if (col_.color_of(e) == 0) rest.push_back(e);
        if (rest.empty()) return;
        auto comps_before = uncolored_components();

        // Split v into c_v copies, cycling its uncolored edges across them,
        // so each copy has degree at most ceil(d_v(G0)/c_v).
        std::vector<int> offset(inst_.num_nodes() + 1, 0);
        for (int v = 0; v < inst_.num_nodes(); ++v)
            offset[v + 1] = offset[v] + inst_.capacity(v);
        std::vector<int> next_copy(inst_.num_nodes(), 0);
        auto copy_of = [&](int v) {
            int r = next_copy[v]++ % inst_.capacity(v);
            return offset[v] + r;
        };
        std::vector<std::pair<int, int>> split(rest.size());
        for (std::size_t i = 0; i < rest.size(); ++i) {
            const Edge& ed = inst_.edge(rest[i]);
            split[i] = {copy_of(ed.u), copy_of(ed.v)};
        }

        // Connected components of the split graph, colored independently
        // with the proper-coloring subroutine on a fresh color block.
        int nc = offset.back();
        std::vector<std::vector<int>> at(nc);
        for (std::size_t i = 0; i < rest.size(); ++i) {
            at[split[i].first].push_back(static_cast<int>(i));
            at[split[i].second].push_back(static_cast<int>(i));
        }
        std::vector<int> comp_of(nc, -1);
        std::vector<int> local(rest.size(), 0);
        int fresh_used = 0;
        for (int s = 0; s < nc; ++s) {
            if (comp_of[s] != -1 || at[s].empty()) continue;
            std::vector<int> verts{s}, edges;
            comp_of[s] = s;
            for (std::size_t h = 0; h < verts.size(); ++h)
                for (int i : at[verts[h]]) {
                    int o = split[i].first == verts[h] ? split[i].second : split[i].first;
                    if (comp_of[o] == -1) {
                        comp_of[o] = s;
                        verts.push_back(o);
                    }
                }
            std::sort(verts.begin(), verts.end());
            for (int v : verts)
                for (int i : at[v]) edges.push_back(i);
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

            std::vector<int> rank(nc, -1);
            for (std::size_t h = 0; h < verts.size(); ++h) rank[verts[h]] = static_cast<int>(h);
            std::vector<std::pair<int, int>> sub_edges;
            sub_edges.reserve(edges.size());
            int maxdeg = 1;
            {
                std::vector<int> deg(verts.size(), 0);
                for (int i : edges) {
                    sub_edges.emplace_back(rank[split[i].first], rank[split[i].second]);
                    maxdeg = std::max({maxdeg, ++deg[rank[split[i].first]], ++deg[rank[split[i].second]]});
                }
            }
            Instance sub = make_channel_instance(static_cast<int>(verts.size()), sub_edges, maxdeg + 1);
            VizingResult vr = vizing_color(sub);
            for (std::size_t j = 0; j < edges.size(); ++j) {
                local[edges[j]] = vr.color[j];
                fresh_used = std::max(fresh_used, vr.color[j]);
            }
        }

        int base = col_.q();
        col_.grow_palette(base + fresh_used);
        for (std::size_t i = 0; i < rest.size(); ++i) col_.set_color(rest[i], base + local[i]);
        log("phase2 components=" + std::to_string(comps_before.size()) +
            " fresh=" + std::to_string(fresh_used));
        note_progress();

        // Per-component color budget from the residual-coloring lemma:
        // at most ceil((C - 1) / min c_v) + 1 fresh colors for a component
        // of C vertices.
        for (const auto& comp : comps_before) {
            std::vector<char> in(inst_.num_nodes(), 0);
            int cmin = 0;
            for (int v : comp) {
                in[v] = 1;
                cmin = cmin == 0 ? inst_.capacity(v) : std::min(cmin, inst_.capacity(v));
            }
            std::vector<char> seen(fresh_used + 1, 0);
            int distinct = 0;
            for (std::size_t i = 0; i < rest.size(); ++i) {
                const Edge& ed = inst_.edge(rest[i]);
                if (in[ed.u] && in[ed.v] && !seen[local[i]]) {
                    seen[local[i]] = 1;
                    ++distinct;
                }
            }
            int c = static_cast<int>(comp.size());
            int budget = (c - 1 + cmin - 1) / cmin + 1;
            if (distinct > budget)
                violation("phase2-budget component=" + std::to_string(c) +
                          " used=" + std::to_string(distinct) + " budget=" + std::to_string(budget));
        }
    }

    std::vector<std::vector<int>> rounds() {
        for (int e = 0; e < inst_.num_edges(); ++e)
            internal_check(col_.color_of(e) != 0, "edge left uncolored");
        std::vector<std::vector<int>> out;
        for (int c = 1; c <= col_.q(); ++c) {
            std::vector<int> cls;
            for (int e = 0; e < inst_.num_edges(); ++e)
                if (col_.color_of(e) == c) cls.push_back(e);
            if (!cls.empty()) out.push_back(std::move(cls));
        }
        stats_.palette_final = col_.q();
        stats_.rounds = static_cast<int>(out.size());
        return out;
    }

    const MigrationColoring& coloring() const { return col_; }
    // Mutable access for fixture-style tests that stage a partial coloring
    // before driving one resolution step.
    MigrationColoring& coloring_mut() { return col_; }
    const GeneralStats& stats() const { return stats_; }
    GeneralStats& stats() { return stats_; }

    enum class Outcome { NotApplicable, Progress };

    struct Orbit {
        int seed1 = -1, seed2 = -1;
        std::vector<char> in_v, in_e;
        std::vector<int> verts;            // ascending
        std::vector<int> edges;            // insertion order
        std::vector<char> color_used;      // colors appearing in the orbit
        struct Growth {
            int anchor, x, y, a, b;
            std::vector<int> path;
        };
        std::vector<Growth> growths;
    };

    void log(std::string line) { stats_.log.push_back(std::move(line)); }

    void violation(const std::string& what) {
        ++stats_.bound_violations;
        log("violation " + what);
        if (strict_) throw InternalError("bound violated: " + what);
    }

    void note_progress() {
        long long colored = 0, bad = 0;
        for (int e = 0; e < inst_.num_edges(); ++e) {
            if (col_.color_of(e) != 0) ++colored;
            else if (is_bad(e)) ++bad;
        }
        stats_.progress_history.push_back(2 * colored - bad);
    }

    bool is_bad(int e) const {
        if (col_.color_of(e) != 0) return false;
        for (int f : *parallel_group_[e])
            if (f != e && col_.color_of(f) == 0) return true;
        return false;
    }

    bool is_lean(int e) const {
        if (col_.color_of(e) == 0) return false;
        for (int f : *parallel_group_[e])
            if (col_.color_of(f) == 0) return false;
        return true;
    }

    int lowest_bad_edge() const {
        for (int e = 0; e < inst_.num_edges(); ++e)
            if (is_bad(e)) return e;
        return -1;
    }

    std::string eid(int e) const { return inst_.edge(e).id; }
    std::string nid(int v) const { return inst_.node(v).id; }

    // Colors an edge with a brand-new color when a constructive lemma failed.
    // Never expected; fatal in strict mode.
    void fallback(int e, const std::string& reason) {
        if (strict_) throw InternalError("fallback (" + reason + ") on edge " + eid(e));
        ++stats_.fallbacks;
        col_.grow_palette(col_.q() + 1);
        col_.set_color(e, col_.q());
        log("fallback reason=" + reason + " edge=" + eid(e) + " q=" + std::to_string(col_.q()));
        note_progress();
    }

    // Connected components of the subgraph of uncolored edges: sorted vertex
    // lists, ordered by smallest member.
    std::vector<std::vector<int>> uncolored_components() const {
        std::vector<std::vector<int>> comps;
        std::vector<char> seen(inst_.num_nodes(), 0);
        for (int s = 0; s < inst_.num_nodes(); ++s) {
            if (seen[s]) continue;
            bool touched = false;
            for (int e : inst_.incident(s)) touched |= col_.color_of(e) == 0;
            if (!touched) continue;
            std::vector<int> comp{s};
            seen[s] = 1;
            for (std::size_t h = 0; h < comp.size(); ++h)
                for (int e : inst_.incident(comp[h])) {
                    if (col_.color_of(e) != 0) continue;
                    int o = inst_.other_end(e, comp[h]);
                    if (!seen[o]) {
                        seen[o] = 1;
                        comp.push_back(o);
                    }
                }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        return comps;
    }

    // Balancing-orbit resolution: a vertex u strongly missing color a has two
    // spare slots for a, so even if the repair walk ends at u (adding one
    // a-edge there) we can still color an uncolored edge at u with a.
    Outcome resolve_balancing(const std::vector<int>& verts) {
        for (int u : verts) {
            int e = -1;
            for (int f : inst_.incident(u))
                if (col_.color_of(f) == 0) {
                    e = f;
                    break;
                }
            if (e == -1) continue;
            for (int a = 1; a <= col_.q(); ++a) {
                if (!col_.strongly_missing(u, a)) continue;
                int x = inst_.other_end(e, u);
                if (col_.missing(x, a)) {
                    col_.set_color(e, a);
                    log("balancing direct u=" + nid(u) + " a=" + std::to_string(a) + " edge=" + eid(e));
                    note_progress();
                    return Outcome::Progress;
                }
                // a is saturated at x: flip an a/b walk from x to free a slot.
                // Try every missing color b at x, preferring walks that stop
                // at a vertex saturated in the arrival color; only then allow
                // doubly-missing stops, which capacities above one can force.
                int b = 0;
                std::optional<std::vector<int>> path;
                for (int pass = 0; pass < 2 && !path; ++pass) {
                    WalkOptions opt;
                    opt.allow_missing_arrival = pass == 1;
                    for (int c = 1; c <= col_.q() && !path; ++c) {
                        if (!col_.missing(x, c)) continue;
                        b = c;
                        path = find_alternating_walk(inst_, col_, x, a, c, opt);
                    }
                }
                if (b == 0) continue;  // x fully saturated; cannot host a walk
                if (!path) {
                    fallback(e, "balancing-walk");
                    return Outcome::Progress;
                }
                col_.flip(*path, a, b);
                ++stats_.flips;
                col_.set_color(e, a);
                log("balancing flip u=" + nid(u) + " a=" + std::to_string(a) +
                    " len=" + std::to_string(path->size()) + " edge=" + eid(e));
                note_progress();
                return Outcome::Progress;
            }
        }
        return Outcome::NotApplicable;
    }

    // Color-orbit resolution: two vertices lightly missing the same color and
    // connected by uncolored edges. Walks shorten the connecting path until
    // its first edge can take the shared color.
    Outcome resolve_color_pair(const std::vector<int>& verts) {
        for (int a = 1; a <= col_.q(); ++a) {
            for (std::size_t i = 0; i < verts.size(); ++i) {
                int u = verts[i];
                if (!col_.lightly_missing(u, a)) continue;
                // nearest partner via BFS over uncolored edges
                std::vector<int> par(inst_.num_nodes(), -2);
                std::vector<int> queue{u};
                par[u] = -1;
                int partner = -1;
                for (std::size_t h = 0; h < queue.size() && partner == -1; ++h) {
                    for (int f : inst_.incident(queue[h])) {
                        if (col_.color_of(f) != 0) continue;
                        int o = inst_.other_end(f, queue[h]);
                        if (par[o] != -2) continue;
                        par[o] = f;
                        if (o != u && col_.lightly_missing(o, a)) {
                            partner = o;
                            break;
                        }
                        queue.push_back(o);
                    }
                }
                if (partner == -1) continue;
                std::vector<int> path;  // uncolored edges u .. partner
                for (int z = partner; z != u;) {
                    path.push_back(par[z]);
                    z = inst_.other_end(par[z], z);
                }
                std::reverse(path.begin(), path.end());
                apply_color_pair(u, partner, a, path);
                return Outcome::Progress;
            }
        }
        return Outcome::NotApplicable;
    }

    void apply_color_pair(int u, int v, int a, std::vector<int> path) {
        while (true) {
            int f1 = path.front();
            int x1 = inst_.other_end(f1, u);
            if (path.size() == 1 || col_.missing(x1, a)) {
                col_.set_color(f1, a);
                log("color-pair a=" + std::to_string(a) + " u=" + nid(u) + " v=" + nid(v) +
                    " edge=" + eid(f1));
                note_progress();
                return;
            }
            // Same two-pass search as the balancing repair: strict stops
            // first, doubly-missing stops second, over every missing b at x1.
            int b = 0;
            std::optional<std::vector<int>> walk;
            for (int pass = 0; pass < 2 && !walk; ++pass) {
                WalkOptions opt;
                opt.allow_missing_arrival = pass == 1;
                for (int c = 1; c <= col_.q() && !walk; ++c) {
                    if (!col_.missing(x1, c)) continue;
                    b = c;
                    walk = find_alternating_walk(inst_, col_, x1, a, c, opt);
                }
            }
            if (b == 0) {
                fallback(f1, "color-pair-saturated");
                return;
            }
            if (!walk) {
                fallback(f1, "color-pair-walk");
                return;
            }
            int end = walk_end(x1, *walk);
            col_.flip(*walk, a, b);
            ++stats_.flips;
            if (end == u) {
                // u absorbed the freed slot; x1 is now lightly missing a, so
                // recurse on the shorter pair (x1, v).
                u = x1;
                path.erase(path.begin());
                continue;
            }
            col_.set_color(f1, a);
            log("color-pair a=" + std::to_string(a) + " u=" + nid(u) + " v=" + nid(v) +
                " edge=" + eid(f1) + " flip-len=" + std::to_string(walk->size()));
            note_progress();
            return;
        }
    }

    int walk_end(int start, const std::vector<int>& walk) const {
        int cur = start;
        for (int e : walk) cur = inst_.other_end(e, cur);
        return cur;
    }

    void check_size_bound(const std::vector<int>& verts) {
        long long q = col_.q();
        long long lhs = static_cast<long long>(verts.size()) * (q - delta_prime_ + 2);
        if (lhs > q + 2)
            violation("orbit-size |V|=" + std::to_string(verts.size()) + " q=" + std::to_string(q) +
                      " delta'=" + std::to_string(delta_prime_));
    }

    // --- edge-orbit episode -------------------------------------------------

    void run_episode(int seed1) {
        int seed2 = -1;
        for (int f : *parallel_group_[seed1])
            if (f != seed1 && col_.color_of(f) == 0) {
                seed2 = f;
                break;
            }
        internal_check(seed2 != -1, "bad edge without an uncolored parallel");
        log("episode seed=" + eid(seed1) + "," + eid(seed2));

        Orbit o;
        o.seed1 = seed1;
        o.seed2 = seed2;
        o.in_v.assign(inst_.num_nodes(), 0);
        o.in_e.assign(inst_.num_edges(), 0);
        o.color_used.assign(col_.q() + 1, 0);
        auto add_vertex = [&](int v) {
            if (!o.in_v[v]) {
                o.in_v[v] = 1;
                o.verts.insert(std::lower_bound(o.verts.begin(), o.verts.end(), v), v);
            }
        };
        add_vertex(inst_.edge(seed1).u);
        add_vertex(inst_.edge(seed1).v);
        for (int s : {seed1, seed2}) {
            o.in_e[s] = 1;
            o.edges.push_back(s);
        }

        long long grow_cap = inst_.num_nodes() + 2;
        while (true) {
            if (resolve_balancing(o.verts) == Outcome::Progress) return;
            if (resolve_color_pair(o.verts) == Outcome::Progress) return;
            if (orbit_has_lean_edge(o)) {
                if (weak_tier1(o)) return;
                // Lean edge on a non-seed-rooted path: the reconstruction is
                // out of scope, so keep growing; witnesses are only claimed
                // for hard (lean-free) orbits.
                if (grow(o, add_vertex)) {
                    internal_check(--grow_cap > 0, "orbit growth failed to terminate");
                    continue;
                }
                fallback(seed1, "weak-deep");
                return;
            }
            check_size_bound(o.verts);
            if (delta_witness(o)) return;
            if (gamma_witness(o)) return;
            if (grow(o, add_vertex)) {
                internal_check(--grow_cap > 0, "orbit growth failed to terminate");
                continue;
            }
            fallback(seed1, "hard-orbit-stuck");
            return;
        }
    }

    bool orbit_has_lean_edge(const Orbit& o) const {
        for (int e : o.edges)
            if (is_lean(e)) return true;
        return false;
    }

    // Weak-orbit reconstruction when the lean edge f lies on a path grown
    // directly from the seed: uncolor f, flip the path prefix before it, and
    // color one seed edge with the path's second color b (now missing at both
    // seed endpoints). Net effect: one lean edge uncolored, one bad edge
    // colored.
    bool weak_tier1(Orbit& o) {
        for (const auto& g : o.growths) {
            if (g.anchor != o.seed1 && g.anchor != o.seed2) continue;
            for (std::size_t j = 0; j < g.path.size(); ++j) {
                if (!is_lean(g.path[j])) continue;
                std::vector<int> prefix(g.path.begin(), g.path.begin() + j);
                col_.uncolor(g.path[j]);
                if (!prefix.empty()) {
                    col_.flip(prefix, g.a, g.b);
                    ++stats_.flips;
                }
                int seed = col_.color_of(o.seed1) == 0 ? o.seed1 : o.seed2;
                col_.set_color(seed, g.b);
                log("weak-tier1 lean=" + eid(g.path[j]) + " prefix=" + std::to_string(prefix.size()) +
                    " b=" + std::to_string(g.b) + " seed=" + eid(seed));
                note_progress();
                return true;
            }
        }
        return false;
    }

    // A color is free for the orbit when no orbit edge carries it.
    bool color_free(const Orbit& o, int c) const {
        return c >= static_cast<int>(o.color_used.size()) || !o.color_used[c];
    }

    bool delta_witness(Orbit& o) {
        for (int x : o.verts) {
            bool all_nonfree = true;
            for (int c = 1; c <= col_.q() && all_nonfree; ++c)
                if (col_.missing(x, c) && color_free(o, c)) all_nonfree = false;
            if (!all_nonfree) continue;
            ++stats_.witnesses_delta;
            int cmin = 0;
            for (int v : o.verts) cmin = cmin == 0 ? inst_.capacity(v) : std::min(cmin, inst_.capacity(v));
            long long lhs = static_cast<long long>(col_.q() - delta_prime_) * cmin;
            long long rhs = 2LL * static_cast<long long>(o.verts.size()) - 4;
            if (lhs > rhs)
                violation("witness-delta q=" + std::to_string(col_.q()) + " |V|=" +
                          std::to_string(o.verts.size()) + " c-=" + std::to_string(cmin));
            bump_and_color_seed(o, "delta node=" + nid(x));
            return true;
        }
        return false;
    }

    bool gamma_witness(Orbit& o) {
        long long cap_sum = 0, cmax = 0;
        for (int v : o.verts) {
            cap_sum += inst_.capacity(v);
            cmax = std::max<long long>(cmax, inst_.capacity(v));
        }
        long long den = cap_sum / 2;
        // Full color: at least floor(sum c_v / 2) edges of that color inside
        // the orbit's vertex set.
        std::vector<long long> inside(col_.q() + 1, 0);
        long long edges_inside = 0;
        for (int e = 0; e < inst_.num_edges(); ++e) {
            const Edge& ed = inst_.edge(e);
            if (!o.in_v[ed.u] || !o.in_v[ed.v]) continue;
            ++edges_inside;
            if (col_.color_of(e) >= 1) ++inside[col_.color_of(e)];
        }
        for (int c = 1; c <= col_.q(); ++c)
            if (color_free(o, c) && inside[c] < den) return false;
        ++stats_.witnesses_gamma;
        // q <= |E(S)|/den + 2|V| - 4 - 2/c+ with S = V(O), kept in integers:
        // (q - 2|V| + 4) * den * c+ + 2 * den <= |E(S)| * c+.
        long long nv = static_cast<long long>(o.verts.size());
        long long lhs = (static_cast<long long>(col_.q()) - 2 * nv + 4) * den * cmax + 2 * den;
        long long rhs = edges_inside * cmax;
        if (lhs > rhs)
            violation("witness-gamma q=" + std::to_string(col_.q()) + " |V|=" + std::to_string(nv) +
                      " |E(S)|=" + std::to_string(edges_inside));
        bump_and_color_seed(o, "gamma");
        return true;
    }

    void bump_and_color_seed(Orbit& o, const std::string& kind) {
        col_.grow_palette(col_.q() + 1);
        int colored = 0;
        for (int s : {o.seed1, o.seed2}) {
            const Edge& ed = inst_.edge(s);
            if (col_.color_of(s) == 0 && col_.missing(ed.u, col_.q()) && col_.missing(ed.v, col_.q())) {
                col_.set_color(s, col_.q());
                ++colored;
            }
        }
        internal_check(colored >= 1, "witness bump colored no seed edge");
        log("witness " + kind + " q=" + std::to_string(col_.q()) +
            " colored=" + std::to_string(colored));
        note_progress();
    }

    template <class AddVertex>
    bool grow(Orbit& o, AddVertex&& add_vertex) {
        for (int anchor : o.edges) {
            const Edge& ed = inst_.edge(anchor);
            for (auto [x, y] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}}) {
                for (int a = 1; a <= col_.q(); ++a) {
                    if (!col_.missing(x, a) || !color_free(o, a)) continue;
                    for (int b = 1; b <= col_.q(); ++b) {
                        if (b == a || !col_.missing(y, b) || !color_free(o, b)) continue;
                        if (col_.missing(x, b)) continue;  // cannot start the walk
                        WalkOptions opt;
                        opt.require_new_vertex = true;
                        opt.known = &o.in_v;
                        auto path = find_alternating_walk(inst_, col_, x, b, a, opt);
                        if (!path) continue;
                        Orbit::Growth g{anchor, x, y, a, b, *path};
                        int before = static_cast<int>(o.verts.size());
                        int cur = x;
                        for (int e : *path) {
                            cur = inst_.other_end(e, cur);
                            add_vertex(cur);
                            if (!o.in_e[e]) {
                                o.in_e[e] = 1;
                                o.edges.push_back(e);
                            }
                        }
                        o.color_used[a] = 1;
                        o.color_used[b] = 1;
                        o.growths.push_back(std::move(g));
                        ++stats_.orbit_growths;
                        log("grow anchor=" + eid(anchor) + " a=" + std::to_string(a) + " b=" +
                            std::to_string(b) + " len=" + std::to_string(path->size()) + " new=" +
                            std::to_string(static_cast<int>(o.verts.size()) - before));
                        return true;
                    }
                }
            }
        }
        return false;
    }

  private:
    const Instance& inst_;
    MigrationColoring col_;
    bool strict_;
    int delta_prime_;
    GeneralStats stats_;
    std::vector<std::vector<int>> groups_storage_;
    std::vector<const std::vector<int>*> parallel_group_;
};

}  // namespace detail

// End-to-end general scheduler. Rounds are the nonempty color classes of the
// final coloring.
inline std::vector<std::vector<int>> schedule_general(const Instance& inst, bool strict = false,
                                                      GeneralStats* stats = nullptr) {
    if (inst.is_channel()) throw InputError("migration instance required");
    if (inst.num_edges() == 0) {
        if (stats) *stats = GeneralStats{};
        return {};
    }
    detail::GeneralScheduler sched(inst, detail::GeneralScheduler::default_palette(inst), strict);
    sched.stats().log.push_back("palette initial q=" + std::to_string(sched.coloring().q()));
    sched.initial_coloring();
    sched.eliminate_bad_edges();
    sched.reduce_components();
    sched.color_residual();
    auto rounds = sched.rounds();
    if (stats) *stats = sched.stats();
    return rounds;
}

}  // namespace chromaflux
