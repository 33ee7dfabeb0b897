// Lower bounds for both problem kinds.
//
// Channel (homogeneous card count k):
//   * sum_v d_v^2 / k, kept exact as a rational;
//   * the tighter balanced-local bound sum_v [a_v (m_v+1)^2 + (k - a_v) m_v^2]
//     with m_v = floor(d_v / k), a_v = d_v - k m_v (the best possible split of
//     d_v edges into at most k classes at each vertex independently).
//
// Migration:
//   * LB1 = max_v ceil(d_v / c_v);
//   * LB2 = max over node sets S of ceil(|E(S)| / floor(sum_{v in S} c_v / 2)).
//     Exact by subset enumeration up to `lb2_exact_threshold` nodes, otherwise
//     a densest-subgraph peeling heuristic (lb2_exact reports which one ran).
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"

namespace chromaflux {

// Minimal exact rational, only what bound comparisons need.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw InternalError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    // ceil(num/den) for nonnegative rationals
    long long ceil() const { return (num + den - 1) / den; }
};

inline bool operator<=(const Rational& a, long long b) { return a.num <= b * a.den; }
inline bool operator<=(long long a, const Rational& b) { return a * b.den <= b.num; }

struct BoundsReport {
    // channel fields
    Rational homogeneous_lb;        // sum d_v^2 / k
    long long balanced_local_lb = 0;
    // migration fields
    int lb1 = 0;
    int lb2 = 0;
    bool lb2_exact = true;
};

inline BoundsReport homogeneous_lower_bound(const Instance& inst, int k) {
    if (k < 1) throw InputError("k must be >= 1");
    BoundsReport rep;
    long long sum_sq = 0;
    long long local = 0;
    for (int v = 0; v < inst.num_nodes(); ++v) {
        long long d = inst.degree(v);
        sum_sq += d * d;
        long long m = d / k;
        long long a = d - m * k;
        local += a * (m + 1) * (m + 1) + (k - a) * m * m;
    }
    rep.homogeneous_lb = Rational(sum_sq, k);
    rep.balanced_local_lb = local;
    return rep;
}

namespace detail {

// ceil(|E(S)| / floor(cap(S)/2)); 0 when S spans no edges.
inline long long lb2_of_set(const Instance& inst, const std::vector<char>& in_set) {
    long long edges = 0;
    long long cap = 0;
    for (int e = 0; e < inst.num_edges(); ++e)
        if (in_set[inst.edge(e).u] && in_set[inst.edge(e).v]) ++edges;
    if (edges == 0) return 0;
    for (int v = 0; v < inst.num_nodes(); ++v)
        if (in_set[v]) cap += inst.capacity(v);
    long long half = cap / 2;  // >= 1: an edge needs two endpoints, each c_v >= 1
    return (edges + half - 1) / half;
}

inline long long lb2_exhaustive(const Instance& inst) {
    int n = inst.num_nodes();
    long long best = 0;
    std::vector<char> in_set(n, 0);
    for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
        for (int v = 0; v < n; ++v) in_set[v] = (mask >> v) & 1;
        best = std::max(best, lb2_of_set(inst, in_set));
    }
    return best;
}

// Peel the minimum-degree vertex (lowest index on ties); after each removal
// evaluate every connected component of the remainder.
inline long long lb2_peeling(const Instance& inst) {
    int n = inst.num_nodes();
    std::vector<char> alive(n, 1);
    std::vector<int> deg(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = inst.degree(v);

    auto eval_components = [&]() {
        long long best = 0;
        std::vector<char> visited(n, 0);
        for (int s = 0; s < n; ++s) {
            if (!alive[s] || visited[s]) continue;
            std::vector<char> comp(n, 0);
            std::vector<int> stack{s};
            visited[s] = comp[s] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int e : inst.incident(v)) {
                    int w = inst.other_end(e, v);
                    if (alive[w] && !visited[w]) {
                        visited[w] = comp[w] = 1;
                        stack.push_back(w);
                    }
                }
            }
            best = std::max(best, lb2_of_set(inst, comp));
        }
        return best;
    };

    long long best = eval_components();
    for (int step = 0; step < n; ++step) {
        int victim = -1;
        for (int v = 0; v < n; ++v)
            if (alive[v] && (victim == -1 || deg[v] < deg[victim])) victim = v;
        if (victim == -1) break;
        alive[victim] = 0;
        for (int e : inst.incident(victim)) {
            int w = inst.other_end(e, victim);
            if (alive[w]) --deg[w];
        }
        best = std::max(best, eval_components());
    }
    return best;
}

}  // namespace detail

inline BoundsReport migration_lower_bounds(const Instance& inst,
                                           int lb2_exact_threshold = 18) {
    BoundsReport rep;
    for (int v = 0; v < inst.num_nodes(); ++v) {
        int d = inst.degree(v);
        int c = inst.capacity(v);
        rep.lb1 = std::max(rep.lb1, (d + c - 1) / c);
    }
    if (inst.num_nodes() <= lb2_exact_threshold) {
        rep.lb2 = static_cast<int>(detail::lb2_exhaustive(inst));
        rep.lb2_exact = true;
    } else {
        rep.lb2 = static_cast<int>(detail::lb2_peeling(inst));
        rep.lb2_exact = false;
    }
    return rep;
}

}  // namespace chromaflux
