// Greedy channel assignment for homogeneous instances (every C_v = k), plus
// the uniformly-random variant and its conditional-expectation
// derandomization.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chromaflux/bounds.hpp"
#include "chromaflux/errors.hpp"
#include "chromaflux/instance.hpp"
#include "chromaflux/rng.hpp"

namespace chromaflux {

enum class EdgeOrder { Input, Random };
enum class GreedyVariant { Deterministic, Randomized, Derandomized };

struct GreedyConfig {
    EdgeOrder edge_order = EdgeOrder::Input;
    GreedyVariant variant = GreedyVariant::Deterministic;
    // Required iff edge_order == Random or variant == Randomized.
    std::optional<std::uint64_t> seed;
};

// CF_G never exceeds sum_v d_v^2 / k + 2(1 - 1/k)|E| for the greedy and
// derandomized variants (and in expectation for the randomized one).
// Returned exactly: (sum_v d_v^2 + 2(k-1)|E|) / k.
inline Rational greedy_guarantee(const Instance& inst, int k) {
    if (k < 1) throw InputError("k must be >= 1");
    long long sum_sq = 0;
    for (int v = 0; v < inst.num_nodes(); ++v) {
        long long d = inst.degree(v);
        sum_sq += d * d;
    }
    return Rational(sum_sq + 2LL * (k - 1) * inst.num_edges(), k);
}

namespace detail {

inline void require_homogeneous(const Instance& inst, int k) {
    if (!inst.is_channel()) throw InputError("channel instance required");
    if (k < 1) throw InputError("k must be >= 1");
    auto h = inst.homogeneous_k();
    if (!h || *h != k)
        throw InputError("instance is not homogeneous with C_v = " + std::to_string(k));
    if (k > inst.global_channels())
        throw InputError("k exceeds the global channel count");
}

inline std::vector<int> edge_processing_order(const Instance& inst, const GreedyConfig& cfg,
                                              Rng* rng) {
    std::vector<int> order(inst.num_edges());
    for (int e = 0; e < inst.num_edges(); ++e) order[e] = e;
    if (cfg.edge_order == EdgeOrder::Random) shuffle_vec(*rng, order);
    return order;
}

inline Rng seeded_rng(const GreedyConfig& cfg) {
    bool needs_seed =
        cfg.edge_order == EdgeOrder::Random || cfg.variant == GreedyVariant::Randomized;
    if (needs_seed && !cfg.seed) throw InputError("config requires a seed");
    return Rng(cfg.seed.value_or(0));
}

// Scaled derandomization potential: with a_{v,c} colored edges of color c at
// v, A_v colored and u_v uncolored incident edges, uncolored edges colored
// uniformly from {1..k} give
//   E[CF_G] = sum_v [ sum_c a_{v,c}^2 + 2 u_v A_v / k + u_v (1 - 1/k) + u_v^2 / k ].
// Multiplying by k^2 keeps everything integral. Only the k^2 * a_{v,c}^2
// terms depend on the color choice for the next edge, so the argmin per edge
// is over 2 a_{u,c} + 2 a_{v,c} — but we evaluate the full potential delta to
// keep this an honest implementation of the conditional expectation.
inline long long potential_delta(long long a_uc, long long a_vc, long long A_u, long long A_v,
                                 long long u_u, long long u_v, long long k) {
    long long d = 0;
    // vertex u: a_{u,c} -> a_{u,c}+1, A_u -> A_u+1, u_u -> u_u-1
    d += k * k * (2 * a_uc + 1);
    d += 2 * k * ((u_u - 1) * (A_u + 1) - u_u * A_u);
    d += k * (k - 1) * (-1);
    d += k * ((u_u - 1) * (u_u - 1) - u_u * u_u);
    // vertex v, same shape
    d += k * k * (2 * a_vc + 1);
    d += 2 * k * ((u_v - 1) * (A_v + 1) - u_v * A_v);
    d += k * (k - 1) * (-1);
    d += k * ((u_v - 1) * (u_v - 1) - u_v * u_v);
    return d;
}

}  // namespace detail

// Algorithm: color edges one by one; each edge takes the color that appears
// least often on already-colored edges incident to its endpoints (counted
// with multiplicity on both sides), lowest color index on ties.
inline std::vector<int> greedy_assign(const Instance& inst, int k,
                                      const GreedyConfig& cfg = {}) {
    detail::require_homogeneous(inst, k);
    Rng rng = detail::seeded_rng(cfg);
    std::vector<int> order = detail::edge_processing_order(inst, cfg, &rng);

    std::vector<int> color(inst.num_edges(), 0);
    // cnt[v*(k+1)+c]: colored incident edges of color c at v
    std::vector<long long> cnt(static_cast<std::size_t>(inst.num_nodes()) * (k + 1), 0);
    std::vector<long long> colored_at(inst.num_nodes(), 0);

    for (int e : order) {
        const Edge& ed = inst.edge(e);
        int chosen = 1;
        if (cfg.variant == GreedyVariant::Randomized) {
            chosen = rand_int(rng, 1, k);
        } else if (cfg.variant == GreedyVariant::Derandomized) {
            long long best = 0;
            for (int c = 1; c <= k; ++c) {
                long long d = detail::potential_delta(
                    cnt[static_cast<std::size_t>(ed.u) * (k + 1) + c],
                    cnt[static_cast<std::size_t>(ed.v) * (k + 1) + c], colored_at[ed.u],
                    colored_at[ed.v], inst.degree(ed.u) - colored_at[ed.u],
                    inst.degree(ed.v) - colored_at[ed.v], k);
                if (c == 1 || d < best) {
                    best = d;
                    chosen = c;
                }
            }
        } else {
            long long best = 0;
            for (int c = 1; c <= k; ++c) {
                long long n_ce = cnt[static_cast<std::size_t>(ed.u) * (k + 1) + c] +
                                 cnt[static_cast<std::size_t>(ed.v) * (k + 1) + c];
                if (c == 1 || n_ce < best) {
                    best = n_ce;
                    chosen = c;
                }
            }
        }
        color[e] = chosen;
        ++cnt[static_cast<std::size_t>(ed.u) * (k + 1) + chosen];
        ++cnt[static_cast<std::size_t>(ed.v) * (k + 1) + chosen];
        ++colored_at[ed.u];
        ++colored_at[ed.v];
    }
    return color;
}

// Greedy driven by the derandomization potential. Chooses, for each edge in
// input order, the color minimizing E[CF_G | choices so far] with the
// remaining edges colored uniformly at random.
inline std::vector<int> derandomized_assign(const Instance& inst, int k) {
    GreedyConfig cfg;
    cfg.variant = GreedyVariant::Derandomized;
    return greedy_assign(inst, k, cfg);
}

}  // namespace chromaflux
