// Deterministic randomness helpers.
//
// std::mt19937_64 is bit-exact across platforms but the standard
// distributions are not, so every draw goes through the helpers below.
// All randomness in the library hangs off a single caller-provided seed.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace chromaflux {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi]. Modulo draw: the tiny bias is irrelevant for
// test-instance generation and random tie-breaking, determinism is not.
inline int rand_int(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

template <typename T>
void shuffle_vec(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng() % i;
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace chromaflux
