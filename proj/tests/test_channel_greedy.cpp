// Greedy assignment, the randomized variant, and its derandomization.
#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace cftest;

TEST_CASE("greedy colors the small fixtures as expected") {
    Instance single = make_channel_instance(2, {{0, 1}}, 1);
    auto colors = greedy_assign(single, 1);
    CHECK(colors == std::vector<int>{1});
    CHECK(conflict_report(single, colors).total == 2);

    Instance path2 = load_fixture("path2-k2.txt");
    colors = greedy_assign(path2, 2);
    CHECK(colors == std::vector<int>{1, 2});
    CHECK(conflict_report(path2, colors).total == 4);

    Instance tri = load_fixture("triangle-k3.txt");
    colors = greedy_assign(tri, 3);
    CHECK(colors == std::vector<int>{1, 2, 3});
    CHECK(conflict_report(tri, colors).total == 6);
}

TEST_CASE("greedy ties break toward the lowest color") {
    // All colors score equally for the first edge of each parallel pair.
    Instance inst = make_channel_instance(2, {{0, 1}, {0, 1}, {0, 1}}, 3);
    auto colors = greedy_assign(inst, 3);
    CHECK(colors == std::vector<int>{1, 2, 3});
}

TEST_CASE("greedy respects its conflict guarantee on random instances") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int k = rand_int(rng, 1, 4);
        Instance inst = random_homogeneous_channel(rng, 8, 30, k);
        auto colors = greedy_assign(inst, k);
        REQUIRE(validate_assignment(inst, colors).empty());
        long long cf = conflict_report(inst, colors).total;
        Rational g = greedy_guarantee(inst, k);
        REQUIRE(cf <= g);
    }
}

TEST_CASE("derandomized variant matches the pinned examples") {
    Instance single = make_channel_instance(2, {{0, 1}}, 1);
    CHECK(conflict_report(single, derandomized_assign(single, 1)).total == 2);

    Instance path2 = load_fixture("path2-k2.txt");
    CHECK(conflict_report(path2, derandomized_assign(path2, 2)).total == 4);

    Instance star = load_fixture("star14-k2.txt");
    auto colors = derandomized_assign(star, 2);
    CHECK(conflict_report(star, colors).total == 12);
}

TEST_CASE("derandomized choices coincide with the greedy argmin") {
    // The potential delta differs from the greedy score by a color-independent
    // term, and both tie-break low, so the two must pick identical colors.
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        int k = rand_int(rng, 1, 4);
        Instance inst = random_homogeneous_channel(rng, 7, 20, k);
        REQUIRE(greedy_assign(inst, k) == derandomized_assign(inst, k));
    }
}

TEST_CASE("derandomization never loses to the expected random conflict level") {
    // E[CF_G] under uniform colors is sum d^2/k + 2(1-1/k)|E| exactly; the
    // conditional-expectation walk can only go down.
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        int k = rand_int(rng, 2, 4);
        Instance inst = random_homogeneous_channel(rng, 7, 20, k);
        long long cf = conflict_report(inst, derandomized_assign(inst, k)).total;
        CHECK(cf <= greedy_guarantee(inst, k));
    }
}

TEST_CASE("randomized variant is reproducible per seed") {
    Instance inst = load_fixture("k4-k2.txt");
    GreedyConfig cfg;
    cfg.variant = GreedyVariant::Randomized;
    cfg.seed = 42;
    auto a = greedy_assign(inst, 2, cfg);
    auto b = greedy_assign(inst, 2, cfg);
    REQUIRE(a == b);
    REQUIRE(validate_assignment(inst, a).empty());
    cfg.seed = 43;
    // different seed is allowed to differ; only determinism is asserted
    auto c = greedy_assign(inst, 2, cfg);
    REQUIRE(validate_assignment(inst, c).empty());
}

TEST_CASE("random edge order is reproducible per seed") {
    Instance inst = load_fixture("k4-k2.txt");
    GreedyConfig cfg;
    cfg.edge_order = EdgeOrder::Random;
    cfg.seed = 7;
    auto a = greedy_assign(inst, 2, cfg);
    REQUIRE(a == greedy_assign(inst, 2, cfg));
    REQUIRE(validate_assignment(inst, a).empty());
}

TEST_CASE("configurations that need randomness demand a seed") {
    Instance inst = load_fixture("path2-k2.txt");
    GreedyConfig cfg;
    cfg.variant = GreedyVariant::Randomized;
    CHECK_THROWS_AS(greedy_assign(inst, 2, cfg), InputError);
    cfg = GreedyConfig{};
    cfg.edge_order = EdgeOrder::Random;
    CHECK_THROWS_AS(greedy_assign(inst, 2, cfg), InputError);
}

TEST_CASE("greedy rejects non-matching instances") {
    CHECK_THROWS_AS(greedy_assign(load_fixture("triangle-c1.txt"), 1), InputError);
    CHECK_THROWS_AS(greedy_assign(load_fixture("path2-k2.txt"), 3), InputError);
    CHECK_THROWS_AS(greedy_assign(load_fixture("clustered-path.txt"), 2), InputError);
    CHECK_THROWS_AS(greedy_assign(load_fixture("path2-k2.txt"), 0), InputError);
}

TEST_CASE("greedy stays within a factor 2 - 1/k of the exact optimum on tiny instances") {
    Rng rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        int k = rand_int(rng, 1, 3);
        Instance inst = random_homogeneous_channel(rng, 5, 8, k);
        auto res = min_conflicts_exact(inst, k);
        REQUIRE(res.status == OracleStatus::Exact);
        long long cf = conflict_report(inst, greedy_assign(inst, k)).total;
        CHECK(cf * k <= (2 * k - 1) * res.value);
    }
}
