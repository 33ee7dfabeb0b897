// Brute-force oracles: pinned optima, witness validity, and budget handling.
#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace cftest;

TEST_CASE("conflict oracle pins small optima") {
    auto path2 = load_fixture("path2-k2.txt");
    auto res = min_conflicts_exact(path2, 2);
    REQUIRE(res.status == OracleStatus::Exact);
    CHECK(res.value == 4);
    CHECK(conflict_report(path2, res.witness).total == 4);

    auto tri = load_fixture("triangle-k3.txt");
    res = min_conflicts_exact(tri, 3);
    REQUIRE(res.status == OracleStatus::Exact);
    CHECK(res.value == 6);

    auto k4 = load_fixture("k4-k2.txt");
    res = min_conflicts_exact(k4, 2);
    REQUIRE(res.status == OracleStatus::Exact);
    CHECK(res.value == 20);
}

TEST_CASE("conflict oracle witnesses are valid and achieve the optimum") {
    Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        int k = rand_int(rng, 1, 3);
        Instance inst = random_homogeneous_channel(rng, 5, 7, k);
        auto res = min_conflicts_exact(inst, k);
        REQUIRE(res.status == OracleStatus::Exact);
        REQUIRE(validate_assignment(inst, res.witness).empty());
        REQUIRE(conflict_report(inst, res.witness).total == res.value);
        // the oracle can never beat a sound lower bound
        auto b = homogeneous_lower_bound(inst, k);
        CHECK(b.balanced_local_lb <= res.value);
        CHECK(b.homogeneous_lb <= res.value);
    }
}

TEST_CASE("conflict oracle respects per-node card counts") {
    // Middle node has one card, so both edges share a color: CF = 1 + 4 + 1.
    Instance inst = make_channel_custom({2, 1, 2}, {{0, 1}, {1, 2}}, 2);
    auto res = min_conflicts_exact(inst, 2);
    REQUIRE(res.status == OracleStatus::Exact);
    CHECK(res.value == 6);
    CHECK(res.witness[0] == res.witness[1]);
}

TEST_CASE("conflict oracle is deterministic and lexicographically least") {
    Instance inst = load_fixture("k4-k2.txt");
    auto a = min_conflicts_exact(inst, 2);
    auto b = min_conflicts_exact(inst, 2);
    REQUIRE(a.witness == b.witness);
    REQUIRE(a.witness[0] == 1);  // the first edge is pinned by symmetry
}

TEST_CASE("conflict oracle reports when the instance is out of range") {
    Rng rng(1);
    Instance big = make_channel_instance(8, random_edge_list(rng, 8, 11), 2);
    auto res = min_conflicts_exact(big, 2);
    CHECK(res.status == OracleStatus::TooLarge);

    Instance small = load_fixture("path2-k2.txt");
    OracleLimits limits;
    limits.max_colors = 1;
    CHECK(min_conflicts_exact(small, 2, limits).status == OracleStatus::TooLarge);

    limits = OracleLimits{};
    limits.max_nodes = 1;
    CHECK(min_conflicts_exact(small, 2, limits).status == OracleStatus::BudgetExceeded);

    CHECK_THROWS_AS(min_conflicts_exact(load_fixture("triangle-c1.txt"), 2), InputError);
}

TEST_CASE("rounds oracle pins small optima") {
    auto res = min_rounds_exact(load_fixture("triangle-c1.txt"));
    REQUIRE(res.status == OracleStatus::Exact);
    CHECK(res.value == 3);

    res = min_rounds_exact(load_fixture("parallel4-c2.txt"));
    REQUIRE(res.status == OracleStatus::Exact);
    CHECK(res.value == 2);

    res = min_rounds_exact(load_fixture("path2-c1.txt"));
    REQUIRE(res.status == OracleStatus::Exact);
    CHECK(res.value == 2);
}

TEST_CASE("rounds oracle witnesses are valid schedules meeting the optimum") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst = random_migration(rng, 4, 7, {1, 2, 3});
        auto res = min_rounds_exact(inst);
        REQUIRE(res.status == OracleStatus::Exact);
        REQUIRE(validate_schedule(inst, res.witness).empty());
        REQUIRE(static_cast<int>(res.witness.size()) == res.value);
        auto b = migration_lower_bounds(inst);
        CHECK(std::max(b.lb1, b.lb2) <= res.value);
    }
}

TEST_CASE("rounds oracle is deterministic") {
    Instance inst = load_fixture("k4-c2.txt");
    auto a = min_rounds_exact(inst);
    auto b = min_rounds_exact(inst);
    REQUIRE(a.status == OracleStatus::Exact);
    CHECK(a.value == 2);
    REQUIRE(a.witness == b.witness);
}

TEST_CASE("rounds oracle reports when the instance is out of range") {
    std::vector<std::pair<int, int>> eleven(11, {0, 1});
    Instance big = make_migration_instance(2, eleven, {2});
    CHECK(min_rounds_exact(big).status == OracleStatus::TooLarge);

    OracleLimits limits;
    limits.max_nodes = 1;
    CHECK(min_rounds_exact(load_fixture("triangle-c1.txt"), limits).status ==
          OracleStatus::BudgetExceeded);

    CHECK_THROWS_AS(min_rounds_exact(load_fixture("triangle.txt")), InputError);
}

TEST_CASE("oracles accept empty instances") {
    Instance ch(ProblemKind::Channel, {{"a", 1}}, {}, 1);
    CHECK(min_conflicts_exact(ch, 1).value == 0);
    Instance mig(ProblemKind::Migration, {{"a", 1}}, {});
    CHECK(min_rounds_exact(mig).value == 0);
}
