#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "infocycle/digraph.hpp"
#include "oracles.hpp"

using namespace infocycle;

namespace {

std::vector<int> bits_of(std::uint32_t mask) {
    std::vector<int> out;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1u) out.push_back(i);
    return out;
}

// All directed graphs on n nodes are indexed by a bitmask over the n(n-1)
// ordered pairs.
Digraph graph_from_id(int n, std::uint64_t id) {
    Digraph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if ((id >> bit) & 1u) g.add_edge(u, v);
            ++bit;
        }
    return g;
}

}  // namespace

TEST_CASE("cycle_graph edge structure") {
    const auto g2 = cycle_graph(2);
    CHECK(g2.has_edge(1, 0));
    CHECK(g2.has_edge(0, 1));
    CHECK(g2.edge_count() == 2);

    // 3-cycle: parent of each node is its successor
    const auto g3 = cycle_graph(3);
    CHECK(g3.has_edge(1, 0));
    CHECK(g3.has_edge(2, 1));
    CHECK(g3.has_edge(0, 2));
    CHECK(g3.edge_count() == 3);

    const auto g4 = cycle_graph(4);
    CHECK(g4.edge_count() == 4);
    for (int v = 0; v < 4; ++v) {
        CHECK(g4.parents(v).size() == 1);
        CHECK(g4.children(v).size() == 1);
    }

    CHECK_THROWS_AS(cycle_graph(1), Error);
}

TEST_CASE("self-loops and duplicate edges are rejected or ignored") {
    Digraph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), Error);
    g.add_edge(0, 1);
    g.add_edge(0, 1);  // deduplicated
    CHECK(g.edge_count() == 1);
}

TEST_CASE("descendants on chains, cycles, and isolated nodes") {
    Digraph chain(3);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    CHECK(descendants(chain, 0) == std::vector<int>{1, 2});
    CHECK(descendants(chain, 2).empty());

    CHECK(descendants(cycle_graph(3), 0) == std::vector<int>{0, 1, 2});

    Digraph iso(2);
    CHECK(descendants(iso, 0).empty());
}

TEST_CASE("canonical collider") {
    Digraph g(3);  // X -> Z <- Y with Z = node 2
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    const int a[1] = {0}, b[1] = {1}, zc[1] = {2};
    CHECK(d_separated(g, a, b, {}));
    CHECK_FALSE(d_separated(g, a, b, zc));
}

TEST_CASE("collider opened through a descendant of the collision node") {
    Digraph g(4);  // 0 -> 2 <- 1, 2 -> 3
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    const int a[1] = {0}, b[1] = {1}, z3[1] = {3};
    CHECK(d_separated(g, a, b, {}));
    CHECK_FALSE(d_separated(g, a, b, z3));
}

TEST_CASE("four-cycle: opposite nodes are separated by the other two") {
    const auto g = cycle_graph(4);
    const int a[1] = {0}, b[1] = {2};
    const int z[2] = {1, 3};
    CHECK(d_separated(g, a, b, z));
}

TEST_CASE("two-cycle: adjacent nodes are never separated") {
    const auto g = cycle_graph(2);
    const int a[1] = {0}, b[1] = {1};
    CHECK_FALSE(d_separated(g, a, b, {}));
}

TEST_CASE("no two cycle nodes are separated by the empty set") {
    for (int n = 2; n <= 8; ++n) {
        const auto g = cycle_graph(n);
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const int a[1] = {j}, b[1] = {k};
                CHECK_FALSE(d_separated(g, a, b, {}));
            }
    }
}

TEST_CASE("non-adjacent cycle nodes are separated by the two successors") {
    for (int n = 4; n <= 8; ++n) {
        const auto g = cycle_graph(n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (j == k || (j + 1) % n == k || (k + 1) % n == j) continue;
                const int a[1] = {j}, b[1] = {k};
                const int z[2] = {(j + 1) % n, (k + 1) % n};
                CHECK(d_separated(g, a, b, z));
            }
    }
}

TEST_CASE("d-separation is symmetric in A and B") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 2);
        const auto g = graph_from_id(n, rng());
        const std::uint32_t all = (1u << n) - 1;
        const int na = static_cast<int>(rng() % n);
        const int nb = (na + 1 + static_cast<int>(rng() % (n - 1))) % n;
        const std::uint32_t am = 1u << na, bm = 1u << nb;
        const std::uint32_t zm = static_cast<std::uint32_t>(rng()) & all & ~am & ~bm;
        const auto a = bits_of(am), b = bits_of(bm), z = bits_of(zm);
        CHECK(d_separated(g, a, b, z) == d_separated(g, b, a, z));
    }
}

TEST_CASE("validation errors") {
    const auto g = cycle_graph(3);
    const int a[1] = {0}, b[1] = {1}, bad[1] = {9};
    CHECK_THROWS_AS(d_separated(g, {}, b, {}), Error);
    CHECK_THROWS_AS(d_separated(g, a, bad, {}), Error);
    const int z_overlap[1] = {0};
    CHECK_THROWS_AS(d_separated(g, a, b, z_overlap), Error);
    CHECK_THROWS_AS(descendants(g, 5), Error);
}

TEST_CASE("agreement with the simple-path oracle on 6-node graphs, all triples") {
    std::mt19937_64 rng(23);
    const int n = 6;
    const std::uint32_t all = (1u << n) - 1;
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t max_id = std::uint64_t{1} << (n * (n - 1));
        const auto g = graph_from_id(n, rng() % max_id);
        const oracles::DsepOracle oracle(g);
        for (std::uint32_t am = 1; am <= all; ++am)
            for (std::uint32_t bm = 1; bm <= all; ++bm) {
                if (am & bm) continue;
                const std::uint32_t rest = all & ~am & ~bm;
                for (std::uint32_t zm = rest;; zm = (zm - 1) & rest) {
                    const auto a = bits_of(am), b = bits_of(bm), z = bits_of(zm);
                    REQUIRE(d_separated(g, a, b, z) == oracle.separated(am, bm, zm));
                    if (zm == 0) break;
                }
            }
    }
}

TEST_CASE("agreement with the simple-path oracle on random small graphs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);  // 2..5 nodes
        const std::uint64_t max_id = std::uint64_t{1} << (n * (n - 1));
        const auto g = graph_from_id(n, rng() % max_id);
        const oracles::DsepOracle oracle(g);

        // every disjoint (A, B, Z) triple on this graph
        const std::uint32_t all = (1u << n) - 1;
        for (std::uint32_t am = 1; am <= all; ++am)
            for (std::uint32_t bm = 1; bm <= all; ++bm) {
                if (am & bm) continue;
                const std::uint32_t rest = all & ~am & ~bm;
                for (std::uint32_t zm = rest;; zm = (zm - 1) & rest) {
                    const auto a = bits_of(am), b = bits_of(bm), z = bits_of(zm);
                    CHECK(d_separated(g, a, b, z) == oracle.separated(am, bm, zm));
                    if (zm == 0) break;
                }
            }
    }
}
