#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "infocycle/generate.hpp"
#include "infocycle/info_measures.hpp"

using namespace infocycle;

TEST_CASE("random_joint is deterministic and valid") {
    const int cards[2] = {2, 2};
    const auto a = random_joint(cards, 42);
    const auto b = random_joint(cards, 42);
    CHECK(a.table == b.table);  // bit-identical
    CHECK_FALSE(validate(a).has_value());
    const auto c = random_joint(cards, 43);
    CHECK(a.table != c.table);
}

TEST_CASE("random_joint tables are strictly positive") {
    const int cards[3] = {2, 3, 2};
    for (std::uint64_t seed = 1; seed <= 50; ++seed)
        for (double p : random_joint(cards, seed).table) CHECK(p > 0.0);
}

TEST_CASE("random_joint entropy stays strictly inside the (0, 2) band") {
    const int cards[2] = {2, 2};
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const double h = entropy(random_joint(cards, seed), 0b11);
        CHECK(h > 0.0);
        CHECK(h < 2.0);
    }
}

TEST_CASE("random_joint rejects tiny cardinalities and huge tables") {
    const int bad[1] = {1};
    CHECK_THROWS_AS(random_joint(bad, 1), Error);
    const std::vector<int> huge(30, 2);  // 2^30 cells
    CHECK_THROWS_AS(random_joint(huge, 1), Error);
}

TEST_CASE("independent_joint of uniform binaries is uniform") {
    const std::vector<std::vector<double>> margs(3, std::vector<double>{0.5, 0.5});
    const auto d = independent_joint(margs);
    for (double p : d.table) CHECK(p == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("independent_joint cell values are marginal products") {
    const auto d = independent_joint({{0.3, 0.7}, {0.7, 0.3}});
    CHECK(d.table[0] == doctest::Approx(0.21).epsilon(1e-15));
}

TEST_CASE("independent_joint outputs have zero co-information") {
    const auto d = independent_joint({{0.3, 0.7}, {0.6, 0.4}, {0.25, 0.75}});
    CHECK(std::abs(co_information(d)) <= 1e-12);
}

TEST_CASE("independent_joint rejects bad marginals") {
    CHECK_THROWS_AS(independent_joint({{0.5, 0.4}}), Error);
    CHECK_THROWS_AS(independent_joint({{0.5, -0.5, 1.0}}), Error);
}

TEST_CASE("independent inputs have zero residual for every cycle order, n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        std::vector<std::vector<double>> margs;
        for (int i = 0; i < n; ++i)
            margs.push_back(random_marginal(2, 100 + static_cast<std::uint64_t>(i)));
        const auto d = independent_joint(margs);

        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        do {
            CHECK(cycle_factorization_residual(d, CycleSpec{order}) <= 1e-12);
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST_CASE("independent inputs with mixed cardinalities factorize along every order") {
    const auto d = independent_joint(
        {random_marginal(2, 31), random_marginal(3, 32), random_marginal(4, 33)});
    std::vector<int> order = {0, 1, 2};
    do {
        CHECK(cycle_factorization_residual(d, CycleSpec{order}) <= 1e-12);
    } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("ipf on an independent input converges immediately") {
    const auto d = independent_joint({{0.3, 0.7}, {0.6, 0.4}, {0.5, 0.5}});
    const auto r = ipf_cycle_projection(d, CycleSpec::identity(3), 100, 1e-9);
    CHECK(r.converged);
    CHECK(r.iterations <= 1);
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("ipf on the copy pair sits at the dependent fixed point without converging") {
    // the iteration maps the copy pair to itself; the residual stays at 0.5,
    // so no dependent two-variable distribution sneaks through
    const auto r = ipf_cycle_projection(fixtures::copy_pair(), CycleSpec::identity(2), 50, 1e-9);
    CHECK_FALSE(r.converged);
    CHECK(r.residual == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.dependence_bits > 0.9);  // the dependence was preserved, not converged away
}

TEST_CASE("ipf results on random inputs honor the convergence contract") {
    const int cards[3] = {2, 2, 2};
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto r = ipf_cycle_projection(random_joint(cards, seed), CycleSpec::identity(3),
                                            200, 1e-9);
        CHECK_FALSE(validate(r.best).has_value());
        if (r.converged) CHECK(r.residual <= 1e-9);
    }
}

TEST_CASE("converged search results satisfy the cycle theorems") {
    const int cards[3] = {2, 2, 2};
    const auto cycle = CycleSpec::identity(3);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto r = ipf_cycle_projection(random_joint(cards, seed), cycle, 300, 1e-9);
        if (!r.converged) continue;
        CHECK(verify_theorem2(r.best, cycle).verdict == Verdict::Pass);
        CHECK(verify_theorem3(r.best, cycle).verdict == Verdict::Pass);
    }
}

TEST_CASE("search rejects the settled two-variable case") {
    const int cards[2] = {2, 2};
    CHECK_THROWS_AS(search_nontrivial_cyclic(cards, CycleSpec::identity(2), 5, 1e-9), Error);
}

TEST_CASE("search is deterministic and its converged results have zero co-information") {
    const int cards[3] = {2, 2, 2};
    const auto cycle = CycleSpec::identity(3);
    const auto a = search_nontrivial_cyclic(cards, cycle, 8, 1e-9, 7);
    const auto b = search_nontrivial_cyclic(cards, cycle, 8, 1e-9, 7);
    CHECK(a.best.table == b.best.table);
    CHECK(a.residual == b.residual);
    CHECK(a.seed == b.seed);
    if (a.converged) {
        CHECK(std::abs(co_information(a.best)) <= 1e-6);
        CHECK(a.residual <= 1e-9);
    }
    CHECK_FALSE(validate(a.best).has_value());
}

TEST_CASE("search outputs stay on the simplex across many descent moves") {
    // regression: long coordinate-descent runs once drove cells negative
    const int cards[3] = {2, 2, 2};
    const auto cycle = CycleSpec::identity(3);
    for (std::uint64_t base : {1ull, 9ull, 30ull}) {
        const auto r = search_nontrivial_cyclic(cards, cycle, 10, 1e-9, base);
        CHECK_FALSE(validate(r.best).has_value());
        for (double p : r.best.table) CHECK(p >= 0.0);
        if (r.converged) CHECK(std::abs(co_information(r.best)) <= 1e-6);
    }
}
