#include <doctest.h>

#include "hyperreg/density.hpp"
#include "oracles.hpp"

using namespace hyperreg;

namespace {

// Complete on the two diagonal half-blocks, empty across.
BipartiteGraph half_blocks(std::uint32_t n) {
    BipartiteGraph g(n, n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = 0; v < n; ++v)
            if ((u < n / 2) == (v < n / 2)) g.add_edge(u, v);
    return g;
}

std::vector<std::uint32_t> all(std::uint32_t n) {
    std::vector<std::uint32_t> v(n);
    for (std::uint32_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_SUITE("density") {
TEST_CASE("bipartite density basics") {
    CHECK(bipartite_density(BipartiteGraph::complete(4, 4)) == 1);
    CHECK(bipartite_density(BipartiteGraph(4, 4)) == 0);
    BipartiteGraph g(2, 2);
    g.add_edge(0, 0);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    CHECK(bipartite_density(g) == Rational(3, 4));
    CHECK(bipartite_density(g, all(2), std::vector<std::uint32_t>{1}) == Rational(1, 2));
}

TEST_CASE("empty subset is a domain error") {
    const auto g = BipartiteGraph::complete(3, 3);
    CHECK_THROWS_AS(bipartite_density(g, std::vector<std::uint32_t>{}, all(3)), DomainError);
}

TEST_CASE("density equals a naive double loop") {
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 30; ++rep) {
        const auto g = oracle::random_bipartite(rng, 1 + rep % 9, 2 + rep % 7, 0.4);
        std::size_t e = 0;
        for (std::uint32_t u = 0; u < g.left_size(); ++u)
            for (std::uint32_t v = 0; v < g.right_size(); ++v) e += g.has_edge(u, v);
        CHECK(bipartite_density(g) == Rational(e, g.left_size() * g.right_size()));
    }
}

TEST_CASE("complete bipartite is (1, 0.3)-regular") {
    const auto v = check_d_delta_regular(BipartiteGraph::complete(6, 6), 1.0, 0.3);
    CHECK(v.regular());
    CHECK_FALSE(v.witness);
}

TEST_CASE("half blocks give a witness at d = 1/2") {
    const auto g = half_blocks(8);
    const auto v = check_d_delta_regular(g, 0.5, 0.3);
    REQUIRE(v.status == RegStatus::irregular);
    REQUIRE(v.witness);
    CHECK(witness_violates_d_delta(g, *v.witness, 0.5, 0.3));
    CHECK(v.witness->x.size() >= 3);
    CHECK(v.witness->y.size() >= 3);
}

TEST_CASE("delta form: complete passes, half blocks fail, empty is its own status") {
    CHECK(check_delta_regular(BipartiteGraph::complete(7, 5), 0.2).regular());
    const auto g = half_blocks(8);
    const auto v = check_delta_regular(g, 0.3);
    REQUIRE(v.witness);
    CHECK(witness_violates_delta(g, *v.witness, 0.3));
    CHECK(check_delta_regular(BipartiteGraph(5, 5), 0.4).status == RegStatus::empty);
}

TEST_CASE("exhaustive mode refuses classes above the cap") {
    CHECK_THROWS_AS(check_delta_regular(BipartiteGraph::complete(19, 4), 0.5), CapacityError);
    GraphRegOptions opt;
    opt.mode = SearchMode::sampled;
    CHECK(check_delta_regular(BipartiteGraph::complete(19, 4), 0.5, opt).regular());
}

TEST_CASE("exhaustive verdicts agree with full subset enumeration") {
    std::mt19937_64 rng(17);
    int irregular = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t a = 3 + rep % 5, b = 3 + (rep / 5) % 5;
        const auto g = oracle::random_bipartite(rng, a, b, 0.6);
        if (g.edge_count() == 0) continue;
        const double delta = 0.3 + 0.1 * (rep % 4);
        const double d = 0.6;
        const auto v1 = check_d_delta_regular(g, d, delta);
        CHECK(v1.regular() == oracle::graph_regular(g, d, delta));
        const auto v2 = check_delta_regular(g, delta);
        CHECK(v2.regular() == oracle::graph_regular(g, -1, delta));
        irregular += !v1.regular();
        if (v1.witness) CHECK(witness_violates_d_delta(g, *v1.witness, d, delta));
        if (v2.witness) CHECK(witness_violates_delta(g, *v2.witness, delta));
    }
    CHECK(irregular > 0);
}

TEST_CASE("serial and parallel exhaustive searches agree") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        const auto g = oracle::random_bipartite(rng, 10, 9, 0.5);
        GraphRegOptions s, p;
        s.exec = Execution::serial;
        const auto vs = check_d_delta_regular(g, 0.5, 0.4, s);
        const auto vp = check_d_delta_regular(g, 0.5, 0.4, p);
        CHECK(vs.status == vp.status);
        CHECK(vs.subsets_examined == vp.subsets_examined);
    }
}

TEST_CASE("sampled mode never reports a witness the exhaustive search rules out") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = oracle::random_bipartite(rng, 8, 8, 0.7);
        const double delta = 0.45;
        const auto ex = check_delta_regular(g, delta);
        GraphRegOptions opt;
        opt.mode = SearchMode::sampled;
        opt.budget = 500;
        opt.seed = static_cast<std::uint64_t>(rep);
        const auto sa = check_delta_regular(g, delta, opt);
        if (ex.regular()) CHECK(sa.regular());
        if (sa.witness) CHECK(witness_violates_delta(g, *sa.witness, delta));
    }
}

TEST_CASE("sampled mode is reproducible under a seed") {
    std::mt19937_64 rng(31);
    const auto g = oracle::random_bipartite(rng, 30, 30, 0.5);
    GraphRegOptions opt;
    opt.mode = SearchMode::sampled;
    opt.budget = 300;
    opt.seed = 4;
    const auto a = check_d_delta_regular(g, 0.5, 0.2, opt);
    const auto b = check_d_delta_regular(g, 0.5, 0.2, opt);
    CHECK(a.status == b.status);
    CHECK(a.subsets_examined == b.subsets_examined);
    if (a.witness) CHECK(a.witness->x == b.witness->x);
}

TEST_CASE("random 16x16 at p = 0.5 is decided by full enumeration") {
    std::mt19937_64 rng(2024);
    const auto g = oracle::random_bipartite(rng, 16, 16, 0.5);
    const auto v = check_d_delta_regular(g, 0.5, 0.45);
    CHECK(v.mode == SearchMode::exhaustive);
    if (v.witness) CHECK(witness_violates_d_delta(g, *v.witness, 0.5, 0.45));
}

TEST_CASE("minimum subset size rounds up") {
    CHECK(min_subset_size(0.3, 10) == 3);
    CHECK(min_subset_size(0.31, 10) == 4);
    CHECK(min_subset_size(0.01, 5) == 1);
}
}
