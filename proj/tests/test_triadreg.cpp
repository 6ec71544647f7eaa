#include <doctest.h>

#include "hyperreg/triadreg.hpp"
#include "hyperreg/models.hpp"
#include "oracles.hpp"

using namespace hyperreg;

namespace {

Complex with_hyperedges(std::uint32_t n, const std::function<bool(std::uint32_t, std::uint32_t, std::uint32_t)>& keep) {
    std::vector<Hyperedge> tris;
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = 0; v < n; ++v) {
            edges.push_back({{0, u}, {1, v}});
            edges.push_back({{0, u}, {2, v}});
            edges.push_back({{1, u}, {2, v}});
            for (std::uint32_t w = 0; w < n; ++w)
                if (keep(u, v, w)) tris.push_back({{Vertex{0, u}, Vertex{1, v}, Vertex{2, w}}});
        }
    return Complex::close({n, n, n}, tris, edges);
}

Subtriad random_induced(std::mt19937_64& rng, const Triad& p) {
    std::array<std::vector<std::uint32_t>, 3> sets;
    std::bernoulli_distribution coin(0.6);
    for (int c = 0; c < 3; ++c) {
        for (std::uint32_t i = 0; i < p.vertices[c].size(); ++i)
            if (coin(rng)) sets[c].push_back(i);
        if (sets[c].empty()) sets[c].push_back(0);
    }
    return induced_subtriad(p, sets);
}

}  // namespace

TEST_SUITE("triadreg") {
TEST_CASE("triangle counts of small complete triads") {
    const auto c = Complex::complete({2, 2, 2});
    auto p = Triad::from_complex(c, 0, 1, 2);
    CHECK(count_triangles(p) == 8);
    p.ab.remove_edge(0, 0);
    CHECK(count_triangles(p) == 6);
    CHECK(list_triangles(p).size() == 6);
}

TEST_CASE("triangle count equals the naive triple loop") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 40; ++rep) {
        std::uniform_int_distribution<std::uint32_t> size(1, 10);
        const auto c = oracle::random_complex(rng, {size(rng), size(rng), size(rng)}, 0.05, 0.5);
        const auto p = Triad::from_complex(c, 0, 1, 2);
        const auto naive = oracle::triangles(p);
        CHECK(count_triangles(p, Execution::serial) == naive);
        CHECK(count_triangles(p, Execution::parallel) == naive);
    }
}

TEST_CASE("triad density: full, empty and triangle-free") {
    const auto full = Complex::complete({3, 3, 3});
    const auto p = Triad::from_complex(full, 0, 1, 2);
    CHECK(triad_density(full.hypergraph(), p).density == 1);
    CHECK(triad_density(Hypergraph3(9, {}), p).density == 0);
    const auto bare = Complex::close({2, 2, 2}, std::vector<Hyperedge>{}, std::vector<Edge>{{{0, 0}, {1, 0}}});
    const auto q = Triad::from_complex(bare, 0, 1, 2);
    const auto td = triad_density(full.hypergraph(), q);
    CHECK(td.triangles == 0);
    CHECK(td.density == 0);
}

TEST_CASE("density times triangles is the hyperedge count") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        const auto c = oracle::random_complex(rng, {5, 6, 4}, 0.3, 0.4);
        const auto p = Triad::from_complex(c, 0, 1, 2);
        const auto td = triad_density(c.hypergraph(), p);
        CHECK(td.density * td.triangles == td.hyperedges);
        CHECK(td.hyperedges == c.e3());
    }
}

TEST_CASE("tuple density degenerate tuples") {
    std::mt19937_64 rng(47);
    const auto c = oracle::random_complex(rng, {4, 4, 4}, 0.3, 0.5);
    const auto p = Triad::from_complex(c, 0, 1, 2);
    const auto g = c.hypergraph();
    const auto whole = triad_density(g, p);
    const auto one = tuple_density(g, p, {full_subtriad(p)});
    const auto two = tuple_density(g, p, {full_subtriad(p), full_subtriad(p)});
    CHECK(one.triangles == whole.triangles);
    CHECK(one.density == whole.density);
    CHECK(two.triangles == one.triangles);
    CHECK(two.density == one.density);
}

TEST_CASE("tuple density matches an explicit union of triangle sets") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 40; ++rep) {
        const auto c = oracle::random_complex(rng, {5, 6, 5}, 0.35, 0.5);
        const auto p = Triad::from_complex(c, 0, 1, 2);
        const auto g = c.hypergraph();
        SubtriadTuple q{random_induced(rng, p), random_induced(rng, p)};
        if (rep % 3 == 0) q.push_back(random_induced(rng, p));
        const auto [t, hit] = oracle::tuple_counts(g, p, q);
        const auto td = tuple_density(g, p, q);
        CHECK(td.triangles == t);
        CHECK(td.hyperedges == hit);
        if (t > 0) CHECK(td.density == Rational(hit, t));
    }
}

TEST_CASE("a subtriad edge outside the triad is a structural error") {
    const auto c = Complex::close({2, 2, 2}, std::vector<Hyperedge>{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}});
    const auto p = Triad::from_complex(c, 0, 1, 2);
    Subtriad q = full_subtriad(p);
    q.ab.add_edge(1, 1);
    CHECK_THROWS_AS(tuple_density(c.hypergraph(), p, {q}), StructuralError);
}

TEST_CASE("complement coupling on random tuples") {
    std::mt19937_64 rng(59);
    int checked = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const auto c = oracle::random_complex(rng, {5, 5, 5}, 0.4, 0.5);
        const auto p = Triad::from_complex(c, 0, 1, 2);
        const auto red = c.hypergraph();
        const auto blue = triad_complement(red, p);
        const SubtriadTuple q{random_induced(rng, p), random_induced(rng, p)};
        const auto r = tuple_density(red, p, q), b = tuple_density(blue, p, q);
        if (r.triangles == 0) continue;
        CHECK(r.density + b.density == 1);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("all triangles hyperedged with d3 = 1 passes") {
    const auto c = Complex::complete({5, 5, 5});
    const auto p = Triad::from_complex(c, 0, 1, 2);
    const auto v = check_triad_regular(c.hypergraph(), p, 1.0, 0.2, 2);
    CHECK(v.regular);
    CHECK_FALSE(v.witness);
}

TEST_CASE("no hyperedges with d3 = 0 passes") {
    const auto c = Complex::close({5, 5, 5}, std::vector<Hyperedge>{}, Complex::complete({5, 5, 5}).edges());
    const auto p = Triad::from_complex(c, 0, 1, 2);
    CHECK(check_triad_regular(c.hypergraph(), p, 0.0, 0.2, 2).regular);
}

TEST_CASE("planted half irregularity is found by the induced strategy") {
    const std::uint32_t n = 8;
    const auto c = with_hyperedges(n, [&](std::uint32_t u, std::uint32_t, std::uint32_t) { return u < n / 2; });
    const auto p = Triad::from_complex(c, 0, 1, 2);
    const auto g = c.hypergraph();
    const double d3 = to_double(triad_density(g, p).density);
    CHECK(d3 == doctest::Approx(0.5));
    const auto v = check_triad_regular(g, p, d3, 0.1, 1);
    REQUIRE_FALSE(v.regular);
    REQUIRE(v.witness);
    CHECK(witness_violates(g, p, *v.witness, d3, 0.1));
    const auto [t, hit] = oracle::tuple_counts(g, p, v.witness->tuple);
    CHECK(t == v.witness->triangles);
    CHECK(hit == v.witness->hyperedges);
    CHECK(static_cast<double>(t) >= 0.1 * static_cast<double>(count_triangles(p)));
}

TEST_CASE("the some-d form reports both extremes") {
    const std::uint32_t n = 6;
    const auto c = with_hyperedges(n, [&](std::uint32_t u, std::uint32_t, std::uint32_t) { return u < n / 2; });
    const auto p = Triad::from_complex(c, 0, 1, 2);
    const auto v = check_triad_regular_any(c.hypergraph(), p, 0.2, 1);
    REQUIRE_FALSE(v.regular);
    REQUIRE(v.witness);
    REQUIRE(v.opposite);
    CHECK(to_double(v.opposite->density) - to_double(v.witness->density) >= 0.4);
}

TEST_CASE("edge-sampled strategy finds the planted half as well") {
    const std::uint32_t n = 6;
    const auto c = with_hyperedges(n, [&](std::uint32_t u, std::uint32_t, std::uint32_t) { return u < n / 2; });
    const auto p = Triad::from_complex(c, 0, 1, 2);
    TriadRegOptions opt;
    opt.strategy = TriadStrategy::edge_sampled;
    opt.budget = 3000;
    opt.seed = 2;
    const auto v = check_triad_regular(c.hypergraph(), p, 0.5, 0.1, 1, opt);
    if (v.witness) CHECK(witness_violates(c.hypergraph(), p, *v.witness, 0.5, 0.1));
    CHECK(v.strategy == TriadStrategy::edge_sampled);
}

TEST_CASE("exhaustive-tiny is complete and capped") {
    const auto small = Complex::complete({2, 2, 1});
    const auto p = Triad::from_complex(small, 0, 1, 2);
    TriadRegOptions opt;
    opt.strategy = TriadStrategy::exhaustive_tiny;
    const auto v = check_triad_regular(small.hypergraph(), p, 1.0, 0.3, 1, opt);
    CHECK(v.regular);
    CHECK(v.complete);
    const auto big = Complex::complete({3, 3, 3});
    CHECK_THROWS_AS(check_triad_regular(big.hypergraph(), Triad::from_complex(big, 0, 1, 2), 1.0, 0.3, 1, opt), CapacityError);
}

TEST_CASE("exhaustive-tiny catches a one-hyperedge imbalance") {
    const auto c = Complex::close({2, 2, 1}, std::vector<Hyperedge>{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}},
                                  Complex::complete({2, 2, 1}).edges());
    const auto p = Triad::from_complex(c, 0, 1, 2);
    TriadRegOptions opt;
    opt.strategy = TriadStrategy::exhaustive_tiny;
    const auto v = check_triad_regular(c.hypergraph(), p, 0.25, 0.2, 1, opt);
    REQUIRE_FALSE(v.regular);
    CHECK(witness_violates(c.hypergraph(), p, *v.witness, 0.25, 0.2));
}

TEST_CASE("serial and parallel triad checks agree") {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 5; ++rep) {
        const auto c = oracle::random_complex(rng, {6, 6, 6}, 0.5, 0.6);
        const auto p = Triad::from_complex(c, 0, 1, 2);
        TriadRegOptions s, q;
        s.exec = Execution::serial;
        s.budget = q.budget = 300;
        const auto a = check_triad_regular_any(c.hypergraph(), p, 0.2, 2, s);
        const auto b = check_triad_regular_any(c.hypergraph(), p, 0.2, 2, q);
        CHECK(a.regular == b.regular);
        CHECK(a.candidates == b.candidates);
        if (a.witness && b.witness) CHECK(a.witness->density == b.witness->density);
    }
}

TEST_CASE("complex regularity: complete complex passes") {
    ComplexRegOptions opt;
    opt.d2 = 1;
    opt.d3 = 1;
    opt.delta2 = 0.3;
    opt.delta3 = 0.3;
    const auto rep = check_complex_regular(Complex::complete({4, 4, 4}), opt);
    CHECK(rep.regular);
    CHECK(rep.pairs.size() == 3);
    CHECK(rep.triples.size() == 1);
}

TEST_CASE("complex regularity: an edgeless pair is reported empty, not failing") {
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < 4; ++u)
        for (std::uint32_t v = 0; v < 4; ++v) edges.push_back({{0, u}, {1, v}});
    const auto c = Complex::close({4, 4, 4}, std::vector<Hyperedge>{}, edges);
    ComplexRegOptions opt;
    opt.d2 = 1;
    opt.delta2 = 0.3;
    const auto rep = check_complex_regular(c, opt);
    CHECK(rep.regular);
    int empty = 0;
    for (const auto& p : rep.pairs) empty += p.verdict.status == RegStatus::empty;
    CHECK(empty == 2);
    CHECK(rep.triples[0].status == TripleStatus::zero_density);
}

TEST_CASE("complex regularity of random hosts at n = 14, pinned seeds") {
    ComplexRegOptions opt;
    opt.d2 = 0.5;
    opt.d3 = 0.5;
    opt.delta2 = 0.45;
    opt.delta3 = 0.45;
    opt.graph.mode = SearchMode::sampled;
    opt.graph.budget = 2000;
    int regular = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = random_host({3, 14, {}, 0.5, 0.5, seed});
        const auto rep = check_complex_regular(g, opt);
        regular += rep.regular;
        for (const auto& t : rep.triples)
            if (t.verdict.witness) CHECK(witness_violates(g.hypergraph(), Triad::from_complex(g, t.i, t.j, t.k), *t.verdict.witness, 0.5, 0.45));
    }
    MESSAGE("regular random hosts: " << regular << " of 5");
    CHECK(regular >= 3);
}
}
