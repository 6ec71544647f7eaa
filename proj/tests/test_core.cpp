#include <doctest.h>

#include "oracles.hpp"

using namespace hyperreg;

namespace {

Complex k3() { return Complex::close({1, 1, 1}, std::vector<Hyperedge>{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}}); }

}  // namespace

TEST_SUITE("core") {
TEST_CASE("closure adds the three pairs of a lone hyperedge") {
    const auto c = k3();
    CHECK(c.e2() == 3);
    CHECK(c.e3() == 1);
    CHECK(c.has_edge({0, 0}, {1, 0}));
    CHECK(c.has_edge({2, 0}, {1, 0}));
    CHECK(c.has_hyperedge({2, 0}, {0, 0}, {1, 0}));
}

TEST_CASE("empty complex") {
    const auto c = Complex::close({2, 3}, std::vector<Hyperedge>{});
    CHECK(c.e2() == 0);
    CHECK(c.e3() == 0);
    CHECK(c.vertex_count() == 5);
    const auto p = degree_profile(c);
    CHECK(p.max_degree == 0);
    for (auto d : p.complex_degree) CHECK(d == 0);
}

TEST_CASE("closing an already closed complex is a fixed point") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const auto c = oracle::random_complex(rng, {3, 2, 3, 2}, 0.2, 0.2);
        const auto again = Complex::close(c.class_sizes(), c.hyperedges(), c.edges());
        CHECK(again == c);
        CHECK(Complex::strict(c.class_sizes(), c.hyperedges(), c.edges()) == c);
    }
}

TEST_CASE("same-class triple is a structural error") {
    const std::vector<Hyperedge> bad{{{Vertex{0, 0}, Vertex{0, 1}, Vertex{1, 0}}}};
    CHECK_THROWS_AS(Complex::close({2, 1}, bad), StructuralError);
}

TEST_CASE("strict constructor rejects missing closure") {
    const std::vector<Hyperedge> t{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}};
    const std::vector<Edge> two{{{0, 0}, {1, 0}}, {{0, 0}, {2, 0}}};
    CHECK_THROWS_AS(Complex::strict({1, 1, 1}, t, two), StructuralError);
}

TEST_CASE("parser: single hyperedge file") {
    const auto c = parse_complex("# one hyperedge\nk 3\nclass 0 1\nclass 1 1\nclass 2 1\n"
                                 "edge 0 0 1 0\nedge 0 0 2 0\nedge 1 0 2 0\ntri 0 0 1 0 2 0\n");
    CHECK(c.vertex_count() == 3);
    CHECK(c.e2() == 3);
    CHECK(c.e3() == 1);
}

TEST_CASE("parser: hyperedge without its edges is rejected") {
    CHECK_THROWS_AS(parse_complex("k 3\nclass 0 1\nclass 1 1\nclass 2 1\ntri 0 0 1 0 2 0\n"), ParseError);
}

TEST_CASE("parser: out-of-range vertex reports its line") {
    try {
        parse_complex("k 2\nclass 0 1\nclass 1 1\nedge 0 0 1 5\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("serialization round trip is exact") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const auto c = oracle::random_complex(rng, {4, 3, 5}, 0.15, 0.2);
        const auto text = serialize_complex(c);
        const auto back = parse_complex(text);
        CHECK(back == c);
        CHECK(serialize_complex(back) == text);
    }
}

TEST_CASE("degree profile of one hyperedge") {
    const auto p = degree_profile(k3());
    for (std::size_t g = 0; g < 3; ++g) {
        CHECK(p.graph_degree[g] == 2);
        CHECK(p.hyper_degree[g] == 1);
        CHECK(p.complex_degree[g] == 2);
    }
    CHECK(p.max_degree == 2);
}

TEST_CASE("two hyperedges sharing a vertex") {
    const std::vector<Hyperedge> t{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}, {{Vertex{0, 0}, Vertex{1, 1}, Vertex{2, 1}}}};
    const auto c = Complex::close({1, 2, 2}, t);
    const auto p = degree_profile(c);
    const auto v = c.global({0, 0});
    CHECK(p.hyper_degree[v] == 2);
    CHECK(p.graph_degree[v] == 4);
    CHECK(p.complex_degree[v] == 4);
}

TEST_CASE("degree profile matches a recount from the raw sets") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 100; ++rep) {
        std::uniform_int_distribution<std::uint32_t> size(1, 7);
        std::vector<std::uint32_t> sizes{size(rng), size(rng), size(rng), size(rng)};
        const auto c = oracle::random_complex(rng, sizes, 0.1, 0.1);
        const auto p = degree_profile(c);
        std::size_t max = 0;
        for (const auto v : c.vertices()) {
            std::size_t gd = 0, hd = 0;
            for (const auto w : c.vertices())
                if (w.cls != v.cls && c.has_edge(v, w)) ++gd;
            for (const auto& t : c.hyperedges())
                hd += t.v[0] == v || t.v[1] == v || t.v[2] == v;
            CHECK(p.graph_degree[c.global(v)] == gd);
            CHECK(p.hyper_degree[c.global(v)] == hd);
            CHECK(p.complex_degree[c.global(v)] == std::max(gd, hd));
            max = std::max({max, gd, hd});
        }
        CHECK(p.max_degree == max);
    }
}

TEST_CASE("every hyperedge spans a triangle of the graph") {
    std::mt19937_64 rng(3);
    const auto c = oracle::random_complex(rng, {5, 5, 5, 5}, 0.2, 0.0);
    for (const auto& t : c.hyperedges()) {
        CHECK(c.has_edge(t.v[0], t.v[1]));
        CHECK(c.has_edge(t.v[1], t.v[2]));
        CHECK(c.has_edge(t.v[0], t.v[2]));
    }
}

TEST_CASE("induced subcomplex keeps classes and maps back") {
    std::mt19937_64 rng(8);
    const auto c = oracle::random_complex(rng, {3, 3, 3}, 0.4, 0.2);
    const std::vector<Vertex> keep{{2, 1}, {0, 2}, {1, 0}, {0, 0}};
    const auto s = induced_subcomplex(c, keep);
    CHECK(s.complex.class_count() == 3);
    CHECK(s.complex.vertex_count() == keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) CHECK(s.original[s.complex.global(s.mapping[i])] == keep[i]);
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b)
            if (keep[a].cls != keep[b].cls) CHECK(s.complex.has_edge(s.mapping[a], s.mapping[b]) == c.has_edge(keep[a], keep[b]));
}

TEST_CASE("hypergraph view uses global ids") {
    const auto h = k3().hypergraph();
    CHECK(h.vertex_count() == 3);
    CHECK(h.contains(2, 0, 1));
    CHECK_FALSE(Hypergraph3(4, {{0, 1, 2}}).contains(0, 1, 3));
}
}
