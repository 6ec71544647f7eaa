#include <doctest.h>

#include <numeric>

#include "hyperreg/counting.hpp"
#include "hyperreg/models.hpp"
#include "oracles.hpp"

using namespace hyperreg;

namespace {

Complex single_vertex() { return Complex::close({1, 0, 0}, std::vector<Hyperedge>{}); }

Complex edge01() { return Complex::close({1, 1, 0}, std::vector<Hyperedge>{}, std::vector<Edge>{{{0, 0}, {1, 0}}}); }

Complex k3() { return Complex::close({1, 1, 1}, std::vector<Hyperedge>{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}}); }

Complex edges_only(const std::vector<std::uint32_t>& sizes) {
    return Complex::close(sizes, std::vector<Hyperedge>{}, Complex::complete(sizes).edges());
}

// Pattern with one vertex per class and random hyperedges.
Complex one_per_class_pattern(std::mt19937_64& rng, std::uint32_t k, double p) {
    return oracle::random_complex(rng, std::vector<std::uint32_t>(k, 1), p, 0.2);
}

std::vector<Vertex> random_keep(std::mt19937_64& rng, const Complex& hp) {
    std::vector<Vertex> keep;
    std::bernoulli_distribution coin(0.5);
    for (const auto v : hp.vertices())
        if (coin(rng)) keep.push_back(v);
    return keep;
}

}  // namespace

TEST_SUITE("counting") {
TEST_CASE("small exact counts") {
    std::mt19937_64 rng(71);
    const auto g = oracle::random_complex(rng, {5, 4, 3}, 0.3, 0.3);
    CHECK(count_copies(single_vertex(), g) == 5);
    CHECK(count_copies(edge01(), g) == g.graph().pair(0, 1).edge_count());

    const std::vector<Hyperedge> two{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}, {{Vertex{0, 1}, Vertex{1, 1}, Vertex{2, 1}}}};
    const auto host = Complex::close({2, 2, 2}, two, Complex::complete({2, 2, 2}).edges());
    CHECK(count_copies(k3(), host) == 2);
}

TEST_CASE("graph copies ignore hyperedges") {
    const auto host = edges_only({2, 2, 2});
    CHECK(count_graph_copies(k3(), host) == 8);
    CHECK(count_copies(k3(), host) == 0);
}

TEST_CASE("empty pattern has one copy") {
    const auto empty = Complex::close({0, 0, 0}, std::vector<Hyperedge>{});
    CHECK(count_copies(empty, Complex::complete({3, 3, 3})) == 1);
    CHECK(count_graph_copies(empty, Complex::complete({3, 3, 3})) == 1);
}

TEST_CASE("counts equal brute-force enumeration of labelled maps") {
    std::mt19937_64 rng(73);
    for (int rep = 0; rep < 60; ++rep) {
        std::uniform_int_distribution<std::uint32_t> hs(1, 6), ps(0, 2);
        const auto g = oracle::random_complex(rng, {hs(rng), hs(rng), hs(rng)}, 0.35, 0.3);
        const auto h = oracle::random_complex(rng, {ps(rng), ps(rng), ps(rng)}, 0.5, 0.3);
        const auto brute = oracle::copies(h, g);
        CHECK(count_copies(h, g, {}, Execution::serial) == brute);
        CHECK(count_copies(h, g, {}, Execution::parallel) == brute);
        CHECK(count_graph_copies(h, g) == oracle::copies(h, g, {}, true));
        CHECK(count_copies(h, g) <= count_graph_copies(h, g));
    }
}

TEST_CASE("class maps send several pattern classes into one host class") {
    std::mt19937_64 rng(79);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = oracle::random_complex(rng, {4, 4, 4}, 0.4, 0.4);
        const auto h = oracle::random_complex(rng, {1, 1, 1, 1}, 0.0, 0.5);
        const std::vector<std::uint32_t> map{0, 1, 2, 0};
        CHECK(count_copies(h, g, map) == oracle::copies(h, g, map));
    }
}

TEST_CASE("class-map mismatch is a structural error") {
    const std::vector<std::uint32_t> bad{0, 1, 7};
    CHECK_THROWS_AS(count_copies(k3(), Complex::complete({2, 2, 2}), bad), StructuralError);
    const std::vector<std::uint32_t> short_map{0};
    CHECK_THROWS_AS(count_copies(k3(), Complex::complete({2, 2, 2}), short_map), StructuralError);
}

TEST_CASE("extension counts: identity and vertex to edge") {
    std::mt19937_64 rng(83);
    const auto g = oracle::random_complex(rng, {5, 5, 5}, 0.3, 0.3);
    const auto hp = k3();
    const ExtensionPair same{hp, hp, hp.vertices()};
    CopySearch(hp, g).for_each([&](const Embedding& phi) {
        CHECK(count_extensions(same, phi, g) == 1);
        return true;
    });
    const auto e = induced_pair(edge01(), std::vector<Vertex>{{0, 0}});
    for (std::uint32_t u = 0; u < 5; ++u)
        CHECK(count_extensions(e, Embedding{Vertex{0, u}}, g) == g.graph().neighbours({0, u}, 1).count());
}

TEST_CASE("non-induced pair is rejected") {
    const auto h = Complex::close({1, 1, 1}, std::vector<Hyperedge>{}, std::vector<Edge>{{{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}});
    const ExtensionPair e{h, k3(), h.vertices()};
    CHECK_THROWS_AS(validate_extension(e), DomainError);
}

TEST_CASE("extension of a non-copy is a domain error") {
    const auto g = edges_only({2, 2, 2});
    const auto e = induced_pair(k3(), std::vector<Vertex>{{0, 0}, {1, 0}});
    CHECK_THROWS_AS(count_extensions(e, Embedding{Vertex{0, 0}, Vertex{0, 1}}, g), DomainError);
}

TEST_CASE("extension sum rule") {
    std::mt19937_64 rng(89);
    for (int rep = 0; rep < 30; ++rep) {
        const auto g = oracle::random_complex(rng, {5, 6, 5}, 0.4, 0.3);
        const auto hp = oracle::random_complex(rng, {2, 1, 2}, 0.5, 0.3);
        const auto e = induced_pair(hp, random_keep(rng, hp));
        const auto xs = extension_counts(e, g);
        const Count sum = std::accumulate(xs.begin(), xs.end(), Count(0));
        CHECK(sum == count_copies(hp, g));
        CHECK(xs.size() == count_copies(e.h, g));
    }
}

TEST_CASE("predicted counts") {
    CHECK(predicted_count(k3(), 30, 0.5, 0.5) == doctest::Approx(1687.5));
    CHECK(predicted_extension(single_vertex(), edge01(), 10, 0.5, 0.5) == doctest::Approx(5.0));
    CHECK(predicted_count(Complex::close({0, 0, 0}, std::vector<Hyperedge>{}), 17, 0.3, 0.2) == doctest::Approx(1.0));
    const std::vector<double> d{0.3};
    CHECK(predicted_count_per_edge(k3(), 10, 1.0, d) == doctest::Approx(300.0));
    const std::vector<double> same{0.4};
    CHECK(predicted_count_per_edge(k3(), 12, 0.7, same) == doctest::Approx(predicted_count(k3(), 12, 0.7, 0.4)));
}

TEST_CASE("predicted count per edge follows the product rule") {
    // K4^(3) minus two faces: two hyperedges sharing a pair
    const std::vector<Hyperedge> t{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}, {{Vertex{0, 0}, Vertex{1, 0}, Vertex{3, 0}}}};
    const auto h = Complex::close({1, 1, 1, 1}, t);
    const std::vector<double> d{0.2, 0.5};
    const double expect = std::exp(4 * std::log(9.0) + h.e2() * std::log(0.6) + std::log(0.2) + std::log(0.5));
    CHECK(predicted_count_per_edge(h, 9, 0.6, d) == doctest::Approx(expect).epsilon(1e-12));
    const std::vector<double> missing{0.2};
    CHECK_THROWS_AS(predicted_count_per_edge(h, 9, 0.6, missing), DomainError);
}

TEST_CASE("predicted count matches the log form and is multiplicative") {
    std::mt19937_64 rng(97);
    for (int rep = 0; rep < 20; ++rep) {
        const auto a = oracle::random_complex(rng, {1, 2, 1}, 0.5, 0.3);
        const double n = 7, d2 = 0.6, d3 = 0.4;
        const double log_form = std::exp(a.vertex_count() * std::log(n) + a.e2() * std::log(d2) + a.e3() * std::log(d3));
        CHECK(predicted_count(a, n, d2, d3) == doctest::Approx(log_form).epsilon(1e-12));
        // disjoint union: place a copy of `a` in three fresh classes
        std::vector<Hyperedge> tris = a.hyperedges();
        std::vector<Edge> edges = a.edges();
        for (auto t : a.hyperedges()) {
            for (auto& v : t.v) v.cls += 3;
            tris.push_back(t);
        }
        for (auto e : a.edges()) {
            e.a.cls += 3;
            e.b.cls += 3;
            edges.push_back(e);
        }
        const auto u = Complex::close({1, 2, 1, 1, 2, 1}, tris, edges);
        const double p = predicted_count(a, n, d2, d3);
        CHECK(predicted_count(u, n, d2, d3) == doctest::Approx(p * p).epsilon(1e-12));
    }
}

TEST_CASE("partial complement: empty D and full D") {
    const auto g = Complex::complete({3, 3, 3});
    CHECK(partial_complement(g, k3(), {}) == g);
    const auto flipped = partial_complement(g, k3(), k3().hyperedges());
    CHECK(flipped.e3() == 0);
    CHECK(flipped.e2() == g.e2());
}

TEST_CASE("partial complement rejects repeated classes") {
    const auto h = Complex::close({2, 1, 1}, std::vector<Hyperedge>{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}},
                                  std::vector<Edge>{{{0, 1}, {1, 0}}});
    CHECK_THROWS_AS(partial_complement(Complex::complete({3, 3, 3}), h, h.hyperedges()), DomainError);
}

TEST_CASE("partial complement identity") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 15; ++rep) {
        const auto g = oracle::random_complex(rng, {4, 5, 4, 3}, 0.4, 0.4);
        const auto h = one_per_class_pattern(rng, 4, 0.6);
        const auto& e3 = h.hyperedges();
        Count sum = 0;
        for (std::uint32_t mask = 0; mask < (1u << e3.size()); ++mask) {
            std::vector<Hyperedge> d;
            for (std::size_t i = 0; i < e3.size(); ++i)
                if ((mask >> i) & 1u) d.push_back(e3[i]);
            sum += count_copies(h, partial_complement(g, h, d));
        }
        CHECK(sum == count_graph_copies(h, g));
    }
}

TEST_CASE("blow-up with unit multiplicities is the identity") {
    std::mt19937_64 rng(103);
    const auto g = oracle::random_complex(rng, {3, 4, 2}, 0.3, 0.3);
    const std::vector<std::uint32_t> ones{1, 1, 1};
    CHECK(blow_up(g, ones) == g);
}

TEST_CASE("blow-up sandwich") {
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = oracle::random_complex(rng, {3, 3, 3}, 0.5, 0.3);
        const auto h = oracle::random_complex(rng, {1u + rep % 2u, 1u, 1u + (rep / 2u) % 2u}, 0.5, 0.3);
        const auto s = blow_up_sandwich(h, g);
        CHECK(s.lower <= s.blown);
        CHECK(s.blown <= s.upper);
        CHECK(s.holds);
    }
}

TEST_CASE("second moment: trivial extension and vertex to edge") {
    std::mt19937_64 rng(109);
    const auto g = oracle::random_complex(rng, {6, 5, 4}, 0.3, 0.4);
    const ExtensionPair same{k3(), k3(), k3().vertices()};
    const auto s = second_moment_check(same, g);
    CHECK(s.s1 == count_copies(k3(), g));
    CHECK(s.s2 == s.s1);
    CHECK(s.glued == s.s1);

    const auto e = induced_pair(edge01(), std::vector<Vertex>{{0, 0}});
    const auto r = second_moment_check(e, g);
    Count deg_sq = 0;
    for (std::uint32_t u = 0; u < 6; ++u) {
        const auto d = g.graph().neighbours({0, u}, 1).count();
        deg_sq += d * d;
    }
    CHECK(r.s2 == deg_sq);
    CHECK(r.holds);
    CHECK(glued_complex(e).e2() == 2);
}

TEST_CASE("second moment inequalities on random instances") {
    std::mt19937_64 rng(113);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = oracle::random_complex(rng, {4, 4, 4}, 0.5, 0.4);
        const auto hp = oracle::random_complex(rng, {1, 1, 2}, 0.6, 0.3);
        const auto e = induced_pair(hp, random_keep(rng, hp));
        const auto s = second_moment_check(e, g);
        CHECK(s.sum_rule);
        CHECK(s.glued <= s.s2);
        CHECK(s.s2 <= s.glued + s.overlap_bound);
    }
}

TEST_CASE("moment concentration examples") {
    const std::vector<double> flat(50, 4.0);
    const auto a = moment_concentration(flat, 4.0, 0.01, 0.1);
    CHECK(a.pass);
    CHECK(a.outliers == 0);
    std::vector<double> alt;
    for (int i = 0; i < 50; ++i) alt.push_back(i % 2 ? 8.0 : 0.0);
    const auto b = moment_concentration(alt, 4.0, 0.5, 0.1);
    CHECK(b.first_moment);
    CHECK_FALSE(b.second_moment);
    CHECK_FALSE(b.pass);
    CHECK(b.outliers == 50);
}

TEST_CASE("is_copy accepts every enumerated copy") {
    std::mt19937_64 rng(127);
    const auto g = oracle::random_complex(rng, {4, 4, 4}, 0.5, 0.3);
    const auto h = oracle::random_complex(rng, {2, 1, 1}, 0.6, 0.2);
    std::size_t seen = 0;
    CopySearch(h, g).for_each([&](const Embedding& phi) {
        CHECK(is_copy(h, g, phi));
        ++seen;
        return true;
    });
    CHECK(seen == count_copies(h, g));
}
}
