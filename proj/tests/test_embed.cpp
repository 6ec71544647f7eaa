#include <doctest.h>

#include <set>

#include "hyperreg/embed.hpp"
#include "hyperreg/models.hpp"
#include "oracles.hpp"

using namespace hyperreg;

namespace {

Complex k3() { return Complex::close({1, 1, 1}, std::vector<Hyperedge>{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}}); }

std::set<Vertex> verts(const InducedSubcomplex& s) { return {s.original.begin(), s.original.end()}; }

// Path v0 - v1 - v2 - v3 - v4 with one vertex per class.
Complex path5() {
    std::vector<Edge> e;
    for (std::uint32_t i = 0; i + 1 < 5; ++i) e.push_back({{i, 0}, {i + 1, 0}});
    return Complex::close({1, 1, 1, 1, 1}, std::vector<Hyperedge>{}, e);
}

Complex edges_only(const std::vector<std::uint32_t>& sizes) {
    return Complex::close(sizes, std::vector<Hyperedge>{}, Complex::complete(sizes).edges());
}

}  // namespace

TEST_SUITE("embed") {
TEST_CASE("neighbourhood complexes of a single hyperedge") {
    const auto nc = neighborhood_complexes(k3(), {0, 0});
    CHECK(verts(nc.nh) == std::set<Vertex>{{1, 0}, {2, 0}});
    CHECK(nc.nh.complex.e2() == 1);
    CHECK(nc.b.complex == k3());
    CHECK(nc.nh_star.complex.vertex_count() == 0);
    CHECK(nc.hh_minus.complex.vertex_count() == 0);
    CHECK(nc.hh.complex.vertex_count() == 2);
}

TEST_CASE("neighbourhood complexes along a path") {
    const auto nc = neighborhood_complexes(path5(), {0, 0});
    CHECK(verts(nc.nh) == std::set<Vertex>{{1, 0}});
    CHECK(verts(nc.nh_star) == std::set<Vertex>{{3, 0}});
    CHECK(verts(nc.f_prime) == std::set<Vertex>{{1, 0}, {2, 0}, {3, 0}});
    CHECK(verts(nc.hh_star) == std::set<Vertex>{{3, 0}, {4, 0}});
    CHECK(verts(nc.hh_prime) == std::set<Vertex>{{4, 0}});
    CHECK(verts(nc.hh_minus) == std::set<Vertex>{{2, 0}, {3, 0}, {4, 0}});
    CHECK(nc.distance == std::vector<int>{-1, 0, 1, 2, 3});
}

TEST_CASE("isolated vertex and absent vertex") {
    const auto h = Complex::close({2, 1, 1}, std::vector<Hyperedge>{{{Vertex{0, 0}, Vertex{1, 0}, Vertex{2, 0}}}});
    const auto nc = neighborhood_complexes(h, {0, 1});
    CHECK(nc.nh.complex.vertex_count() == 0);
    CHECK(nc.hh.complex == k3());
    CHECK_THROWS_AS(neighborhood_complexes(h, {1, 3}), DomainError);
}

TEST_CASE("neighbourhood complexes agree with a distance oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        PatternParams p;
        p.sizes = {3, 3, 3, 3};
        p.max_degree = 4;
        p.target_hyperedges = 5;
        p.extra_edges = 2;
        p.seed = seed;
        const auto h = random_pattern(p).complex;
        const auto delta = degree_profile(h).max_degree;
        for (const auto v : h.vertices()) {
            const auto nc = neighborhood_complexes(h, v);
            const auto d = oracle::distances(nc.hh.complex);
            const auto nh = verts(nc.nh);
            std::set<Vertex> star, within2;
            for (std::size_t i = 0; i < nc.hh.original.size(); ++i) {
                int best = -1;
                for (std::size_t j = 0; j < nc.hh.original.size(); ++j)
                    if (nh.count(nc.hh.original[j]) && d[j][i] >= 0 && (best < 0 || d[j][i] < best)) best = d[j][i];
                const auto orig = nc.hh.original[i];
                CHECK(nc.distance[h.global(orig)] == best);
                if (best == 2) star.insert(orig);
                if (best >= 0 && best <= 2) within2.insert(orig);
            }
            CHECK(verts(nc.nh_star) == star);
            CHECK(verts(nc.f_prime) == within2);
            CHECK_FALSE(verts(nc.f_prime).count(v));
            CHECK(nc.nh_star.complex.vertex_count() <= delta * delta * delta);
            auto b = nh;
            b.insert(v);
            CHECK(verts(nc.b) == b);
            for (const auto x : verts(nc.hh_minus)) CHECK_FALSE(nh.count(x));
            const auto bound = delta * nc.nh_star.complex.vertex_count();
            CHECK(nc.hh_star.complex.e2() - nc.hh_prime.complex.e2() <= bound);
            CHECK(nc.hh_star.complex.e3() - nc.hh_prime.complex.e3() <= bound);
            CHECK(bound <= delta * delta * delta * delta);
        }
    }
}

TEST_CASE("embedding order covers every vertex once") {
    PatternParams p;
    p.sizes = {2, 2, 2, 2};
    p.seed = 3;
    const auto h = random_pattern(p).complex;
    auto order = embedding_order(h);
    CHECK(order.size() == h.vertex_count());
    std::sort(order.begin(), order.end());
    for (std::uint32_t i = 0; i < order.size(); ++i) CHECK(order[i] == i);
}

TEST_CASE("embed examples") {
    const auto r = embed(k3(), Complex::complete({2, 2, 2}));
    REQUIRE(r.embedding);
    CHECK(is_copy(k3(), Complex::complete({2, 2, 2}), *r.embedding));
    CHECK_THROWS_AS(embed(k3(), edges_only({2, 2, 2})), DomainError);
    CHECK_THROWS_AS(check_respects_partition(k3(), edges_only({2, 2, 2})), DomainError);
}

TEST_CASE("pattern class larger than c n is rejected") {
    const auto h = Complex::close({3, 1, 1}, std::vector<Hyperedge>{});
    EmbedderConfig cfg;
    cfg.c = 0.5;
    CHECK_THROWS_AS(embed(h, Complex::complete({4, 4, 4}), cfg), DomainError);
}

TEST_CASE("embed succeeds exactly when a copy exists") {
    std::mt19937_64 rng(2718);
    int found = 0, missing = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::uniform_int_distribution<std::uint32_t> hs(3, 7), ps(1, 3);
        const auto g = oracle::random_complex(rng, {hs(rng), hs(rng), hs(rng)}, 0.02 + 0.001 * rep, 0.3);
        const auto h = oracle::random_complex(rng, {ps(rng), ps(rng), ps(rng)}, 0.4, 0.3);
        const auto count = count_copies(h, g);
        EmbedderConfig cfg;
        cfg.exec = rep % 2 ? Execution::parallel : Execution::serial;
        try {
            const auto r = embed(h, g, cfg);
            CHECK(r.embedding.has_value() == (count > 0));
            if (r.embedding) {
                CHECK(is_copy(h, g, *r.embedding));
                ++found;
            } else {
                REQUIRE(r.failure);
                ++missing;
            }
        } catch (const DomainError&) {
            CHECK(count == 0);
            ++missing;
        }
    }
    CHECK(found > 20);
    CHECK(missing > 20);
}

TEST_CASE("serial and parallel embedders return the same copy") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = random_host({4, 8, {}, 0.7, 0.6, seed});
        PatternParams p;
        p.sizes = {2, 2, 1, 1};
        p.target_hyperedges = 3;
        p.seed = seed;
        const auto h = random_pattern(p).complex;
        EmbedderConfig s, q;
        s.exec = Execution::serial;
        try {
            CHECK(embed(h, g, s).embedding == embed(h, g, q).embedding);
        } catch (const DomainError&) {
        }
    }
}

TEST_CASE("count ratio examples") {
    const auto one = Complex::close({1, 0, 0}, std::vector<Hyperedge>{});
    const auto a = count_ratio_check(one, {0, 0}, Complex::complete({6, 6, 6}), 0.2, 0.5, 0.5);
    CHECK(a.lhs == 6);
    CHECK(a.hh_count == 1);
    CHECK(a.rhs == doctest::Approx(0.8 * 6));
    CHECK(a.pass);
    const auto b = count_ratio_check(k3(), {0, 0}, Complex::complete({10, 10, 10}), 0.3, 1.0, 1.0);
    CHECK(b.lhs == 1000);
    CHECK(b.hh_count == 100);
    CHECK(b.pass);
}

TEST_CASE("count ratio on random hosts") {
    int passes = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = random_host({3, 40, {}, 0.6, 0.6, seed});
        passes += count_ratio_check(k3(), {0, 0}, g, 0.3, 0.6, 0.6).pass;
    }
    CHECK(passes >= 4);
}

TEST_CASE("typicality on the complete complex") {
    const auto g = Complex::complete({8, 8, 8});
    const auto t = typicality_report(k3(), {0, 0}, g, 0.1, 8, 1.0, 1.0);
    CHECK(t.copies == 64);
    CHECK(t.fraction == doctest::Approx(1.0));
    CHECK(t.threshold == doctest::Approx(0.9 * t.predicted));
    CHECK(t.predicted == doctest::Approx(predicted_extension(
                             induced_subcomplex(k3(), std::vector<Vertex>{{1, 0}, {2, 0}}).complex, k3(), 8, 1.0, 1.0)));
}

TEST_CASE("typicality drops when hyperedges vanish around half a class") {
    std::vector<Hyperedge> tris;
    const auto full = Complex::complete({8, 8, 8});
    for (const auto& t : full.hyperedges())
        if (t.v[1].idx >= 4) tris.push_back(t);
    const auto g = Complex::close({8, 8, 8}, tris, full.edges());
    const auto t = typicality_report(k3(), {0, 0}, g, 0.1, 8, 1.0, 1.0);
    CHECK(t.copies == 64);
    CHECK(t.typical == 32);
    CHECK(t.fraction == doctest::Approx(0.5));
    for (const auto& copy : t.atypical) CHECK(copy[0].idx < 4);
}

TEST_CASE("usefulness on the complete complex") {
    const auto u = usefulness_report(k3(), {0, 0}, Complex::complete({8, 8, 8}), 0.2, 1.0, 8);
    CHECK(u.copies == 64);
    CHECK(u.fraction == doctest::Approx(1.0));
    CHECK(u.conditions > 0);
}

TEST_CASE("a low-degree host vertex makes its copies useless") {
    const auto full = Complex::complete({8, 8, 8});
    std::vector<Edge> edges;
    for (const auto& e : full.edges())
        if (!(e.a == Vertex{1, 0} && e.b.cls == 2 && e.b.idx > 0)) edges.push_back(e);
    const auto g = Complex::close({8, 8, 8}, std::vector<Hyperedge>{}, edges);
    const auto h = Complex::close({1, 1, 1}, std::vector<Hyperedge>{}, k3().edges());
    const auto u = usefulness_report(h, {0, 0}, g, 0.2, 1.0, 8);
    CHECK(u.copies == 57);
    CHECK(u.useful == 56);
    REQUIRE_FALSE(u.offenders.empty());
    for (const auto& o : u.offenders)
        CHECK(std::find(o.copy.begin(), o.copy.end(), Vertex{1, 0}) != o.copy.end());
}
}
