#include "hyperreg/models.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hyperreg/rng.hpp"

namespace hyperreg {

namespace {

constexpr std::uint64_t kEdgeStream = 0x32656467652d6472ULL;
constexpr std::uint64_t kTriStream = 0x3374726961642d64ULL;
constexpr std::uint64_t kPatternStream = 0x7061747465726e73ULL;

std::uint64_t pair_stream(std::uint32_t i, std::uint32_t j) {
    return kEdgeStream ^ mix64((static_cast<std::uint64_t>(i) << 32) | j);
}

std::uint64_t triple_stream(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    return kTriStream ^ mix64((static_cast<std::uint64_t>(i) << 42) ^ (static_cast<std::uint64_t>(j) << 21) ^ k);
}

void check_probability(double p, const char* name) {
    if (!(p >= 0 && p <= 1)) throw DomainError(std::string(name) + " must lie in [0,1]");
}

Complex generate(const HostParams& p, const Planting* plant, Execution exec) {
    check_probability(p.d2, "d2");
    check_probability(p.d3, "d3");
    const auto sizes = p.class_sizes();
    const auto k = static_cast<std::uint32_t>(sizes.size());
    std::vector<std::vector<char>> planted(k);
    for (std::uint32_t c = 0; c < k; ++c) planted[c].assign(sizes[c], 0);
    if (plant) {
        check_probability(plant->density, "planted density");
        for (const auto& v : plant->subset) {
            if (v.cls >= k || v.idx >= sizes[v.cls])
                throw StructuralError("planted vertex " + to_string(v) + " is outside the host");
            planted[v.cls][v.idx] = 1;
        }
    }

    std::vector<std::array<std::uint32_t, 2>> pairs;
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j) pairs.push_back({i, j});
    std::vector<std::vector<Edge>> edge_parts(pairs.size());
    KPartiteGraph graph(sizes);
    auto draw_pair = [&](std::size_t pi) {
        const auto [i, j] = pairs[pi];
        const auto stream = pair_stream(i, j);
        for (std::uint32_t u = 0; u < sizes[i]; ++u)
            for (std::uint32_t v = 0; v < sizes[j]; ++v)
                if (keyed_uniform(p.seed, stream, static_cast<std::uint64_t>(u) * sizes[j] + v) < p.d2)
                    edge_parts[pi].push_back({{i, u}, {j, v}});
    };
    const auto np = static_cast<std::int64_t>(pairs.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t pi = 0; pi < np; ++pi) draw_pair(static_cast<std::size_t>(pi));
    } else {
        for (std::int64_t pi = 0; pi < np; ++pi) draw_pair(static_cast<std::size_t>(pi));
    }
    std::vector<Edge> edges;
    for (const auto& part : edge_parts)
        for (const auto& e : part) {
            graph.add_edge(e.a, e.b);
            edges.push_back(e);
        }

    std::vector<std::array<std::uint32_t, 3>> triples;
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j)
            for (std::uint32_t l = j + 1; l < k; ++l) triples.push_back({i, j, l});
    std::vector<std::vector<Hyperedge>> tri_parts(triples.size());
    auto draw_triple = [&](std::size_t ti) {
        const auto [a, b, c] = triples[ti];
        const auto stream = triple_stream(a, b, c);
        const auto& ab = graph.pair(a, b);
        const auto& ac = graph.pair(a, c);
        const auto& bc = graph.pair(b, c);
        for (std::uint32_t u = 0; u < sizes[a]; ++u)
            ab.left_row(u).for_each([&](std::uint32_t v) {
                (ac.left_row(u) & bc.left_row(v)).for_each([&](std::uint32_t w) {
                    const auto index = (static_cast<std::uint64_t>(u) * sizes[b] + v) * sizes[c] + w;
                    const bool hit = plant && (planted[a][u] || planted[b][v] || planted[c][w]);
                    const double q = hit ? plant->density : p.d3;
                    if (keyed_uniform(p.seed, stream, index) < q)
                        tri_parts[ti].push_back(Hyperedge{{Vertex{a, u}, Vertex{b, v}, Vertex{c, w}}});
                });
            });
    };
    const auto nt = static_cast<std::int64_t>(triples.size());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t ti = 0; ti < nt; ++ti) draw_triple(static_cast<std::size_t>(ti));
    } else {
        for (std::int64_t ti = 0; ti < nt; ++ti) draw_triple(static_cast<std::size_t>(ti));
    }
    std::vector<Hyperedge> tris;
    for (auto& part : tri_parts) tris.insert(tris.end(), part.begin(), part.end());
    return Complex::strict(sizes, tris, edges);
}

}  // namespace

std::vector<std::uint32_t> HostParams::class_sizes() const {
    if (!sizes.empty()) return sizes;
    if (k < 1 || n < 1) throw DomainError("host needs k >= 1 and n >= 1");
    return std::vector<std::uint32_t>(k, n);
}

Complex random_host(const HostParams& p, Execution exec) { return generate(p, nullptr, exec); }

Complex planted_host(const HostParams& p, const Planting& plant, Execution exec) { return generate(p, &plant, exec); }

PatternResult random_pattern(const PatternParams& p) {
    const auto k = static_cast<std::uint32_t>(p.sizes.size());
    if (p.target_hyperedges > 0 && p.max_degree < 2)
        throw DomainError("a pattern with hyperedges needs a degree budget of at least 2");
    std::vector<std::uint32_t> populated;
    for (std::uint32_t c = 0; c < k; ++c)
        if (p.sizes[c] > 0) populated.push_back(c);

    std::set<Edge> edges;
    std::set<Hyperedge> tris;
    std::map<Vertex, std::size_t> graph_deg, hyper_deg;
    CounterRng rng(p.seed, kPatternStream);
    const std::size_t attempts = p.target_hyperedges * p.attempts_per_edge;
    for (std::size_t a = 0; a < attempts && tris.size() < p.target_hyperedges && populated.size() >= 3; ++a) {
        std::array<std::uint32_t, 3> cls;
        auto pool = populated;
        for (int q = 0; q < 3; ++q) {
            const auto pick = rng.below(pool.size() - static_cast<std::size_t>(q));
            std::swap(pool[static_cast<std::size_t>(q)], pool[static_cast<std::size_t>(q) + pick]);
            cls[q] = pool[static_cast<std::size_t>(q)];
        }
        std::sort(cls.begin(), cls.end());
        Hyperedge h;
        for (int q = 0; q < 3; ++q) h.v[q] = Vertex{cls[q], static_cast<std::uint32_t>(rng.below(p.sizes[cls[q]]))};
        if (tris.contains(h)) continue;
        std::vector<Edge> fresh;
        for (auto [x, y] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            const Edge e{h.v[x], h.v[y]};
            if (!edges.contains(e)) fresh.push_back(e);
        }
        bool ok = true;
        for (const auto& v : h.v) {
            std::size_t gd = graph_deg[v];
            for (const auto& e : fresh)
                if (e.a == v || e.b == v) ++gd;
            if (std::max(gd, hyper_deg[v] + 1) > p.max_degree) ok = false;
        }
        if (!ok) continue;
        tris.insert(h);
        for (const auto& v : h.v) ++hyper_deg[v];
        for (const auto& e : fresh) {
            edges.insert(e);
            ++graph_deg[e.a];
            ++graph_deg[e.b];
        }
    }
    std::size_t added = 0;
    for (std::size_t a = 0; a < p.extra_edges * p.attempts_per_edge && added < p.extra_edges && populated.size() >= 2; ++a) {
        const auto i = rng.below(populated.size());
        auto j = rng.below(populated.size() - 1);
        if (j >= i) ++j;
        Vertex x{populated[i], static_cast<std::uint32_t>(rng.below(p.sizes[populated[i]]))};
        Vertex y{populated[j], static_cast<std::uint32_t>(rng.below(p.sizes[populated[j]]))};
        if (x.cls > y.cls) std::swap(x, y);
        const Edge e{x, y};
        if (edges.contains(e) || graph_deg[x] + 1 > p.max_degree || graph_deg[y] + 1 > p.max_degree) continue;
        edges.insert(e);
        ++graph_deg[x];
        ++graph_deg[y];
        ++added;
    }
    PatternResult r;
    const std::vector<Hyperedge> tv(tris.begin(), tris.end());
    const std::vector<Edge> ev(edges.begin(), edges.end());
    r.complex = Complex::strict(p.sizes, tv, ev);
    r.hyperedges = tv.size();
    r.achieved_degree = degree_profile(r.complex).max_degree;
    r.shortfall = r.hyperedges < p.target_hyperedges;
    if (r.achieved_degree > p.max_degree) throw std::logic_error("random_pattern exceeded its degree budget");
    return r;
}

}  // namespace hyperreg
