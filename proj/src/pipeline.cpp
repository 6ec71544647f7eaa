#include "hyperreg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace hyperreg {

namespace {

std::string join(const std::vector<std::uint32_t>& xs) {
    std::string s;
    for (auto x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

// Positions 0..k-1 with one colour per triple; finds s positions whose
// triples all share a colour.
std::optional<std::pair<std::vector<std::size_t>, std::uint8_t>> monochromatic_subset(
    const std::vector<TripleColour>& triples, std::size_t k, std::size_t s) {
    if (s > k) return std::nullopt;
    std::vector<std::uint8_t> col(k * k * k, 0);
    for (const auto& t : triples) col[(t.a * k + t.b) * k + t.c] = t.colour;
    for (std::uint8_t c = 0; c < 2; ++c) {
        std::vector<std::size_t> chosen;
        std::function<bool(std::size_t)> grow = [&](std::size_t from) {
            if (chosen.size() == s) return true;
            for (std::size_t x = from; x + (s - chosen.size()) <= k; ++x) {
                bool fits = true;
                for (std::size_t i = 0; i < chosen.size() && fits; ++i)
                    for (std::size_t j = i + 1; j < chosen.size() && fits; ++j)
                        fits = col[(chosen[i] * k + chosen[j]) * k + x] == c;
                if (!fits) continue;
                chosen.push_back(x);
                if (grow(x + 1)) return true;
                chosen.pop_back();
            }
            return false;
        };
        if (grow(0)) return std::make_pair(chosen, c);
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::uint32_t> greedy_assignment(const Complex& h, std::size_t colours) {
    const auto n = h.vertex_count();
    const auto deg = degree_profile(h).graph_degree;
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& e : h.edges()) {
        adj[h.global(e.a)].push_back(h.global(e.b));
        adj[h.global(e.b)].push_back(h.global(e.a));
    }
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] > deg[b]; });
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> out(n, unset);
    for (auto v : order) {
        std::vector<char> used(colours, 0);
        for (auto w : adj[v])
            if (out[w] != unset) used[out[w]] = 1;
        const auto it = std::find(used.begin(), used.end(), 0);
        if (it == used.end())
            throw std::logic_error("greedy assignment ran out of clusters at pattern vertex " + to_string(h.vertex(v)));
        out[v] = static_cast<std::uint32_t>(it - used.begin());
    }
    return out;
}

PipelineResult run_pipeline(const Colouring& colouring, const Complex& pattern, const PipelineConfig& cfg) {
    PipelineResult res;
    auto log = [&](std::string name, bool ok, std::string detail) {
        res.stages.push_back({std::move(name), ok, std::move(detail)});
        return ok;
    };
    res.max_degree = degree_profile(pattern).max_degree;
    const std::size_t s = 2 * res.max_degree + 1;
    const std::size_t k = cfg.k ? cfg.k : s;

    RegularityPartition part;
    try {
        part = random_slicing_partition(colouring.m, cfg.t, cfg.ell, cfg.seed);
    } catch (const std::exception& e) {
        log("partition", false, e.what());
        return res;
    }
    log("partition", true,
        "t=" + std::to_string(part.t()) + " n=" + std::to_string(part.n()) + " |V0|=" +
            std::to_string(part.exceptional.size()));

    const Hypergraph3 red = colouring.colour_class(0);
    res.report = classify_pairs_triples(red, part, cfg.eps1, cfg.eps2, cfg.eps3, cfg.delta3, cfg.r, cfg.graph, cfg.triad);
    const Hypergraph3 reduced = reduced_hypergraph(*res.report);
    log("classify", true, "good triples " + std::to_string(reduced.edge_count()));

    if (part.t() < k) {
        log("clique", false, "t=" + std::to_string(part.t()) + " < k=" + std::to_string(k));
        return res;
    }
    const auto tc = turan_clique(reduced, k, cfg.c0);
    if (!tc.clique) {
        log("clique", false, "no K_" + std::to_string(k) + " in the reduced hypergraph");
        return res;
    }
    res.clique = tc.clique;
    log("clique", true, "clusters " + join(*tc.clique));

    const double d2 = 1.0 / static_cast<double>(cfg.ell);
    const auto sel = select_triad_system(red, part, *res.clique, d2, std::sqrt(cfg.eps2), cfg.delta3, cfg.r, cfg.seed,
                                         cfg.max_retries, cfg.graph, cfg.triad);
    if (!sel.system) {
        log("triads", false,
            "no system after " + std::to_string(sel.attempts) + " attempts; worst offender " + sel.worst_offender);
        return res;
    }
    res.system = sel.system;
    log("triads", true, "accepted after " + std::to_string(sel.attempts) + " attempts");

    std::optional<std::uint64_t> thin;
    if (cfg.thin) thin = cfg.seed;
    res.clique_colouring = colour_clique_by_density(red, part, *res.system, thin);
    log("colour", true, std::to_string(res.clique_colouring->triples.size()) + " clique triples coloured");

    const auto mono = monochromatic_subset(res.clique_colouring->triples, k, s);
    if (!mono) {
        log("monochromatic", false, "no monochromatic K_" + std::to_string(s) + " among the clique triples");
        return res;
    }
    res.monochromatic = mono->first;
    res.colour = mono->second;
    log("monochromatic", true, std::string(res.colour == 0 ? "red" : "blue") + " K_" + std::to_string(s));

    res.assignment = greedy_assignment(pattern, s);
    log("assign", true, std::to_string(s) + " clusters");

    // host: chosen slices between the monochromatic clusters, hyperedges of the winning colour on their triangles
    const auto& pos = *res.monochromatic;
    const auto& sys = *res.system;
    const auto n = static_cast<std::uint32_t>(part.n());
    std::vector<Edge> host_edges;
    std::vector<Hyperedge> host_tris;
    for (std::uint32_t a = 0; a < s; ++a)
        for (std::uint32_t b = a + 1; b < s; ++b) {
            const auto& slice = part.family(sys.clusters[pos[a]], sys.clusters[pos[b]])[sys.alpha[pos[a]][pos[b]]];
            for (const auto& [u, v] : slice.edges()) host_edges.push_back({Vertex{a, u}, Vertex{b, v}});
        }
    const Hypergraph3* source = &red;
    if (res.colour == 0 && res.clique_colouring->thinned_red) source = &*res.clique_colouring->thinned_red;
    for (std::uint32_t a = 0; a < s; ++a)
        for (std::uint32_t b = a + 1; b < s; ++b)
            for (std::uint32_t c = b + 1; c < s; ++c) {
                const Triad p = sys.triad(part, pos[a], pos[b], pos[c]);
                for_each_triangle(p, [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) {
                    const auto t = sorted_triple(p.vertices[0][u], p.vertices[1][v], p.vertices[2][w]);
                    if (source->contains(t) == (res.colour == 0))
                        host_tris.push_back({{Vertex{a, u}, Vertex{b, v}, Vertex{c, w}}});
                });
            }
    res.host = Complex::close(std::vector<std::uint32_t>(s, n), host_tris, host_edges);

    std::vector<std::uint32_t> sizes(s, 0);
    std::vector<Vertex> placed(pattern.vertex_count());
    for (std::uint32_t g = 0; g < pattern.vertex_count(); ++g)
        placed[g] = Vertex{res.assignment[g], sizes[res.assignment[g]]++};
    auto moved = [&](Vertex v) { return placed[pattern.global(v)]; };
    std::vector<Edge> pe;
    std::vector<Hyperedge> ph;
    for (const auto& e : pattern.edges()) pe.push_back(canonical(Edge{moved(e.a), moved(e.b)}));
    for (const auto& t : pattern.hyperedges()) ph.push_back(canonical(Hyperedge{{moved(t.v[0]), moved(t.v[1]), moved(t.v[2])}}));
    const Complex assigned = Complex::close(sizes, ph, pe);

    EmbedderConfig ec;
    ec.exec = cfg.exec;
    ec.max_degree = res.max_degree;
    try {
        res.embedding = embed(assigned, *res.host, ec);
    } catch (const DomainError& e) {
        log("embed", false, e.what());
        return res;
    }
    if (!res.embedding->embedding) {
        log("embed", false, "no copy of the assigned pattern in the " + std::string(res.colour == 0 ? "red" : "blue") +
                                " host");
        return res;
    }
    log("embed", true, "copy found");

    const auto& phi = *res.embedding->embedding;
    res.image.resize(pattern.vertex_count());
    for (std::uint32_t g = 0; g < pattern.vertex_count(); ++g) {
        const Vertex hv = phi[assigned.global(placed[g])];
        res.image[g] = part.clusters[sys.clusters[pos[hv.cls]]][hv.idx];
    }
    res.monochromatic_copy = true;
    for (const auto& t : pattern.hyperedges()) {
        const auto x = res.image[pattern.global(t.v[0])], y = res.image[pattern.global(t.v[1])],
                   z = res.image[pattern.global(t.v[2])];
        if (x == y || y == z || x == z || colouring.at(x, y, z) != res.colour) res.monochromatic_copy = false;
    }
    log("verify", res.monochromatic_copy,
        res.monochromatic_copy ? "every pattern hyperedge maps to a monochromatic triple"
                               : "image is not a monochromatic copy");
    return res;
}

}  // namespace hyperreg
