#include "hyperreg/embed.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace hyperreg {

namespace {

std::vector<Vertex> neighbours_of(const Complex& h, Vertex v) {
    std::vector<Vertex> out;
    for (const auto& w : h.vertices())
        if (w.cls != v.cls && h.has_edge(v, w)) out.push_back(w);
    return out;
}

std::vector<Vertex> select(const Complex& h, const std::function<bool(Vertex)>& keep) {
    std::vector<Vertex> out;
    for (const auto& w : h.vertices())
        if (keep(w)) out.push_back(w);
    return out;
}

std::map<Vertex, Vertex> inverse(const InducedSubcomplex& s) {
    std::map<Vertex, Vertex> out;
    for (std::uint32_t g = 0; g < s.original.size(); ++g) out.emplace(s.original[g], s.complex.vertex(g));
    return out;
}

}  // namespace

NeighborhoodComplexes neighborhood_complexes(const Complex& h, Vertex v) {
    if (v.cls >= h.class_count() || v.idx >= h.class_size(v.cls))
        throw DomainError("vertex " + to_string(v) + " is not in the pattern");
    NeighborhoodComplexes nc;
    nc.h = v;
    const auto nbrs = neighbours_of(h, v);
    const std::set<Vertex> nset(nbrs.begin(), nbrs.end());

    // BFS in H_h from V(N_h)
    nc.distance.assign(h.vertex_count(), -1);
    std::deque<Vertex> queue;
    for (const auto& u : nbrs) {
        nc.distance[h.global(u)] = 0;
        queue.push_back(u);
    }
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        for (const auto& w : neighbours_of(h, u)) {
            if (w == v || nc.distance[h.global(w)] >= 0) continue;
            nc.distance[h.global(w)] = nc.distance[h.global(u)] + 1;
            queue.push_back(w);
        }
    }
    auto dist = [&](Vertex w) { return w == v ? -1 : nc.distance[h.global(w)]; };

    nc.hh = remove_vertex(h, v);
    nc.nh = induced_subcomplex(h, nbrs);
    nc.b = induced_subcomplex(h, select(h, [&](Vertex w) { return w == v || nset.contains(w); }));
    nc.nh_star = induced_subcomplex(h, select(h, [&](Vertex w) { return dist(w) == 2; }));
    nc.f_prime = induced_subcomplex(h, select(h, [&](Vertex w) { const int d = dist(w); return d >= 0 && d <= 2; }));
    nc.hh_star = induced_subcomplex(h, select(h, [&](Vertex w) { return w != v && !(dist(w) == 0 || dist(w) == 1); }));
    nc.hh_prime = induced_subcomplex(h, select(h, [&](Vertex w) { const int d = dist(w); return w != v && !(d >= 0 && d <= 2); }));
    nc.hh_minus = induced_subcomplex(h, select(h, [&](Vertex w) { return w != v && !nset.contains(w); }));
    return nc;
}

double EmbedderConfig::effective_delta2_prime() const {
    return delta2_prime < 0 ? std::sqrt(delta2) : delta2_prime;
}

void check_respects_partition(const Complex& h, const Complex& g) {
    if (h.class_count() > g.class_count())
        throw DomainError("pattern has more classes than the host");
    for (const auto& e : h.edges())
        if (g.graph().pair(e.a.cls, e.b.cls).edge_count() == 0)
            throw DomainError("host does not respect the partition: no edge between V" + std::to_string(e.a.cls) +
                              " and V" + std::to_string(e.b.cls));
    std::set<std::array<std::uint32_t, 3>> host_triples;
    for (const auto& t : g.hyperedges()) host_triples.insert({t.v[0].cls, t.v[1].cls, t.v[2].cls});
    for (const auto& t : h.hyperedges())
        if (!host_triples.contains({t.v[0].cls, t.v[1].cls, t.v[2].cls}))
            throw DomainError("host does not respect the partition: no hyperedge in V" + std::to_string(t.v[0].cls) +
                              " V" + std::to_string(t.v[1].cls) + " V" + std::to_string(t.v[2].cls));
}

std::vector<std::uint32_t> embedding_order(const Complex& h) {
    const auto n = static_cast<std::uint32_t>(h.vertex_count());
    const auto deg = degree_profile(h).complex_degree;
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& e : h.edges()) {
        adj[h.global(e.a)].push_back(h.global(e.b));
        adj[h.global(e.b)].push_back(h.global(e.a));
    }
    auto by_degree = [&](std::uint32_t a, std::uint32_t b) { return deg[a] != deg[b] ? deg[a] > deg[b] : a < b; };

    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::uint32_t>> comps;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comps.emplace_back();
        std::deque<std::uint32_t> q{s};
        comp[s] = static_cast<int>(comps.size() - 1);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop_front();
            comps.back().push_back(u);
            for (auto w : adj[u])
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    q.push_back(w);
                }
        }
    }
    std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });

    std::vector<std::uint32_t> order;
    std::vector<char> placed(n, 0);
    for (const auto& c : comps) {
        const auto h0 = *std::min_element(c.begin(), c.end(), by_degree);
        auto nb = adj[h0];
        std::sort(nb.begin(), nb.end(), by_degree);
        std::vector<std::uint32_t> layer = nb;
        for (auto u : nb) placed[u] = 1, order.push_back(u);
        placed[h0] = 1;
        order.push_back(h0);
        while (!layer.empty()) {
            std::vector<std::uint32_t> next;
            for (auto u : layer)
                for (auto w : adj[u])
                    if (!placed[w]) {
                        placed[w] = 1;
                        next.push_back(w);
                    }
            std::sort(next.begin(), next.end(), by_degree);
            order.insert(order.end(), next.begin(), next.end());
            layer = std::move(next);
        }
    }
    return order;
}

EmbedResult embed(const Complex& h, const Complex& g, const EmbedderConfig& cfg) {
    check_respects_partition(h, g);
    for (std::uint32_t i = 0; i < h.class_count(); ++i)
        if (static_cast<double>(h.class_size(i)) > cfg.c * static_cast<double>(g.class_size(i)))
            throw DomainError("pattern class X" + std::to_string(i) + " has " + std::to_string(h.class_size(i)) +
                              " vertices > c n = " + std::to_string(cfg.c * g.class_size(i)));
    EmbedResult res;
    const auto order = embedding_order(h);
    for (auto p : order) res.order.push_back(h.vertex(p));
    if (order.empty()) {
        res.embedding = Embedding{};
        return res;
    }

    CopySearch search(h, g);
    search.set_order(order);
    if (cfg.exec == Execution::parallel) {
        const Vertex first = h.vertex(order.front());
        const auto m = static_cast<std::int64_t>(g.class_size(first.cls));
        std::vector<std::optional<Embedding>> found(static_cast<std::size_t>(m));
        std::int64_t best = m;
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
        for (std::int64_t c = 0; c < m; ++c) {
            if (c > best) continue;
            CopySearch local(h, g);
            local.set_order(order);
            local.pin(order.front(), Vertex{first.cls, static_cast<std::uint32_t>(c)});
            found[static_cast<std::size_t>(c)] = local.first();
            if (found[static_cast<std::size_t>(c)]) best = std::min(best, c);
        }
        if (best < m) {
            res.embedding = std::move(found[static_cast<std::size_t>(best)]);
            return res;
        }
    }
    CopySearch::Failure fail;
    res.embedding = search.first(&fail);
    if (!res.embedding) {
        EmbedFailure f;
        for (const auto& [p, v] : fail.deepest) f.deepest.emplace_back(h.vertex(p), v);
        f.stuck = h.vertex(fail.stuck_vertex);
        res.failure = std::move(f);
    }
    return res;
}

CountRatio count_ratio_check(const Complex& h, Vertex v, const Complex& g, double alpha, double d2, double d3) {
    if (v.cls >= h.class_count() || v.idx >= h.class_size(v.cls))
        throw DomainError("vertex " + to_string(v) + " is not in the pattern");
    CountRatio out;
    const auto hh = remove_vertex(h, v);
    out.lhs = count_copies(h, g);
    out.hh_count = count_copies(hh.complex, g);
    const double n = g.class_size(v.cls);
    out.factor = (1 - alpha) * n * std::pow(d2, static_cast<double>(h.e2()) - static_cast<double>(hh.complex.e2())) *
                 std::pow(d3, static_cast<double>(h.e3()) - static_cast<double>(hh.complex.e3()));
    out.rhs = out.factor * to_double(out.hh_count);
    out.pass = Rational(out.lhs) >= Rational(out.factor) * out.hh_count;
    return out;
}

TypicalityReport typicality_report(const Complex& h, Vertex v, const Complex& g, double beta, double n, double d2,
                                   double d3, std::size_t keep_atypical) {
    const auto nc = neighborhood_complexes(h, v);
    const auto in_b = inverse(nc.b);
    ExtensionPair pair{nc.nh.complex, nc.b.complex, {}};
    for (const auto& o : nc.nh.original) pair.inclusion.push_back(in_b.at(o));
    validate_extension(pair);

    TypicalityReport rep;
    rep.predicted = predicted_extension(pair.h, pair.hp, n, d2, d3);
    rep.threshold = (1 - beta) * rep.predicted;
    CopySearch ext(pair.hp, g);
    CopySearch(pair.h, g).for_each([&](const Embedding& phi) {
        for (std::uint32_t p = 0; p < pair.h.vertex_count(); ++p) ext.pin(pair.hp.global(pair.inclusion[p]), phi[p]);
        const Count x = ext.count(Execution::serial);
        ++rep.copies;
        if (to_double(x) >= rep.threshold)
            ++rep.typical;
        else if (rep.atypical.size() < keep_atypical)
            rep.atypical.push_back(phi);
        rep.extensions.push_back(x);
        return true;
    });
    rep.fraction = rep.copies ? static_cast<double>(rep.typical) / static_cast<double>(rep.copies) : 1.0;
    return rep;
}

UsefulnessReport usefulness_report(const Complex& h, Vertex v, const Complex& g, double delta2, double d2, double n,
                                   std::size_t keep_offenders) {
    const auto nc = neighborhood_complexes(h, v);
    const auto& nh = nc.nh;
    const auto t = nh.complex.vertex_count();
    if (t > 20) throw CapacityError("usefulness report limited to neighbourhoods of at most 20 vertices");

    // (subset of N_h, class) pairs with a common pattern neighbour in that class
    struct Condition {
        std::uint32_t mask;
        std::uint32_t cls;
        double lo, hi;
    };
    std::vector<Condition> conds;
    for (std::uint32_t mask = 1; mask < (1u << t); ++mask) {
        const double ell = std::popcount(mask);
        const double centre = std::pow(d2, ell) * n;
        for (std::uint32_t cls = 0; cls < h.class_count(); ++cls) {
            bool any = false;
            for (std::uint32_t y = 0; y < h.class_size(cls) && !any; ++y) {
                const Vertex yv{cls, y};
                bool all = true;
                for (std::uint32_t p = 0; p < t && all; ++p)
                    if ((mask >> p) & 1u) {
                        const Vertex s = nh.original[p];
                        all = s != yv && s.cls != cls && h.has_edge(s, yv);
                    }
                any = all;
            }
            if (any) conds.push_back({mask, cls, std::pow(1 - delta2, ell) * centre, std::pow(1 + delta2, ell) * centre});
        }
    }
    UsefulnessReport rep;
    rep.conditions = conds.size();
    CopySearch(nh.complex, g).for_each([&](const Embedding& phi) {
        ++rep.copies;
        bool ok = true;
        for (const auto& c : conds) {
            Bitset common(g.class_size(c.cls), true);
            for (std::uint32_t p = 0; p < t; ++p)
                if ((c.mask >> p) & 1u) common &= g.graph().neighbours(phi[p], c.cls);
            const auto size = common.count();
            const double s = static_cast<double>(size);
            if (s >= c.lo && s <= c.hi) continue;
            ok = false;
            if (rep.offenders.size() < keep_offenders) {
                UsefulOffender o;
                o.copy = phi;
                for (std::uint32_t p = 0; p < t; ++p)
                    if ((c.mask >> p) & 1u) o.subset.push_back(nh.original[p]);
                o.cls = c.cls;
                o.size = size;
                o.lo = c.lo;
                o.hi = c.hi;
                rep.offenders.push_back(std::move(o));
            }
        }
        if (ok) ++rep.useful;
        return true;
    });
    rep.fraction = rep.copies ? static_cast<double>(rep.useful) / static_cast<double>(rep.copies) : 1.0;
    return rep;
}

}  // namespace hyperreg
