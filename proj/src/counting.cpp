#include "hyperreg/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hyperreg {

namespace {

using u128 = unsigned __int128;

Count to_count(u128 x) {
    Count c = static_cast<std::uint64_t>(x >> 64);
    c <<= 64;
    c += static_cast<std::uint64_t>(x);
    return c;
}

Count power(std::uint64_t base, std::int64_t exp) {
    Count c = 1;
    for (std::int64_t i = 0; i < exp; ++i) c *= base;
    return c;
}

}  // namespace

ClassMap resolve_class_map(const Complex& pattern, const Complex& host, std::span<const std::uint32_t> class_map) {
    if (class_map.empty()) {
        if (pattern.class_count() > host.class_count())
            throw StructuralError("pattern has " + std::to_string(pattern.class_count()) + " classes but host only " +
                                  std::to_string(host.class_count()));
        ClassMap m(pattern.class_count());
        for (std::uint32_t i = 0; i < m.size(); ++i) m[i] = i;
        return m;
    }
    if (class_map.size() != pattern.class_count())
        throw StructuralError("class map has " + std::to_string(class_map.size()) + " entries, pattern has " +
                              std::to_string(pattern.class_count()) + " classes");
    for (std::size_t i = 0; i < class_map.size(); ++i)
        if (class_map[i] >= host.class_count())
            throw StructuralError("class map sends pattern class " + std::to_string(i) + " to missing host class " +
                                  std::to_string(class_map[i]));
    return {class_map.begin(), class_map.end()};
}

// ---------------------------------------------------------------- CopySearch

CopySearch::CopySearch(const Complex& pattern, const Complex& host, std::span<const std::uint32_t> class_map,
                       bool graph_only)
    : h_(pattern), g_(host), map_(resolve_class_map(pattern, host, class_map)), graph_only_(graph_only) {
    for (const auto& e : h_.edges())
        if (map_[e.a.cls] == map_[e.b.cls]) impossible_ = true;
    const auto prof = degree_profile(h_);
    degree_ = graph_only_ ? prof.graph_degree : prof.complex_degree;
    build_steps();
}

void CopySearch::pin(std::uint32_t p, Vertex v) {
    if (p >= h_.vertex_count()) throw DomainError("pinned pattern vertex out of range");
    const Vertex pv = h_.vertex(p);
    if (v.cls != map_[pv.cls] || v.idx >= g_.class_size(v.cls))
        throw DomainError("pinned image " + to_string(v) + " is not in the host class of " + to_string(pv));
    for (auto& [q, w] : pins_)
        if (q == p) {
            w = v;
            build_steps();
            return;
        }
    pins_.emplace_back(p, v);
    order_.erase(std::remove(order_.begin(), order_.end(), p), order_.end());
    build_steps();
}

void CopySearch::set_order(std::vector<std::uint32_t> order) {
    std::vector<char> seen(h_.vertex_count(), 0);
    for (auto& [p, v] : pins_) seen[p] = 1;
    std::vector<std::uint32_t> free;
    for (auto p : order) {
        if (p >= seen.size() || seen[p]) continue;
        seen[p] = 1;
        free.push_back(p);
    }
    if (std::count(seen.begin(), seen.end(), 0) != 0) throw DomainError("order does not cover every free pattern vertex");
    order_ = std::move(free);
    custom_order_ = true;
    build_steps();
}

void CopySearch::build_steps() {
    const auto n = static_cast<std::uint32_t>(h_.vertex_count());
    std::vector<std::uint32_t> seq;
    std::vector<char> placed(n, 0);
    for (auto& [p, v] : pins_) {
        seq.push_back(p);
        placed[p] = 1;
    }
    if (!custom_order_) {
        // Highest degree first, then the vertex with most placed neighbours.
        const auto& deg = degree_;
        std::vector<std::uint32_t> links(n, 0);
        auto place = [&](std::uint32_t p) {
            placed[p] = 1;
            seq.push_back(p);
            for (std::uint32_t q = 0; q < n; ++q)
                if (!placed[q] && h_.has_edge(h_.vertex(p), h_.vertex(q))) ++links[q];
        };
        for (auto& [p, v] : pins_)
            for (std::uint32_t q = 0; q < n; ++q)
                if (!placed[q] && h_.has_edge(h_.vertex(p), h_.vertex(q))) ++links[q];
        order_.clear();
        while (seq.size() < n) {
            std::uint32_t best = n;
            for (std::uint32_t q = 0; q < n; ++q) {
                if (placed[q]) continue;
                if (best == n || links[q] > links[best] || (links[q] == links[best] && deg[q] > deg[best])) best = q;
            }
            order_.push_back(best);
            place(best);
        }
    } else {
        seq.insert(seq.end(), order_.begin(), order_.end());
    }

    steps_.clear();
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
        Step s;
        s.vertex = seq[pos];
        const Vertex pv = h_.vertex(seq[pos]);
        s.host_class = map_[pv.cls];
        for (std::size_t q = 0; q < pos; ++q)
            if (h_.has_edge(pv, h_.vertex(seq[q]))) s.back_edges.push_back(static_cast<std::uint32_t>(q));
        if (!graph_only_)
            for (std::size_t a = 0; a < s.back_edges.size(); ++a)
                for (std::size_t b = a + 1; b < s.back_edges.size(); ++b)
                    if (h_.has_hyperedge(pv, h_.vertex(seq[s.back_edges[a]]), h_.vertex(seq[s.back_edges[b]])))
                        s.back_tris.emplace_back(s.back_edges[a], s.back_edges[b]);
        if (pos < pins_.size()) s.pinned = pins_[pos].second.idx;
        steps_.push_back(std::move(s));
    }
}

Bitset CopySearch::candidates(std::size_t pos, const std::vector<Vertex>& img, const std::vector<Bitset>& used) const {
    const Step& s = steps_[pos];
    Bitset c(g_.class_size(s.host_class), true);
    for (auto q : s.back_edges) c &= g_.graph().neighbours(img[q], s.host_class);
    for (auto [q1, q2] : s.back_tris) {
        const Bitset* l = g_.link(img[q1], img[q2], s.host_class);
        if (!l) return Bitset(c.size());
        c &= *l;
    }
    c.subtract(used[s.host_class]);
    return c;
}

namespace {

struct SearchState {
    std::vector<Vertex> img;
    std::vector<Bitset> used;
};

}  // namespace

Count CopySearch::count(Execution exec) const {
    if (impossible_) return 0;
    if (steps_.empty()) return 1;
    const std::size_t last = steps_.size() - 1;
    std::vector<Bitset> used0;
    for (std::uint32_t c = 0; c < g_.class_count(); ++c) used0.emplace_back(g_.class_size(c));

    std::function<u128(std::size_t, SearchState&)> rec = [&](std::size_t pos, SearchState& st) -> u128 {
        const Step& s = steps_[pos];
        Bitset cand = candidates(pos, st.img, st.used);
        if (s.pinned) {
            if (!cand.test(*s.pinned)) return 0;
            if (pos == last) return 1;
            st.img[pos] = {s.host_class, *s.pinned};
            st.used[s.host_class].set(*s.pinned);
            const u128 r = rec(pos + 1, st);
            st.used[s.host_class].reset(*s.pinned);
            return r;
        }
        if (pos == last) return cand.count();
        u128 total = 0;
        cand.for_each([&](std::uint32_t c) {
            st.img[pos] = {s.host_class, c};
            st.used[s.host_class].set(c);
            total += rec(pos + 1, st);
            st.used[s.host_class].reset(c);
        });
        return total;
    };

    SearchState st{std::vector<Vertex>(steps_.size()), used0};
    // walk the pinned prefix, then split the first free vertex across threads
    std::size_t pos = 0;
    for (; pos < steps_.size() && steps_[pos].pinned; ++pos) {
        const Step& s = steps_[pos];
        if (!candidates(pos, st.img, st.used).test(*s.pinned)) return 0;
        st.img[pos] = {s.host_class, *s.pinned};
        st.used[s.host_class].set(*s.pinned);
    }
    if (pos == steps_.size()) return 1;
    if (pos == last || exec == Execution::serial) return to_count(rec(pos, st));

    const auto first = candidates(pos, st.img, st.used).indices();
    const auto hc = steps_[pos].host_class;
    const auto m = static_cast<std::int64_t>(first.size());
    std::uint64_t lo_total = 0, hi_total = 0;  // 128-bit sum split for the OpenMP reduction
#pragma omp parallel
    {
        SearchState local = st;
        u128 mine = 0;
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < m; ++i) {
            const auto c = first[static_cast<std::size_t>(i)];
            local.img[pos] = {hc, c};
            local.used[hc].set(c);
            mine += rec(pos + 1, local);
            local.used[hc].reset(c);
        }
#pragma omp critical
        {
            const u128 sum = ((static_cast<u128>(hi_total) << 64) | lo_total) + mine;
            lo_total = static_cast<std::uint64_t>(sum);
            hi_total = static_cast<std::uint64_t>(sum >> 64);
        }
    }
    return to_count((static_cast<u128>(hi_total) << 64) | lo_total);
}

void CopySearch::for_each(const std::function<bool(const Embedding&)>& f) const {
    if (impossible_) return;
    SearchState st{std::vector<Vertex>(steps_.size()), {}};
    for (std::uint32_t c = 0; c < g_.class_count(); ++c) st.used.emplace_back(g_.class_size(c));
    Embedding out(h_.vertex_count());
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (stop) return;
        if (pos == steps_.size()) {
            for (std::size_t q = 0; q < steps_.size(); ++q) out[steps_[q].vertex] = st.img[q];
            if (!f(out)) stop = true;
            return;
        }
        const Step& s = steps_[pos];
        Bitset cand = candidates(pos, st.img, st.used);
        auto go = [&](std::uint32_t c) {
            if (stop) return;
            st.img[pos] = {s.host_class, c};
            st.used[s.host_class].set(c);
            rec(pos + 1);
            st.used[s.host_class].reset(c);
        };
        if (s.pinned) {
            if (cand.test(*s.pinned)) go(*s.pinned);
        } else {
            cand.for_each(go);
        }
    };
    rec(0);
}

std::optional<Embedding> CopySearch::first(Failure* failure) const {
    std::optional<Embedding> found;
    if (impossible_) {
        if (failure) {
            failure->deepest.clear();
            failure->stuck_vertex = steps_.empty() ? 0 : steps_.front().vertex;
        }
        return found;
    }
    SearchState st{std::vector<Vertex>(steps_.size()), {}};
    for (std::uint32_t c = 0; c < g_.class_count(); ++c) st.used.emplace_back(g_.class_size(c));
    std::size_t deepest = 0;
    std::vector<std::pair<std::uint32_t, Vertex>> trace;
    std::uint32_t stuck = steps_.empty() ? 0 : steps_.front().vertex;
    std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
        if (pos == steps_.size()) {
            Embedding out(h_.vertex_count());
            for (std::size_t q = 0; q < steps_.size(); ++q) out[steps_[q].vertex] = st.img[q];
            found = std::move(out);
            return true;
        }
        const Step& s = steps_[pos];
        Bitset cand = candidates(pos, st.img, st.used);
        if (s.pinned) {
            const auto keep = cand.test(*s.pinned);
            cand = Bitset(cand.size());
            if (keep) cand.set(*s.pinned);
        }
        if (cand.none() && (pos > deepest || trace.empty())) {
            deepest = pos;
            trace.clear();
            for (std::size_t q = 0; q < pos; ++q) trace.emplace_back(steps_[q].vertex, st.img[q]);
            stuck = s.vertex;
        }
        bool done = false;
        cand.for_each([&](std::uint32_t c) {
            if (done) return;
            st.img[pos] = {s.host_class, c};
            st.used[s.host_class].set(c);
            done = rec(pos + 1);
            st.used[s.host_class].reset(c);
        });
        return done;
    };
    rec(0);
    if (!found && failure) {
        failure->deepest = std::move(trace);
        failure->stuck_vertex = stuck;
    }
    return found;
}

// ---------------------------------------------------------------- counts

Count count_copies(const Complex& h, const Complex& g, std::span<const std::uint32_t> class_map, Execution exec) {
    return CopySearch(h, g, class_map).count(exec);
}

Count count_graph_copies(const Complex& h, const Complex& g, std::span<const std::uint32_t> class_map,
                         Execution exec) {
    return CopySearch(h, g, class_map, true).count(exec);
}

bool is_copy(const Complex& h, const Complex& g, const Embedding& phi, std::span<const std::uint32_t> class_map,
             bool graph_only) {
    const ClassMap m = resolve_class_map(h, g, class_map);
    if (phi.size() != h.vertex_count()) return false;
    std::set<Vertex> images;
    for (std::uint32_t p = 0; p < phi.size(); ++p) {
        const Vertex pv = h.vertex(p);
        if (phi[p].cls != m[pv.cls] || phi[p].idx >= g.class_size(phi[p].cls)) return false;
        if (!images.insert(phi[p]).second) return false;
    }
    auto img = [&](Vertex v) { return phi[h.global(v)]; };
    for (const auto& e : h.edges())
        if (!g.has_edge(img(e.a), img(e.b))) return false;
    if (!graph_only)
        for (const auto& t : h.hyperedges())
            if (!g.has_hyperedge(img(t.v[0]), img(t.v[1]), img(t.v[2]))) return false;
    return true;
}

void validate_extension(const ExtensionPair& e) {
    const auto& h = e.h;
    const auto& hp = e.hp;
    if (h.class_count() != hp.class_count()) throw DomainError("H and H' must have the same classes");
    if (e.inclusion.size() != h.vertex_count()) throw DomainError("inclusion must place every vertex of H");
    std::set<Vertex> seen;
    for (std::uint32_t p = 0; p < e.inclusion.size(); ++p) {
        const Vertex v = e.inclusion[p];
        if (v.cls != h.vertex(p).cls || v.idx >= hp.class_size(v.cls))
            throw DomainError("inclusion moves " + to_string(h.vertex(p)) + " out of its class");
        if (!seen.insert(v).second) throw DomainError("inclusion is not injective");
    }
    const auto n = static_cast<std::uint32_t>(h.vertex_count());
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b) {
            const Vertex va = h.vertex(a), vb = h.vertex(b);
            if (va.cls == vb.cls) continue;
            if (h.has_edge(va, vb) != hp.has_edge(e.inclusion[a], e.inclusion[b]))
                throw DomainError("H is not induced in H': pair " + to_string(va) + " " + to_string(vb) + " differs");
            for (std::uint32_t c = b + 1; c < n; ++c) {
                const Vertex vc = h.vertex(c);
                if (vc.cls == va.cls || vc.cls == vb.cls) continue;
                if (h.has_hyperedge(va, vb, vc) != hp.has_hyperedge(e.inclusion[a], e.inclusion[b], e.inclusion[c]))
                    throw DomainError("H is not induced in H': triple " + to_string(va) + " " + to_string(vb) + " " +
                                      to_string(vc) + " differs");
            }
        }
}

ExtensionPair induced_pair(const Complex& hp, std::span<const Vertex> keep) {
    auto sub = induced_subcomplex(hp, keep);
    return ExtensionPair{std::move(sub.complex), hp, std::move(sub.original)};
}

Count count_extensions(const ExtensionPair& e, const Embedding& phi, const Complex& g,
                       std::span<const std::uint32_t> class_map) {
    validate_extension(e);
    if (!is_copy(e.h, g, phi, class_map)) throw DomainError("phi is not a copy of H in G");
    CopySearch s(e.hp, g, class_map);
    for (std::uint32_t p = 0; p < e.h.vertex_count(); ++p) s.pin(e.hp.global(e.inclusion[p]), phi[p]);
    return s.count(Execution::serial);
}

std::vector<Count> extension_counts(const ExtensionPair& e, const Complex& g) {
    validate_extension(e);
    std::vector<Count> out;
    CopySearch ext(e.hp, g);
    CopySearch(e.h, g).for_each([&](const Embedding& phi) {
        for (std::uint32_t p = 0; p < e.h.vertex_count(); ++p) ext.pin(e.hp.global(e.inclusion[p]), phi[p]);
        out.push_back(ext.count(Execution::serial));
        return true;
    });
    return out;
}

// ---------------------------------------------------------------- predictions

double predicted_count(const Complex& h, double n, double d2, double d3) {
    return std::pow(n, static_cast<double>(h.vertex_count())) * std::pow(d2, static_cast<double>(h.e2())) *
           std::pow(d3, static_cast<double>(h.e3()));
}

double predicted_extension(const Complex& h, const Complex& hp, double n, double d2, double d3) {
    auto diff = [](std::size_t a, std::size_t b) { return static_cast<double>(a) - static_cast<double>(b); };
    return std::pow(n, diff(hp.vertex_count(), h.vertex_count())) * std::pow(d2, diff(hp.e2(), h.e2())) *
           std::pow(d3, diff(hp.e3(), h.e3()));
}

double predicted_count_per_edge(const Complex& h, double n, double d2, std::span<const double> per_edge) {
    if (per_edge.size() != h.e3())
        throw DomainError("expected " + std::to_string(h.e3()) + " hyperedge densities, got " +
                          std::to_string(per_edge.size()));
    double log_sum = static_cast<double>(h.vertex_count()) * std::log(n) + static_cast<double>(h.e2()) * std::log(d2);
    for (double d : per_edge) {
        if (!(d > 0 && d <= 1)) throw DomainError("hyperedge density must lie in (0,1]");
        log_sum += std::log(d);
    }
    return std::exp(log_sum);
}

// ---------------------------------------------------------------- constructions

Complex partial_complement(const Complex& g, const Complex& h, std::span<const Hyperedge> d,
                           std::span<const std::uint32_t> class_map) {
    const ClassMap m = resolve_class_map(h, g, class_map);
    std::vector<std::uint32_t> mult(g.class_count(), 0);
    for (const auto& v : h.vertices()) ++mult[m[v.cls]];
    std::set<std::array<std::uint32_t, 3>> hit;
    for (const auto& he : d) {
        if (!h.has_hyperedge(he.v[0], he.v[1], he.v[2])) throw DomainError("D contains a triple that is not a hyperedge of H");
        std::array<std::uint32_t, 3> cls{m[he.v[0].cls], m[he.v[1].cls], m[he.v[2].cls]};
        for (auto c : cls)
            if (mult[c] > 1)
                throw DomainError("partial complement needs one pattern vertex per class; host class " +
                                  std::to_string(c) + " receives " + std::to_string(mult[c]));
        std::sort(cls.begin(), cls.end());
        hit.insert(cls);
    }
    std::vector<Hyperedge> out;
    for (const auto& he : g.hyperedges()) {
        const std::array<std::uint32_t, 3> cls{he.v[0].cls, he.v[1].cls, he.v[2].cls};
        if (!hit.contains(cls)) out.push_back(he);
    }
    for (const auto& [a, b, c] : hit) {
        const auto& ab = g.graph().pair(a, b);
        const auto& ac = g.graph().pair(a, c);
        const auto& bc = g.graph().pair(b, c);
        for (std::uint32_t u = 0; u < g.class_size(a); ++u)
            ab.left_row(u).for_each([&](std::uint32_t v) {
                (ac.left_row(u) & bc.left_row(v)).for_each([&](std::uint32_t w) {
                    if (!g.has_hyperedge({a, u}, {b, v}, {c, w})) out.push_back(Hyperedge{{Vertex{a, u}, Vertex{b, v}, Vertex{c, w}}});
                });
            });
    }
    return Complex::strict(g.class_sizes(), out, g.edges());
}

namespace {

std::vector<std::uint32_t> offsets_of(std::span<const std::uint32_t> mult) {
    std::vector<std::uint32_t> off(mult.size() + 1, 0);
    for (std::size_t i = 0; i < mult.size(); ++i) off[i + 1] = off[i] + mult[i];
    return off;
}

}  // namespace

Complex blow_up(const Complex& g, std::span<const std::uint32_t> multiplicity) {
    if (multiplicity.size() != g.class_count()) throw DomainError("one multiplicity per class required");
    for (auto m : multiplicity)
        if (m < 1) throw DomainError("multiplicities must be at least 1");
    const auto off = offsets_of(multiplicity);
    std::vector<std::uint32_t> sizes(off.back());
    for (std::uint32_t i = 0; i < g.class_count(); ++i)
        for (std::uint32_t c = 0; c < multiplicity[i]; ++c) sizes[off[i] + c] = g.class_size(i);
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        for (std::uint32_t ca = 0; ca < multiplicity[e.a.cls]; ++ca)
            for (std::uint32_t cb = 0; cb < multiplicity[e.b.cls]; ++cb)
                edges.push_back({{off[e.a.cls] + ca, e.a.idx}, {off[e.b.cls] + cb, e.b.idx}});
    std::vector<Hyperedge> tris;
    for (const auto& t : g.hyperedges())
        for (std::uint32_t c0 = 0; c0 < multiplicity[t.v[0].cls]; ++c0)
            for (std::uint32_t c1 = 0; c1 < multiplicity[t.v[1].cls]; ++c1)
                for (std::uint32_t c2 = 0; c2 < multiplicity[t.v[2].cls]; ++c2)
                    tris.push_back(Hyperedge{{Vertex{off[t.v[0].cls] + c0, t.v[0].idx},
                                              Vertex{off[t.v[1].cls] + c1, t.v[1].idx},
                                              Vertex{off[t.v[2].cls] + c2, t.v[2].idx}}});
    return Complex::strict(std::move(sizes), tris, edges);
}

OnePerClass one_per_class(const Complex& h) {
    OnePerClass out;
    for (std::uint32_t i = 0; i < h.class_count(); ++i) out.multiplicity.push_back(std::max<std::uint32_t>(1, h.class_size(i)));
    const auto off = offsets_of(out.multiplicity);
    std::vector<std::uint32_t> sizes(off.back(), 0);
    for (std::uint32_t i = 0; i < h.class_count(); ++i)
        for (std::uint32_t j = 0; j < h.class_size(i); ++j) sizes[off[i] + j] = 1;
    auto move = [&](Vertex v) { return Vertex{off[v.cls] + v.idx, 0}; };
    std::vector<Edge> edges;
    for (const auto& e : h.edges()) edges.push_back({move(e.a), move(e.b)});
    std::vector<Hyperedge> tris;
    for (const auto& t : h.hyperedges()) tris.push_back(Hyperedge{{move(t.v[0]), move(t.v[1]), move(t.v[2])}});
    out.pattern = Complex::strict(std::move(sizes), tris, edges);
    return out;
}

SandwichReport blow_up_sandwich(const Complex& h, const Complex& g) {
    resolve_class_map(h, g, {});
    auto star = one_per_class(h);
    std::vector<std::uint32_t> mult = star.multiplicity;
    mult.resize(g.class_count(), 1);
    const Complex g_star = blow_up(g, mult);
    SandwichReport r;
    r.lower = count_copies(h, g);
    r.blown = count_copies(star.pattern, g_star);
    const auto t = static_cast<std::int64_t>(h.vertex_count());
    r.upper = r.lower + (t == 0 ? Count(0) : Count(t) * t * power(g.max_class_size(), t - 1));
    r.holds = r.lower <= r.blown && r.blown <= r.upper;
    return r;
}

Complex glued_complex(const ExtensionPair& e) {
    validate_extension(e);
    const Complex& hp = e.hp;
    std::set<Vertex> base(e.inclusion.begin(), e.inclusion.end());
    std::vector<std::uint32_t> sizes = hp.class_sizes();
    std::map<Vertex, Vertex> twin;
    for (const auto& v : hp.vertices())
        if (!base.contains(v)) twin[v] = Vertex{v.cls, sizes[v.cls]++};
    auto dup = [&](Vertex v) { return base.contains(v) ? v : twin.at(v); };
    std::vector<Edge> edges(hp.edges().begin(), hp.edges().end());
    for (const auto& ed : hp.edges())
        if (!base.contains(ed.a) || !base.contains(ed.b)) edges.push_back({dup(ed.a), dup(ed.b)});
    std::vector<Hyperedge> tris(hp.hyperedges().begin(), hp.hyperedges().end());
    for (const auto& t : hp.hyperedges())
        if (!base.contains(t.v[0]) || !base.contains(t.v[1]) || !base.contains(t.v[2]))
            tris.push_back(Hyperedge{{dup(t.v[0]), dup(t.v[1]), dup(t.v[2])}});
    return Complex::strict(std::move(sizes), tris, edges);
}

SecondMomentReport second_moment_check(const ExtensionPair& e, const Complex& g) {
    SecondMomentReport r;
    const auto xs = extension_counts(e, g);
    r.copies = xs.size();
    for (const auto& x : xs) {
        r.s1 += x;
        r.s2 += x * x;
    }
    r.target = count_copies(e.hp, g);
    r.glued = count_copies(glued_complex(e), g);
    const auto t = static_cast<std::int64_t>(e.h.vertex_count());
    const auto tp = static_cast<std::int64_t>(e.hp.vertex_count());
    r.overlap_bound = tp == t ? Count(0) : Count(tp - t) * (tp - t) * power(g.max_class_size(), 2 * tp - t - 1);
    r.sum_rule = r.s1 == r.target;
    r.holds = r.glued <= r.s2 && r.s2 <= r.glued + r.overlap_bound;
    return r;
}

MomentReport moment_concentration(std::span<const double> values, double a, double delta, double beta) {
    MomentReport r;
    r.n = values.size();
    for (double x : values) {
        if (x < 0) throw DomainError("moment values must be non-negative");
        r.sum += x;
        r.sum_sq += x * x;
        if (x < (1 - beta) * a || x > (1 + beta) * a) ++r.outliers;
    }
    const double n = static_cast<double>(r.n);
    constexpr double kSlack = 1e-12;
    r.first_moment = std::abs(r.sum - a * n) <= delta * a * n * (1 + kSlack) + kSlack;
    r.second_moment = std::abs(r.sum_sq - a * a * n) <= delta * a * a * n * (1 + kSlack) + kSlack;
    r.pass = r.first_moment && r.second_moment && static_cast<double>(r.outliers) <= beta * n;
    return r;
}

}  // namespace hyperreg
