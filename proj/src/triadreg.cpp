#include "hyperreg/triadreg.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "hyperreg/rng.hpp"

namespace hyperreg {

// ---------------------------------------------------------------- triads

Triad Triad::from_complex(const Complex& c, std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    if (!(i < j && j < k && k < c.class_count())) throw DomainError("triad classes must satisfy i < j < k < class count");
    Triad t;
    const std::array<std::uint32_t, 3> cls{i, j, k};
    for (int p = 0; p < 3; ++p) {
        t.vertices[p].resize(c.class_size(cls[p]));
        for (std::uint32_t u = 0; u < c.class_size(cls[p]); ++u) t.vertices[p][u] = c.global({cls[p], u});
    }
    t.ab = c.graph().pair(i, j);
    t.bc = c.graph().pair(j, k);
    t.ac = c.graph().pair(i, k);
    return t;
}

void Triad::validate() const {
    const auto s = sizes();
    if (ab.left_size() != s[0] || ab.right_size() != s[1] || bc.left_size() != s[1] || bc.right_size() != s[2] ||
        ac.left_size() != s[0] || ac.right_size() != s[2])
        throw StructuralError("triad part dimensions do not match its vertex classes");
}

namespace {

BipartiteGraph induced_part(const BipartiteGraph& g, const Bitset& left, const Bitset& right) {
    BipartiteGraph out(g.left_size(), g.right_size());
    left.for_each([&](std::uint32_t u) { (g.left_row(u) & right).for_each([&](std::uint32_t v) { out.add_edge(u, v); }); });
    return out;
}

}  // namespace

Subtriad induced_subtriad(const Triad& p, const std::array<std::vector<std::uint32_t>, 3>& subsets) {
    const auto s = p.sizes();
    const Bitset a = Bitset::from_indices(s[0], subsets[0]);
    const Bitset b = Bitset::from_indices(s[1], subsets[1]);
    const Bitset c = Bitset::from_indices(s[2], subsets[2]);
    return Subtriad{induced_part(p.ab, a, b), induced_part(p.bc, b, c), induced_part(p.ac, a, c)};
}

Subtriad full_subtriad(const Triad& p) { return Subtriad{p.ab, p.bc, p.ac}; }

std::uint64_t count_triangles(const Triad& p, Execution exec) {
    const auto n = static_cast<std::int64_t>(p.ab.left_size());
    std::uint64_t total = 0;
    auto row = [&](std::int64_t su) {
        const auto u = static_cast<std::uint32_t>(su);
        std::uint64_t c = 0;
        p.ab.left_row(u).for_each(
            [&](std::uint32_t v) { c += Bitset::and_count(p.ac.left_row(u), p.bc.left_row(v)); });
        return c;
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : total)
        for (std::int64_t u = 0; u < n; ++u) total += row(u);
    } else {
        for (std::int64_t u = 0; u < n; ++u) total += row(u);
    }
    return total;
}

std::vector<std::array<std::uint32_t, 3>> list_triangles(const Triad& p) {
    std::vector<std::array<std::uint32_t, 3>> out;
    for_each_triangle(p, [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) { out.push_back({u, v, w}); });
    return out;
}

namespace {

bool is_hyperedge(const Hypergraph3& g, const Triad& p, std::uint32_t u, std::uint32_t v, std::uint32_t w) {
    return g.contains(p.vertices[0][u], p.vertices[1][v], p.vertices[2][w]);
}

Rational ratio(std::uint64_t hits, std::uint64_t total) {
    return total == 0 ? Rational(0) : Rational(Count(hits), Count(total));
}

void check_subgraph(const BipartiteGraph& q, const BipartiteGraph& p, const char* part, std::size_t s) {
    if (q.left_size() != p.left_size() || q.right_size() != p.right_size())
        throw StructuralError(std::string("subtriad ") + std::to_string(s) + " part " + part + " has wrong dimensions");
    for (std::uint32_t u = 0; u < q.left_size(); ++u)
        if (!q.left_row(u).is_subset_of(p.left_row(u))) {
            const Bitset extra = [&] { Bitset b = q.left_row(u); b.subtract(p.left_row(u)); return b; }();
            throw StructuralError(std::string("subtriad ") + std::to_string(s) + " part " + part + " edge (" +
                                  std::to_string(u) + "," + std::to_string(extra.indices().front()) +
                                  ") is not an edge of the triad");
        }
}

}  // namespace

TriadDensity triad_density(const Hypergraph3& g, const Triad& p, Execution exec) {
    const auto n = static_cast<std::int64_t>(p.ab.left_size());
    std::uint64_t tri = 0, hits = 0;
    auto row = [&](std::int64_t su, std::uint64_t& t, std::uint64_t& h) {
        const auto u = static_cast<std::uint32_t>(su);
        p.ab.left_row(u).for_each([&](std::uint32_t v) {
            (p.ac.left_row(u) & p.bc.left_row(v)).for_each([&](std::uint32_t w) {
                ++t;
                if (is_hyperedge(g, p, u, v, w)) ++h;
            });
        });
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : tri, hits)
        for (std::int64_t u = 0; u < n; ++u) row(u, tri, hits);
    } else {
        for (std::int64_t u = 0; u < n; ++u) row(u, tri, hits);
    }
    return {tri, hits, ratio(hits, tri)};
}

TriadDensity tuple_density(const Hypergraph3& g, const Triad& p, const SubtriadTuple& q) {
    for (std::size_t s = 0; s < q.size(); ++s) {
        check_subgraph(q[s].ab, p.ab, "ab", s);
        check_subgraph(q[s].bc, p.bc, "bc", s);
        check_subgraph(q[s].ac, p.ac, "ac", s);
    }
    TriadDensity d;
    for_each_triangle(p, [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) {
        const bool in_union = std::any_of(q.begin(), q.end(), [&](const Subtriad& s) {
            return s.ab.has_edge(u, v) && s.bc.has_edge(v, w) && s.ac.has_edge(u, w);
        });
        if (!in_union) return;
        ++d.triangles;
        if (is_hyperedge(g, p, u, v, w)) ++d.hyperedges;
    });
    d.density = ratio(d.hyperedges, d.triangles);
    return d;
}

Hypergraph3 triad_complement(const Hypergraph3& g, const Triad& p) {
    std::vector<Triple> out;
    for_each_triangle(p, [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) {
        if (!is_hyperedge(g, p, u, v, w)) out.push_back(sorted_triple(p.vertices[0][u], p.vertices[1][v], p.vertices[2][w]));
    });
    return Hypergraph3(g.vertex_count(), std::move(out), g.class_of());
}

std::string to_string(TriadStrategy s) {
    switch (s) {
        case TriadStrategy::induced: return "induced";
        case TriadStrategy::edge_sampled: return "edge-sampled";
        case TriadStrategy::exhaustive_tiny: return "exhaustive-tiny";
    }
    return "?";
}

TriadStrategy parse_triad_strategy(const std::string& s) {
    if (s == "induced") return TriadStrategy::induced;
    if (s == "edge-sampled" || s == "edge_sampled") return TriadStrategy::edge_sampled;
    if (s == "exhaustive-tiny" || s == "exhaustive_tiny") return TriadStrategy::exhaustive_tiny;
    throw DomainError("unknown triad strategy '" + s + "'");
}

std::string to_string(GraphNotion n) { return n == GraphNotion::d_delta ? "d-delta" : "delta"; }

GraphNotion parse_graph_notion(const std::string& s) {
    if (s == "d-delta" || s == "d_delta") return GraphNotion::d_delta;
    if (s == "delta") return GraphNotion::delta;
    throw DomainError("unknown graph regularity notion '" + s + "'");
}

std::string to_string(TripleStatus s) {
    switch (s) {
        case TripleStatus::regular: return "regular";
        case TripleStatus::zero_density: return "zero-density";
        case TripleStatus::irregular: return "irregular";
    }
    return "?";
}

// ---------------------------------------------------------------- candidate search

namespace {

using VertexSets = std::array<std::vector<std::uint32_t>, 3>;

/// T(P) as an indexed list, with the hyperedge indicator as a bitmask.
struct TriangleIndex {
    std::vector<std::array<std::uint32_t, 3>> tris;
    Bitset hyper;
    std::uint64_t hyper_count = 0;

    TriangleIndex(const Hypergraph3& g, const Triad& p) : tris(list_triangles(p)), hyper(tris.size()) {
        for (std::size_t t = 0; t < tris.size(); ++t)
            if (is_hyperedge(g, p, tris[t][0], tris[t][1], tris[t][2])) hyper.set(t);
        hyper_count = hyper.count();
    }

    std::size_t size() const { return tris.size(); }

    Bitset mask_of(const Subtriad& s) const {
        Bitset m(tris.size());
        for (std::size_t t = 0; t < tris.size(); ++t) {
            const auto [u, v, w] = tris[t];
            if (s.ab.has_edge(u, v) && s.bc.has_edge(v, w) && s.ac.has_edge(u, w)) m.set(t);
        }
        return m;
    }

    Bitset mask_of(const std::array<Bitset, 3>& sets) const {
        Bitset m(tris.size());
        for (std::size_t t = 0; t < tris.size(); ++t) {
            const auto [u, v, w] = tris[t];
            if (sets[0].test(u) && sets[1].test(v) && sets[2].test(w)) m.set(t);
        }
        return m;
    }
};

/// One candidate r-tuple, kept both as a triangle mask (for evaluation) and
/// in a form that can be materialized into subtriads.
struct Candidate {
    Bitset mask;
    std::vector<VertexSets> induced;  // induced strategy
    SubtriadTuple tuple;              // other strategies (filled on materialize)
};

struct Stats {
    std::uint64_t triangles = 0, hits = 0;
};

Stats stats_of(const TriangleIndex& idx, const Bitset& mask) {
    return {mask.count(), Bitset::and_count(mask, idx.hyper)};
}

bool qualifies(const Stats& s, std::uint64_t tp, double delta3) {
    return Rational(Count(s.triangles)) >= Rational(delta3) * Count(tp);
}

bool violates_fixed(const Stats& s, std::uint64_t tp, double d3, double delta3) {
    if (!qualifies(s, tp, delta3)) return false;
    return abs(Rational(d3) - ratio(s.hits, s.triangles)) >= Rational(delta3);
}

std::vector<std::uint32_t> all_of(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0u);
    return v;
}

constexpr std::uint64_t kInducedStream = 0x696e647563656421ULL;
constexpr std::uint64_t kEdgeStream = 0x6564676573616d70ULL;

/// Deterministic, index-addressable candidate family for one strategy.
class CandidateSource {
public:
    CandidateSource(const Triad& p, const TriangleIndex& idx, std::size_t r, const TriadRegOptions& opt)
        : p_(p), idx_(idx), r_(r), opt_(opt) {
        if (opt.strategy == TriadStrategy::induced) build_heuristics();
        if (opt.strategy == TriadStrategy::exhaustive_tiny) build_exhaustive();
    }

    std::size_t size() const {
        switch (opt_.strategy) {
            case TriadStrategy::induced: return heuristics_.size() + opt_.budget;
            case TriadStrategy::edge_sampled: return 1 + opt_.budget;
            case TriadStrategy::exhaustive_tiny: return unions_.size();
        }
        return 0;
    }

    Candidate make(std::size_t i) const {
        switch (opt_.strategy) {
            case TriadStrategy::induced: return make_induced(i);
            case TriadStrategy::edge_sampled: return make_edge(i);
            case TriadStrategy::exhaustive_tiny: return make_exhaustive(i);
        }
        return {};
    }

    /// Candidate with its subtriad tuple filled in.
    Candidate materialize(std::size_t i) const {
        Candidate c = make(i);
        if (opt_.strategy == TriadStrategy::induced) {
            for (const auto& sets : c.induced) c.tuple.push_back(induced_subtriad(p_, sets));
        } else if (opt_.strategy == TriadStrategy::edge_sampled) {
            c.tuple = edge_tuple(i);
        } else {
            for (auto em : unions_[i].edge_masks) c.tuple.push_back(subtriad_from_edge_mask(em));
        }
        return c;
    }

private:
    Candidate single_induced(VertexSets sets) const {
        Candidate c;
        const auto s = p_.sizes();
        std::array<Bitset, 3> bits{Bitset::from_indices(s[0], sets[0]), Bitset::from_indices(s[1], sets[1]),
                                   Bitset::from_indices(s[2], sets[2])};
        c.mask = idx_.mask_of(bits);
        c.induced.push_back(std::move(sets));
        return c;
    }

    void build_heuristics() {
        const auto s = p_.sizes();
        VertexSets full{all_of(s[0]), all_of(s[1]), all_of(s[2])};
        heuristics_.push_back(full);
        // per-vertex hyperedge density of its triangles
        std::array<std::vector<double>, 3> local;
        std::array<std::vector<std::uint64_t>, 3> through, hit;
        for (int q = 0; q < 3; ++q) {
            through[q].assign(s[q], 0);
            hit[q].assign(s[q], 0);
        }
        for (std::size_t t = 0; t < idx_.size(); ++t)
            for (int q = 0; q < 3; ++q) {
                ++through[q][idx_.tris[t][q]];
                if (idx_.hyper.test(t)) ++hit[q][idx_.tris[t][q]];
            }
        std::array<std::vector<std::uint32_t>, 3> ranked;
        for (int q = 0; q < 3; ++q) {
            local[q].resize(s[q]);
            for (std::size_t u = 0; u < s[q]; ++u)
                local[q][u] = through[q][u] ? static_cast<double>(hit[q][u]) / static_cast<double>(through[q][u]) : 0.0;
            ranked[q] = all_of(s[q]);
            std::stable_sort(ranked[q].begin(), ranked[q].end(),
                             [&](auto a, auto b) { return local[q][a] > local[q][b]; });
        }
        auto head = [](const std::vector<std::uint32_t>& v, std::size_t k) {
            std::vector<std::uint32_t> out(v.begin(), v.begin() + static_cast<long>(k));
            std::sort(out.begin(), out.end());
            return out;
        };
        auto tail = [](const std::vector<std::uint32_t>& v, std::size_t k) {
            std::vector<std::uint32_t> out(v.end() - static_cast<long>(k), v.end());
            std::sort(out.begin(), out.end());
            return out;
        };
        const double fractions[] = {0.25, 1.0 / 3, 0.5, 2.0 / 3, 0.75};
        for (double f : fractions) {
            std::array<std::size_t, 3> k;
            for (int q = 0; q < 3; ++q) k[q] = std::clamp<std::size_t>(static_cast<std::size_t>(f * s[q] + 0.5), 1, std::max<std::size_t>(s[q], 1));
            if (s[0] == 0 || s[1] == 0 || s[2] == 0) break;
            for (int q = 0; q < 3; ++q) {
                for (int side = 0; side < 4; ++side) {
                    VertexSets sets = full;
                    switch (side) {
                        case 0: sets[q] = head(ranked[q], k[q]); break;
                        case 1: sets[q] = tail(ranked[q], k[q]); break;
                        case 2: sets[q] = head(all_of(s[q]), k[q]); break;
                        case 3: sets[q] = tail(all_of(s[q]), k[q]); break;
                    }
                    heuristics_.push_back(std::move(sets));
                }
            }
            VertexSets top, bottom;
            for (int q = 0; q < 3; ++q) {
                top[q] = head(ranked[q], k[q]);
                bottom[q] = tail(ranked[q], k[q]);
            }
            heuristics_.push_back(std::move(top));
            heuristics_.push_back(std::move(bottom));
        }
    }

    Candidate make_induced(std::size_t i) const {
        if (i < heuristics_.size()) return single_induced(heuristics_[i]);
        const auto s = p_.sizes();
        CounterRng rng(opt_.seed, kInducedStream ^ mix64(i));
        Candidate c;
        c.mask = Bitset(idx_.size());
        for (std::size_t q = 0; q < r_; ++q) {
            VertexSets sets;
            std::array<Bitset, 3> bits;
            for (int cls = 0; cls < 3; ++cls) {
                bits[cls] = Bitset(s[cls]);
                if (s[cls] == 0) continue;
                const auto k = 1 + rng.below(s[cls]);
                auto pool = all_of(s[cls]);
                for (std::size_t a = 0; a < k; ++a) std::swap(pool[a], pool[a + rng.below(s[cls] - a)]);
                pool.resize(k);
                std::sort(pool.begin(), pool.end());
                for (auto u : pool) bits[cls].set(u);
                sets[cls] = std::move(pool);
            }
            c.mask |= idx_.mask_of(bits);
            c.induced.push_back(std::move(sets));
        }
        return c;
    }

    // Edge-sampled: candidate 0 is P itself; others keep each edge of each part
    // of each Q(s) independently with a per-subtriad probability.
    bool keep_edge(std::size_t i, std::size_t s, int part, std::uint32_t u, std::uint32_t v, double q) const {
        const std::uint64_t stream = kEdgeStream ^ mix64((static_cast<std::uint64_t>(i) << 20) ^ (s << 2) ^ static_cast<std::uint64_t>(part));
        return keyed_uniform(opt_.seed, stream, (static_cast<std::uint64_t>(u) << 32) | v) < q;
    }

    double keep_probability(std::size_t i, std::size_t s) const {
        return 1.0 - keyed_uniform(opt_.seed, kEdgeStream, (static_cast<std::uint64_t>(i) << 16) ^ s);  // (0,1]
    }

    Candidate make_edge(std::size_t i) const {
        Candidate c;
        if (i == 0) {
            c.mask = Bitset(idx_.size(), true);
            return c;
        }
        c.mask = Bitset(idx_.size());
        for (std::size_t s = 0; s < r_; ++s) {
            const double q = keep_probability(i, s);
            for (std::size_t t = 0; t < idx_.size(); ++t) {
                const auto [u, v, w] = idx_.tris[t];
                if (keep_edge(i, s, 0, u, v, q) && keep_edge(i, s, 1, v, w, q) && keep_edge(i, s, 2, u, w, q)) c.mask.set(t);
            }
        }
        return c;
    }

    SubtriadTuple edge_tuple(std::size_t i) const {
        if (i == 0) return {full_subtriad(p_)};
        SubtriadTuple out;
        for (std::size_t s = 0; s < r_; ++s) {
            const double q = keep_probability(i, s);
            Subtriad st{BipartiteGraph(p_.ab.left_size(), p_.ab.right_size()),
                        BipartiteGraph(p_.bc.left_size(), p_.bc.right_size()),
                        BipartiteGraph(p_.ac.left_size(), p_.ac.right_size())};
            for (auto [u, v] : p_.ab.edges())
                if (keep_edge(i, s, 0, u, v, q)) st.ab.add_edge(u, v);
            for (auto [u, v] : p_.bc.edges())
                if (keep_edge(i, s, 1, u, v, q)) st.bc.add_edge(u, v);
            for (auto [u, v] : p_.ac.edges())
                if (keep_edge(i, s, 2, u, v, q)) st.ac.add_edge(u, v);
            out.push_back(std::move(st));
        }
        return out;
    }

    // Exhaustive: every subtriad is an edge subset of P; unions of up to r
    // distinct triangle sets cover the whole r-tuple quantifier.
    struct Union {
        std::uint64_t triangles;
        std::vector<std::uint32_t> edge_masks;
    };

    Subtriad subtriad_from_edge_mask(std::uint32_t em) const {
        Subtriad st{BipartiteGraph(p_.ab.left_size(), p_.ab.right_size()),
                    BipartiteGraph(p_.bc.left_size(), p_.bc.right_size()),
                    BipartiteGraph(p_.ac.left_size(), p_.ac.right_size())};
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (!((em >> e) & 1u)) continue;
            const auto [part, u, v] = edges_[e];
            (part == 0 ? st.ab : part == 1 ? st.bc : st.ac).add_edge(u, v);
        }
        return st;
    }

    void build_exhaustive() {
        for (auto [u, v] : p_.ab.edges()) edges_.push_back({0, u, v});
        for (auto [u, v] : p_.bc.edges()) edges_.push_back({1, u, v});
        for (auto [u, v] : p_.ac.edges()) edges_.push_back({2, u, v});
        if (edges_.size() > opt_.tiny_edge_cap)
            throw CapacityError("exhaustive-tiny strategy limited to triads with <= " + std::to_string(opt_.tiny_edge_cap) +
                                " edges (got " + std::to_string(edges_.size()) + ")");
        if (idx_.size() > 64) throw CapacityError("exhaustive-tiny strategy limited to 64 triangles");
        auto edge_id = [&](int part, std::uint32_t u, std::uint32_t v) {
            for (std::size_t e = 0; e < edges_.size(); ++e)
                if (edges_[e] == std::array<std::uint32_t, 3>{static_cast<std::uint32_t>(part), u, v}) return e;
            return edges_.size();
        };
        std::vector<std::uint32_t> need(idx_.size());
        for (std::size_t t = 0; t < idx_.size(); ++t) {
            const auto [u, v, w] = idx_.tris[t];
            need[t] = (1u << edge_id(0, u, v)) | (1u << edge_id(1, v, w)) | (1u << edge_id(2, u, w));
        }
        std::map<std::uint64_t, std::uint32_t> singles;  // triangle set -> smallest generating edge set
        for (std::uint32_t em = 0; em < (1u << edges_.size()); ++em) {
            std::uint64_t tm = 0;
            for (std::size_t t = 0; t < need.size(); ++t)
                if ((need[t] & em) == need[t]) tm |= 1ull << t;
            singles.try_emplace(tm, em);
        }
        std::map<std::uint64_t, std::vector<std::uint32_t>> reach;
        for (auto [tm, em] : singles) reach.emplace(tm, std::vector<std::uint32_t>{em});
        for (std::size_t level = 1; level < r_; ++level) {
            auto next = reach;
            for (const auto& [tm, ems] : reach)
                for (auto [sm, sem] : singles) {
                    if (next.contains(tm | sm)) continue;
                    auto v = ems;
                    v.push_back(sem);
                    next.emplace(tm | sm, std::move(v));
                }
            if (next.size() == reach.size()) break;
            reach = std::move(next);
        }
        for (auto& [tm, ems] : reach) unions_.push_back({tm, ems});
    }

    Candidate make_exhaustive(std::size_t i) const {
        Candidate c;
        c.mask = Bitset(idx_.size());
        for (std::size_t t = 0; t < idx_.size(); ++t)
            if ((unions_[i].triangles >> t) & 1u) c.mask.set(t);
        return c;
    }

    const Triad& p_;
    const TriangleIndex& idx_;
    std::size_t r_;
    TriadRegOptions opt_;
    std::vector<VertexSets> heuristics_;
    std::vector<std::array<std::uint32_t, 3>> edges_;
    std::vector<Union> unions_;
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// First candidate index satisfying `bad`, scanning in index order.
template <class Pred>
std::size_t first_violation(const CandidateSource& src, const TriangleIndex& idx, Execution exec, Pred bad) {
    const auto n = static_cast<std::int64_t>(src.size());
    std::size_t best = kNone;
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            if (ui > best) continue;
            if (bad(stats_of(idx, src.make(ui).mask))) best = std::min(best, ui);
        }
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            if (bad(stats_of(idx, src.make(static_cast<std::size_t>(i)).mask))) return static_cast<std::size_t>(i);
    }
    return best;
}

TriadWitness to_witness(const Candidate& c, const TriangleIndex& idx) {
    const auto st = stats_of(idx, c.mask);
    return TriadWitness{c.tuple, c.induced, st.triangles, st.hits, ratio(st.hits, st.triangles)};
}

/// Greedy shrink: drop vertices (induced) or edges (others) one at a time while
/// `still_bad` holds for the recomputed stats.
template <class Pred>
void shrink(Candidate& c, const Triad& p, const TriangleIndex& idx, Pred still_bad) {
    constexpr double kWorkCap = 5e7;
    auto union_mask = [&](const std::vector<Bitset>& parts) {
        Bitset m(idx.size());
        for (const auto& b : parts) m |= b;
        return m;
    };
    if (!c.induced.empty()) {
        std::size_t verts = 0;
        for (const auto& sets : c.induced) verts += sets[0].size() + sets[1].size() + sets[2].size();
        if (static_cast<double>(verts) * static_cast<double>(idx.size()) > kWorkCap) return;
        const auto s = p.sizes();
        auto bits_of = [&](const VertexSets& sets) {
            return std::array<Bitset, 3>{Bitset::from_indices(s[0], sets[0]), Bitset::from_indices(s[1], sets[1]),
                                         Bitset::from_indices(s[2], sets[2])};
        };
        std::vector<Bitset> parts;
        for (const auto& sets : c.induced) parts.push_back(idx.mask_of(bits_of(sets)));
        for (std::size_t q = 0; q < c.induced.size(); ++q)
            for (int cls = 0; cls < 3; ++cls) {
                auto& members = c.induced[q][cls];
                for (std::size_t pos = 0; pos < members.size() && members.size() > 1;) {
                    auto trial = c.induced[q];
                    trial[cls].erase(trial[cls].begin() + static_cast<long>(pos));
                    auto saved = parts[q];
                    parts[q] = idx.mask_of(bits_of(trial));
                    if (still_bad(stats_of(idx, union_mask(parts)))) {
                        c.induced[q] = std::move(trial);
                    } else {
                        parts[q] = std::move(saved);
                        ++pos;
                    }
                }
            }
        c.tuple.clear();
        for (const auto& sets : c.induced) c.tuple.push_back(induced_subtriad(p, sets));
        c.mask = union_mask(parts);
        return;
    }
    std::size_t edges = 0;
    for (const auto& st : c.tuple) edges += st.ab.edge_count() + st.bc.edge_count() + st.ac.edge_count();
    if (static_cast<double>(edges) * static_cast<double>(idx.size()) > kWorkCap) return;
    std::vector<Bitset> parts;
    for (const auto& st : c.tuple) parts.push_back(idx.mask_of(st));
    for (std::size_t q = 0; q < c.tuple.size(); ++q)
        for (int part = 0; part < 3; ++part) {
            auto& g = part == 0 ? c.tuple[q].ab : part == 1 ? c.tuple[q].bc : c.tuple[q].ac;
            for (auto [u, v] : g.edges()) {
                g.remove_edge(u, v);
                auto saved = parts[q];
                parts[q] = idx.mask_of(c.tuple[q]);
                if (!still_bad(stats_of(idx, union_mask(parts)))) {
                    g.add_edge(u, v);
                    parts[q] = std::move(saved);
                }
            }
        }
    c.mask = union_mask(parts);
}

}  // namespace

TriadRegVerdict check_triad_regular(const Hypergraph3& g, const Triad& p, double d3, double delta3, std::size_t r,
                                    const TriadRegOptions& opt) {
    if (!(delta3 > 0 && delta3 <= 1)) throw DomainError("delta3 must lie in (0,1]");
    if (r < 1) throw DomainError("r must be at least 1");
    p.validate();
    const TriangleIndex idx(g, p);
    const CandidateSource src(p, idx, r, opt);
    const std::uint64_t tp = idx.size();

    TriadRegVerdict v;
    v.strategy = opt.strategy;
    v.complete = opt.strategy == TriadStrategy::exhaustive_tiny;
    v.triad_triangles = tp;
    v.triad_density = ratio(idx.hyper_count, tp);
    v.d3 = d3;
    v.candidates = src.size();

    auto bad = [&](const Stats& s) { return violates_fixed(s, tp, d3, delta3); };
    const auto hit = first_violation(src, idx, opt.exec, bad);
    if (hit == kNone) return v;
    Candidate c = src.materialize(hit);
    if (opt.minimize) shrink(c, p, idx, bad);
    v.regular = false;
    v.witness = to_witness(c, idx);
    return v;
}

TriadRegVerdict check_triad_regular_any(const Hypergraph3& g, const Triad& p, double delta3, std::size_t r,
                                        const TriadRegOptions& opt) {
    if (!(delta3 > 0 && delta3 <= 1)) throw DomainError("delta3 must lie in (0,1]");
    if (r < 1) throw DomainError("r must be at least 1");
    p.validate();
    const TriangleIndex idx(g, p);
    const CandidateSource src(p, idx, r, opt);
    const std::uint64_t tp = idx.size();
    const auto n = src.size();

    // extreme qualifying densities; ties resolved to the smaller index
    std::vector<Rational> dens(n);
    std::vector<char> ok(n, 0);
    auto eval = [&](std::size_t i) {
        const auto st = stats_of(idx, src.make(i).mask);
        ok[i] = qualifies(st, tp, delta3);
        dens[i] = ratio(st.hits, st.triangles);
    };
    const auto sn = static_cast<std::int64_t>(n);
    if (opt.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < sn; ++i) eval(static_cast<std::size_t>(i));
    } else {
        for (std::int64_t i = 0; i < sn; ++i) eval(static_cast<std::size_t>(i));
    }
    std::size_t lo = kNone, hi = kNone;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) continue;
        if (lo == kNone || dens[i] < dens[lo]) lo = i;
        if (hi == kNone || dens[i] > dens[hi]) hi = i;
    }

    TriadRegVerdict v;
    v.strategy = opt.strategy;
    v.complete = opt.strategy == TriadStrategy::exhaustive_tiny;
    v.triad_triangles = tp;
    v.triad_density = ratio(idx.hyper_count, tp);
    v.candidates = n;
    if (lo == kNone) return v;
    v.d3 = to_double((dens[lo] + dens[hi]) / 2);
    if (dens[hi] - dens[lo] < Rational(2 * delta3)) return v;

    Candidate low = src.materialize(lo), high = src.materialize(hi);
    const Rational high_d = dens[hi], low_d = dens[lo];
    if (opt.minimize) {
        shrink(low, p, idx, [&](const Stats& s) {
            return qualifies(s, tp, delta3) && high_d - ratio(s.hits, s.triangles) >= Rational(2 * delta3);
        });
        const Rational new_low = ratio(stats_of(idx, low.mask).hits, stats_of(idx, low.mask).triangles);
        shrink(high, p, idx, [&](const Stats& s) {
            return qualifies(s, tp, delta3) && ratio(s.hits, s.triangles) - new_low >= Rational(2 * delta3);
        });
    }
    v.regular = false;
    v.witness = to_witness(low, idx);
    v.opposite = to_witness(high, idx);
    return v;
}

bool witness_violates(const Hypergraph3& g, const Triad& p, const TriadWitness& w, double d3, double delta3) {
    const auto td = tuple_density(g, p, w.tuple);
    if (td.triangles != w.triangles || td.hyperedges != w.hyperedges) return false;
    const auto tp = count_triangles(p, Execution::serial);
    if (Rational(Count(td.triangles)) < Rational(delta3) * Count(tp)) return false;
    return abs(Rational(d3) - td.density) >= Rational(delta3);
}

// ---------------------------------------------------------------- complexes

ComplexRegReport check_complex_regular(const Complex& g, const ComplexRegOptions& opt) {
    ComplexRegReport rep;
    const auto k = static_cast<std::uint32_t>(g.class_count());
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j) {
            PairReport pr;
            pr.i = i;
            pr.j = j;
            const auto& bp = g.graph().pair(i, j);
            pr.density = bp.left_size() && bp.right_size() ? bipartite_density(bp) : Rational(0);
            pr.verdict = opt.notion == GraphNotion::d_delta ? check_d_delta_regular(bp, opt.d2, opt.delta2, opt.graph)
                                                            : check_delta_regular(bp, opt.delta2, opt.graph);
            if (pr.verdict.status == RegStatus::irregular) rep.regular = false;
            rep.pairs.push_back(std::move(pr));
        }
    const Hypergraph3 hyper = g.hypergraph();
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j)
            for (std::uint32_t l = j + 1; l < k; ++l) {
                TripleReport tr;
                tr.i = i;
                tr.j = j;
                tr.k = l;
                const Triad p = Triad::from_complex(g, i, j, l);
                const auto td = triad_density(hyper, p, opt.triad.exec);
                if (td.hyperedges == 0) {
                    tr.status = TripleStatus::zero_density;
                    tr.verdict.triad_triangles = td.triangles;
                    tr.verdict.triad_density = td.density;
                    tr.verdict.strategy = opt.triad.strategy;
                    tr.verdict.d3 = opt.d3;
                } else {
                    tr.verdict = check_triad_regular(hyper, p, opt.d3, opt.delta3, opt.r, opt.triad);
                    tr.status = tr.verdict.regular ? TripleStatus::regular : TripleStatus::irregular;
                    if (!tr.verdict.regular) rep.regular = false;
                }
                rep.triples.push_back(std::move(tr));
            }
    return rep;
}

}  // namespace hyperreg
