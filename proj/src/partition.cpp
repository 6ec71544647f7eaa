#include "hyperreg/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "hyperreg/rng.hpp"

namespace hyperreg {

namespace {

constexpr std::uint64_t kClusterStream = 0x636c757374657273ULL;
constexpr std::uint64_t kSliceStream = 0x736c696365732121ULL;
constexpr std::uint64_t kSelectStream = 0x73656c6563742121ULL;
constexpr std::uint64_t kThinStream = 0x7468696e6e696e67ULL;

double choose(double n, int k) {
    double r = 1;
    for (int i = 0; i < k; ++i) r *= (n - i) / (i + 1);
    return n < k ? 0 : r;
}

std::string pair_name(std::size_t i, std::size_t j) {
    return "pair V" + std::to_string(i + 1) + "V" + std::to_string(j + 1);
}

std::string triple_name(std::size_t i, std::size_t j, std::size_t k) {
    return "triad V" + std::to_string(i + 1) + "V" + std::to_string(j + 1) + "V" + std::to_string(k + 1);
}

Rational slice_density(const BipartiteGraph& g) {
    const auto cells = static_cast<std::uint64_t>(g.left_size()) * g.right_size();
    return cells == 0 ? Rational(0) : Rational(Count(g.edge_count()), Count(cells));
}

}  // namespace

std::size_t RegularityPartition::pair_index(std::size_t i, std::size_t j) const {
    const std::size_t tt = t();
    if (!(i < j && j < tt)) throw DomainError("cluster pair must satisfy i < j < t");
    return i * (2 * tt - i - 1) / 2 + (j - i - 1);
}

Triad RegularityPartition::triad(std::size_t i, std::size_t j, std::size_t k, std::size_t a, std::size_t b,
                                 std::size_t c) const {
    Triad p;
    p.vertices = {clusters.at(i), clusters.at(j), clusters.at(k)};
    p.ab = family(i, j).at(a);
    p.bc = family(j, k).at(b);
    p.ac = family(i, k).at(c);
    return p;
}

void RegularityPartition::validate() const {
    const std::size_t tt = t();
    if (tt == 0) throw StructuralError("partition has no clusters");
    const std::size_t nn = vertex_count / tt;
    std::vector<char> seen(vertex_count, 0);
    auto claim = [&](std::uint32_t v) {
        if (v >= vertex_count) throw StructuralError("vertex " + std::to_string(v) + " outside the vertex set");
        if (seen[v]) throw StructuralError("vertex " + std::to_string(v) + " appears twice");
        seen[v] = 1;
    };
    for (std::size_t i = 0; i < tt; ++i) {
        if (clusters[i].size() != nn)
            throw StructuralError("cluster " + std::to_string(i + 1) + " has " + std::to_string(clusters[i].size()) +
                                  " vertices, expected floor(|V|/t) = " + std::to_string(nn));
        for (auto v : clusters[i]) claim(v);
    }
    for (auto v : exceptional) claim(v);
    if (std::count(seen.begin(), seen.end(), 0) != 0) throw StructuralError("clusters and V0 do not cover V");
    if (families.size() != tt * (tt - 1) / 2) throw StructuralError("one slice family per cluster pair required");
    for (std::size_t i = 0; i < tt; ++i)
        for (std::size_t j = i + 1; j < tt; ++j) {
            const auto& fam = family(i, j);
            if (fam.empty()) throw StructuralError(pair_name(i, j) + " has no P_0 slice");
            if (fam.size() - 1 > ell)
                throw StructuralError(pair_name(i, j) + " has " + std::to_string(fam.size() - 1) + " slices > l = " +
                                      std::to_string(ell));
            std::size_t total = 0;
            BipartiteGraph cover(nn, nn);
            for (std::size_t a = 0; a < fam.size(); ++a) {
                if (fam[a].left_size() != nn || fam[a].right_size() != nn)
                    throw StructuralError(pair_name(i, j) + " slice " + std::to_string(a) + " has wrong dimensions");
                total += fam[a].edge_count();
                for (auto [u, v] : fam[a].edges()) {
                    if (cover.has_edge(u, v))
                        throw StructuralError(pair_name(i, j) + " slices overlap at (" + std::to_string(u) + "," +
                                              std::to_string(v) + ")");
                    cover.add_edge(u, v);
                }
            }
            if (total != nn * nn) throw StructuralError(pair_name(i, j) + " slices do not cover the complete pair");
        }
}

RegularityPartition random_slicing_partition(std::uint32_t vertex_count, std::size_t t, std::size_t ell,
                                             std::uint64_t seed) {
    if (t == 0 || vertex_count < t) throw DomainError("random slicing needs 1 <= t <= |V|");
    if (ell == 0) throw DomainError("l must be at least 1");
    RegularityPartition p;
    p.vertex_count = vertex_count;
    p.ell = ell;
    std::vector<std::uint32_t> perm(vertex_count);
    for (std::uint32_t v = 0; v < vertex_count; ++v) perm[v] = v;
    CounterRng rng(seed, kClusterStream);
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t n = vertex_count / t;
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<std::uint32_t> c(perm.begin() + static_cast<long>(i * n), perm.begin() + static_cast<long>((i + 1) * n));
        std::sort(c.begin(), c.end());
        p.clusters.push_back(std::move(c));
    }
    p.exceptional.assign(perm.begin() + static_cast<long>(t * n), perm.end());
    std::sort(p.exceptional.begin(), p.exceptional.end());
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            std::vector<BipartiteGraph> fam(ell + 1, BipartiteGraph(n, n));
            const std::uint64_t stream = kSliceStream ^ mix64((i << 32) | j);
            for (std::uint32_t u = 0; u < n; ++u)
                for (std::uint32_t v = 0; v < n; ++v) {
                    const auto bits = keyed_bits(seed, stream, static_cast<std::uint64_t>(u) * n + v);
                    const auto a = 1 + static_cast<std::size_t>((static_cast<unsigned __int128>(bits) * ell) >> 64);
                    fam[a].add_edge(u, v);
                }
            p.families.push_back(std::move(fam));
        }
    return p;
}

PartitionCheck check_partition(const RegularityPartition& part, std::size_t ell, std::size_t t, double eps1,
                               double eps2, const GraphRegOptions& graph) {
    part.validate();
    if (part.t() != t) throw StructuralError("partition has " + std::to_string(part.t()) + " clusters, expected " + std::to_string(t));
    if (part.ell != ell) throw StructuralError("partition built for l = " + std::to_string(part.ell) + ", expected " + std::to_string(ell));
    PartitionCheck out;
    out.eps1 = eps1;
    out.eps2 = eps2;
    const double n = static_cast<double>(part.n());
    out.irregular_edge_bound = eps1 * choose(static_cast<double>(t), 2) * n * n;
    out.exceptional_pair_bound = eps1 * choose(static_cast<double>(t), 2);
    const Rational d2(Count(1), Count(ell));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            PairCheck pc;
            pc.i = i;
            pc.j = j;
            const auto& fam = part.family(i, j);
            pc.p0_edges = fam[0].edge_count();
            pc.p0_small = static_cast<double>(pc.p0_edges) <= eps1 * n * n;
            pc.slice_densities = true;
            for (std::size_t a = 0; a < fam.size(); ++a) {
                if (a >= 1 && abs(slice_density(fam[a]) - d2) > Rational(eps2)) pc.slice_densities = false;
                if (fam[a].edge_count() == 0) continue;
                if (check_delta_regular(fam[a], eps2, graph).status == RegStatus::irregular)
                    pc.irregular_edges += fam[a].edge_count();
            }
            out.irregular_edges += pc.irregular_edges;
            if (!(pc.p0_small && pc.slice_densities)) ++out.exceptional_pairs;
            out.pairs.push_back(pc);
        }
    out.irregular_edges_ok = static_cast<double>(out.irregular_edges) <= out.irregular_edge_bound;
    out.exceptional_pairs_ok = static_cast<double>(out.exceptional_pairs) <= out.exceptional_pair_bound;
    return out;
}

RegularPartitionCheck check_regular_partition(const Hypergraph3& g, const RegularityPartition& part, double delta3,
                                              std::size_t r, const TriadRegOptions& triad) {
    part.validate();
    if (g.vertex_count() != part.vertex_count) throw StructuralError("partition and hypergraph disagree on |V|");
    RegularPartitionCheck out;
    const double v = part.vertex_count;
    out.bound = delta3 * v * v * v;
    const std::size_t t = part.t();
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            for (std::size_t k = j + 1; k < t; ++k)
                for (std::size_t a = 1; a <= part.ell_ij(i, j); ++a)
                    for (std::size_t b = 1; b <= part.ell_ij(j, k); ++b)
                        for (std::size_t c = 1; c <= part.ell_ij(i, k); ++c) {
                            const Triad p = part.triad(i, j, k, a, b, c);
                            ++out.triads;
                            const auto verdict = check_triad_regular_any(g, p, delta3, r, triad);
                            if (!verdict.regular) {
                                ++out.irregular;
                                out.mass += verdict.triad_triangles;
                            }
                        }
    out.pass = Rational(out.mass) < Rational(delta3) * Count(part.vertex_count) * Count(part.vertex_count) *
                                         Count(part.vertex_count);
    return out;
}

PartitionReport classify_pairs_triples(const Hypergraph3& g, const RegularityPartition& part, double eps1,
                                       double eps2, double eps3, double delta3, std::size_t r,
                                       const GraphRegOptions& graph, const TriadRegOptions& triad) {
    part.validate();
    if (g.vertex_count() != part.vertex_count) throw StructuralError("partition and hypergraph disagree on |V|");
    PartitionReport rep;
    rep.eps1 = eps1;
    rep.eps2 = eps2;
    rep.eps3 = eps3;
    rep.delta3 = delta3;
    rep.r = r;
    rep.d2 = 1.0 / static_cast<double>(part.ell);
    rep.delta2 = std::sqrt(eps2);
    rep.t = part.t();
    const double n = static_cast<double>(part.n());
    const double ell = static_cast<double>(part.ell);
    const Rational d2(Count(1), Count(part.ell));
    const std::size_t t = part.t();
    std::vector<char> good(t * t, 0);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            GoodPair gp;
            gp.i = i;
            gp.j = j;
            const auto& fam = part.family(i, j);
            gp.first = static_cast<double>(fam[0].edge_count()) <= eps1 * n * n;
            for (std::size_t a = 1; a < fam.size(); ++a) {
                if (abs(slice_density(fam[a]) - d2) > Rational(eps2)) gp.first = false;
                if (!check_d_delta_regular(fam[a], rep.d2, rep.delta2, graph).regular()) ++gp.irregular_slices;
            }
            gp.second = static_cast<double>(gp.irregular_slices) <= eps3 * ell / 6;
            gp.good = gp.first && gp.second;
            gp.half_ell = 2 * part.ell_ij(i, j) >= part.ell;
            if (gp.good && !gp.half_ell) rep.half_ell_consequence = false;
            good[i * t + j] = gp.good;
            rep.pairs.push_back(gp);
        }
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            for (std::size_t k = j + 1; k < t; ++k) {
                GoodTriple gt;
                gt.i = i;
                gt.j = j;
                gt.k = k;
                gt.pairs_good = good[i * t + j] && good[j * t + k] && good[i * t + k];
                for (std::size_t a = 1; a <= part.ell_ij(i, j); ++a)
                    for (std::size_t b = 1; b <= part.ell_ij(j, k); ++b)
                        for (std::size_t c = 1; c <= part.ell_ij(i, k); ++c)
                            if (!check_triad_regular_any(g, part.triad(i, j, k, a, b, c), delta3, r, triad).regular)
                                ++gt.irregular_triads;
                gt.good = gt.pairs_good && static_cast<double>(gt.irregular_triads) <= eps3 * ell * ell * ell;
                if (!gt.good) ++rep.bad_triples;
                rep.triples.push_back(gt);
            }
    rep.bad_triple_bound = 40 * delta3 * choose(static_cast<double>(t), 3) / eps3;
    rep.bad_triple_bound_met = static_cast<double>(rep.bad_triples) <= rep.bad_triple_bound;
    return rep;
}

Hypergraph3 reduced_hypergraph(const PartitionReport& rep) {
    std::vector<Triple> edges;
    for (const auto& gt : rep.triples)
        if (gt.good)
            edges.push_back({static_cast<std::uint32_t>(gt.i), static_cast<std::uint32_t>(gt.j),
                             static_cast<std::uint32_t>(gt.k)});
    return Hypergraph3(static_cast<std::uint32_t>(rep.t), std::move(edges));
}

TuranResult turan_clique(const Hypergraph3& r, std::size_t k, double c0) {
    const std::uint32_t t = r.vertex_count();
    if (t < k) throw DomainError("clique order k = " + std::to_string(k) + " exceeds t = " + std::to_string(t));
    TuranResult out;
    out.c0 = c0;
    const double all = choose(t, 3);
    out.density = all > 0 ? static_cast<double>(r.edge_count()) / all : 0.0;
    out.above_c0 = out.density >= c0;
    std::vector<std::uint32_t> chosen;
    std::function<bool(std::uint32_t)> rec = [&](std::uint32_t from) -> bool {
        ++out.nodes;
        if (chosen.size() == k) return true;
        for (std::uint32_t v = from; v + (k - chosen.size()) <= t; ++v) {
            bool ok = true;
            for (std::size_t a = 0; a < chosen.size() && ok; ++a)
                for (std::size_t b = a + 1; b < chosen.size() && ok; ++b)
                    if (!r.contains(chosen[a], chosen[b], v)) ok = false;
            if (!ok) continue;
            chosen.push_back(v);
            if (rec(v + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (rec(0)) out.clique = chosen;
    return out;
}

Triad TriadSystem::triad(const RegularityPartition& part, std::size_t a, std::size_t b, std::size_t c) const {
    return part.triad(clusters[a], clusters[b], clusters[c], alpha[a][b], alpha[b][c], alpha[a][c]);
}

TriadSystemResult select_triad_system(const Hypergraph3& g, const RegularityPartition& part,
                                      const std::vector<std::uint32_t>& clusters, double d2, double delta2,
                                      double delta3, std::size_t r, std::uint64_t seed, std::size_t max_retries,
                                      const GraphRegOptions& graph, const TriadRegOptions& triad) {
    TriadSystemResult out;
    TriadSystem sys;
    sys.clusters = clusters;
    std::sort(sys.clusters.begin(), sys.clusters.end());
    const std::size_t k = sys.clusters.size();
    for (auto c : sys.clusters)
        if (c >= part.t()) throw DomainError("clique cluster outside the partition");
    std::map<std::string, std::size_t> failures;
    for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
        ++out.attempts;
        CounterRng rng(seed, kSelectStream ^ mix64(attempt));
        sys.alpha.assign(k, std::vector<std::size_t>(k, 0));
        bool ok = true;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b) {
                const auto l = part.ell_ij(sys.clusters[a], sys.clusters[b]);
                const auto name = pair_name(sys.clusters[a], sys.clusters[b]);
                if (l == 0) {
                    ++failures[name + " (no slices)"];
                    ok = false;
                    continue;
                }
                sys.alpha[a][b] = 1 + rng.below(l);
                const auto& slice = part.family(sys.clusters[a], sys.clusters[b])[sys.alpha[a][b]];
                if (!check_d_delta_regular(slice, d2, delta2, graph).regular()) {
                    ++failures[name];
                    ok = false;
                }
            }
        if (ok)
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = a + 1; b < k; ++b)
                    for (std::size_t c = b + 1; c < k; ++c)
                        if (!check_triad_regular_any(g, sys.triad(part, a, b, c), delta3, r, triad).regular) {
                            ++failures[triple_name(sys.clusters[a], sys.clusters[b], sys.clusters[c])];
                            ok = false;
                        }
        if (ok) {
            out.system = sys;
            return out;
        }
    }
    for (const auto& [name, count] : failures)
        if (count > out.worst_failures) {
            out.worst_failures = count;
            out.worst_offender = name;
        }
    return out;
}

CliqueColouring colour_clique_by_density(const Hypergraph3& red, const RegularityPartition& part,
                                         const TriadSystem& sys, std::optional<std::uint64_t> thinning_seed) {
    CliqueColouring out;
    const std::size_t k = sys.clusters.size();
    std::vector<Triple> thinned;
    std::vector<char> in_red_triad;
    const Rational half(1, 2);
    std::map<std::uint64_t, double> keep_probability;  // hyperedge key -> keep probability
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c) {
                const Triad p = sys.triad(part, a, b, c);
                const auto td = triad_density(red, p);
                TripleColour tc{a, b, c, td.triangles, td.density, static_cast<std::uint8_t>(td.density >= half ? 0 : 1)};
                if (thinning_seed && tc.colour == 0 && td.hyperedges > 0) {
                    const double q = 0.5 / to_double(td.density);
                    for_each_triangle(p, [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) {
                        const auto t = sorted_triple(p.vertices[0][u], p.vertices[1][v], p.vertices[2][w]);
                        if (red.contains(t)) keep_probability[Hypergraph3::key(t)] = q;
                    });
                }
                out.triples.push_back(std::move(tc));
            }
    if (thinning_seed) {
        out.thinning_seed = *thinning_seed;
        for (const auto& t : red.triples()) {
            const auto key = Hypergraph3::key(t);
            const auto it = keep_probability.find(key);
            if (it == keep_probability.end() || keyed_uniform(*thinning_seed, kThinStream, key) < it->second)
                thinned.push_back(t);
        }
        out.thinned_red = Hypergraph3(red.vertex_count(), std::move(thinned), red.class_of());
    }
    return out;
}

std::vector<ComplementDensity> blue_complement_densities(const Hypergraph3& red, const RegularityPartition& part,
                                                         const TriadSystem& sys) {
    std::vector<ComplementDensity> out;
    const std::size_t k = sys.clusters.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c) {
                const Triad p = sys.triad(part, a, b, c);
                const auto rd = triad_density(red, p);
                const auto bd = triad_density(triad_complement(red, p), p);
                if (rd.triangles > 0 && rd.density + bd.density != 1)
                    throw std::logic_error("red and blue triad densities do not sum to 1");
                out.push_back({a, b, c, rd.triangles, rd.density, bd.density});
            }
    return out;
}

}  // namespace hyperreg
