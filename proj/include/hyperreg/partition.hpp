#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperreg/core.hpp"
#include "hyperreg/density.hpp"
#include "hyperreg/triadreg.hpp"

namespace hyperreg {

/// Clusters V_1..V_t (0-based here) of equal size plus the exceptional set V_0,
/// with a family P_0, P_1, ..., P_{l_ij} of edge-disjoint bipartite graphs per
/// cluster pair. P_0 is the garbage slice. Bipartite graphs are indexed by
/// positions inside the clusters.
struct RegularityPartition {
    std::uint32_t vertex_count = 0;
    std::size_t ell = 1;
    std::vector<std::uint32_t> exceptional;
    std::vector<std::vector<std::uint32_t>> clusters;
    std::vector<std::vector<BipartiteGraph>> families;  // by pair_index(i, j)

    std::size_t t() const noexcept { return clusters.size(); }
    std::size_t n() const noexcept { return clusters.empty() ? 0 : clusters.front().size(); }
    std::size_t pair_index(std::size_t i, std::size_t j) const;
    const std::vector<BipartiteGraph>& family(std::size_t i, std::size_t j) const { return families[pair_index(i, j)]; }
    std::size_t ell_ij(std::size_t i, std::size_t j) const { return family(i, j).size() - 1; }

    /// Triad P^{ij}_a ∪ P^{jk}_b ∪ P^{ik}_c for clusters i < j < k.
    Triad triad(std::size_t i, std::size_t j, std::size_t k, std::size_t a, std::size_t b, std::size_t c) const;

    /// Throws StructuralError on unequal clusters,
    /// too many slices, slices overlapping or not covering the complete pair.
    void validate() const;
};

/// Clusters by a seeded random equal split (remainder in V_0); each cross edge
/// assigned to one of the l slices uniformly; P_0 empty.
RegularityPartition random_slicing_partition(std::uint32_t vertex_count, std::size_t t, std::size_t ell,
                                             std::uint64_t seed);

struct PairCheck {
    std::size_t i = 0, j = 0;
    std::size_t p0_edges = 0;
    bool p0_small = false;          // e(P_0) <= eps1 n^2
    bool slice_densities = false;   // |d(P_a) - 1/l| <= eps2 for a >= 1
    std::size_t irregular_edges = 0;  // edges in slices that are not eps2-regular
};

struct PartitionCheck {
    double eps1 = 0, eps2 = 0;
    std::vector<PairCheck> pairs;
    std::size_t irregular_edges = 0;
    double irregular_edge_bound = 0;  // eps1 C(t,2) n^2
    bool irregular_edges_ok = false;
    std::size_t exceptional_pairs = 0;
    double exceptional_pair_bound = 0;  // eps1 C(t,2)
    bool exceptional_pairs_ok = false;
};

/// Irregular-edge and exceptional-pair bounds; the structure is validated first and throws.
PartitionCheck check_partition(const RegularityPartition& part, std::size_t ell, std::size_t t, double eps1,
                               double eps2, const GraphRegOptions& graph = {});

struct RegularPartitionCheck {
    Count mass;            // sum of t(P) over irregular triads
    double bound = 0;      // delta3 |V|^3
    std::size_t triads = 0;
    std::size_t irregular = 0;
    bool pass = false;
};

/// Sum of t(P) over triads (slices a, b, c >= 1) that are not
/// (delta3, r)-regular, against delta3 |V|^3.
RegularPartitionCheck check_regular_partition(const Hypergraph3& g, const RegularityPartition& part, double delta3,
                                              std::size_t r, const TriadRegOptions& triad = {});

struct GoodPair {
    std::size_t i = 0, j = 0;
    bool first = false;          // e(P_0) small and every slice density near d2
    std::size_t irregular_slices = 0;
    bool second = false;         // irregular slices <= eps3 l / 6
    bool good = false;
    bool half_ell = false;       // l_ij >= l/2
};

struct GoodTriple {
    std::size_t i = 0, j = 0, k = 0;
    bool pairs_good = false;
    std::size_t irregular_triads = 0;
    bool good = false;
};

struct PartitionReport {
    double eps1 = 0, eps2 = 0, eps3 = 0, delta3 = 0;
    std::size_t r = 1;
    double d2 = 0, delta2 = 0;  // 1/l and sqrt(eps2)
    std::size_t t = 0;
    std::vector<GoodPair> pairs;
    std::vector<GoodTriple> triples;
    std::size_t bad_triples = 0;
    double bad_triple_bound = 0;  // 40 delta3 C(t,3) / eps3, reported only
    bool bad_triple_bound_met = false;
    bool half_ell_consequence = true;  // every good pair has l_ij >= l/2
};

PartitionReport classify_pairs_triples(const Hypergraph3& g, const RegularityPartition& part, double eps1,
                                       double eps2, double eps3, double delta3, std::size_t r,
                                       const GraphRegOptions& graph = {}, const TriadRegOptions& triad = {});

/// Vertex per cluster, hyperedge per good triple.
Hypergraph3 reduced_hypergraph(const PartitionReport& rep);

struct TuranResult {
    std::optional<std::vector<std::uint32_t>> clique;
    double density = 0;       // e(R) / C(t,3)
    double c0 = 0;
    bool above_c0 = false;    // diagnostic only
    std::uint64_t nodes = 0;
};

/// Backtracking search for k vertices spanning only hyperedges.
TuranResult turan_clique(const Hypergraph3& r, std::size_t k, double c0 = 0);

/// One chosen slice per clique pair.
struct TriadSystem {
    std::vector<std::uint32_t> clusters;           // clique clusters, ascending
    std::vector<std::vector<std::size_t>> alpha;   // alpha[a][b] for positions a < b

    Triad triad(const RegularityPartition& part, std::size_t a, std::size_t b, std::size_t c) const;
};

struct TriadSystemResult {
    std::optional<TriadSystem> system;
    std::size_t attempts = 0;
    std::string worst_offender;     // most frequent failure across attempts
    std::size_t worst_failures = 0;
};

TriadSystemResult select_triad_system(const Hypergraph3& g, const RegularityPartition& part,
                                      const std::vector<std::uint32_t>& clusters, double d2, double delta2,
                                      double delta3, std::size_t r, std::uint64_t seed, std::size_t max_retries,
                                      const GraphRegOptions& graph = {}, const TriadRegOptions& triad = {});

struct TripleColour {
    std::size_t a = 0, b = 0, c = 0;  // positions in the clique
    std::uint64_t triangles = 0;
    Rational density;                  // red density of the triad
    std::uint8_t colour = 0;           // 0 red (density >= 1/2), 1 blue
};

struct CliqueColouring {
    std::vector<TripleColour> triples;
    /// Red hypergraph thinned to density about 1/2 on red triads (when requested).
    std::optional<Hypergraph3> thinned_red;
    std::uint64_t thinning_seed = 0;
};

CliqueColouring colour_clique_by_density(const Hypergraph3& red, const RegularityPartition& part,
                                         const TriadSystem& sys, std::optional<std::uint64_t> thinning_seed = {});

struct ComplementDensity {
    std::size_t a = 0, b = 0, c = 0;
    std::uint64_t triangles = 0;
    Rational red, blue;
};

/// Red density and blue density (from the complement within T(P)) per triad;
/// throws std::logic_error if they do not sum to 1 on a triad with triangles.
std::vector<ComplementDensity> blue_complement_densities(const Hypergraph3& red, const RegularityPartition& part,
                                                         const TriadSystem& sys);

}  // namespace hyperreg
