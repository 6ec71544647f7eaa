#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperreg/core.hpp"
#include "hyperreg/density.hpp"

namespace hyperreg {

/// 3-partite graph P = P^{ab} ∪ P^{bc} ∪ P^{ac} over three vertex classes.
/// `vertices[p][u]` is the global id (in the host hypergraph) of local vertex
/// u of class position p, so the triad can be cut from a complex or from an
/// arbitrary cluster partition.
struct Triad {
    std::array<std::vector<std::uint32_t>, 3> vertices;
    BipartiteGraph ab;  // class 0 -> class 1
    BipartiteGraph bc;  // class 1 -> class 2
    BipartiteGraph ac;  // class 0 -> class 2

    std::array<std::size_t, 3> sizes() const {
        return {vertices[0].size(), vertices[1].size(), vertices[2].size()};
    }
    std::size_t edge_count() const { return ab.edge_count() + bc.edge_count() + ac.edge_count(); }

    /// Triad induced by classes i < j < k of a complex (global ids of the complex).
    static Triad from_complex(const Complex& c, std::uint32_t i, std::uint32_t j, std::uint32_t k);
    /// Checks part dimensions against the vertex lists.
    void validate() const;
};

/// Subtriad: each part a subgraph of the corresponding part of its triad.
struct Subtriad {
    BipartiteGraph ab, bc, ac;
};

/// Tuple (Q(1),...,Q(r)); repetition is allowed and harmless under union.
using SubtriadTuple = std::vector<Subtriad>;

/// Subtriad of P induced on vertex subsets of its three classes.
Subtriad induced_subtriad(const Triad& p, const std::array<std::vector<std::uint32_t>, 3>& subsets);
Subtriad full_subtriad(const Triad& p);

template <class F>
void for_each_triangle(const Triad& p, F&& f) {
    for (std::uint32_t u = 0; u < p.ab.left_size(); ++u)
        p.ab.left_row(u).for_each([&](std::uint32_t v) {
            const Bitset w = p.ac.left_row(u) & p.bc.left_row(v);
            w.for_each([&](std::uint32_t x) { f(u, v, x); });
        });
}

/// t(P): exact triangle count.
std::uint64_t count_triangles(const Triad& p, Execution exec = Execution::parallel);
std::vector<std::array<std::uint32_t, 3>> list_triangles(const Triad& p);

struct TriadDensity {
    std::uint64_t triangles = 0;  // t
    std::uint64_t hyperedges = 0;  // |E(G) ∩ T|
    Rational density;              // hyperedges / triangles, 0 when triangles == 0
};

/// d_G(P).
TriadDensity triad_density(const Hypergraph3& g, const Triad& p, Execution exec = Execution::parallel);
/// t(Q) and d_G(Q) over the union of the T(Q(s)); throws StructuralError when
/// a part of some Q(s) is not a subgraph of the matching part of P.
TriadDensity tuple_density(const Hypergraph3& g, const Triad& p, const SubtriadTuple& q);

/// T(P) \ E(G) as a hypergraph on the same vertex set (the "blue" side of a triad).
Hypergraph3 triad_complement(const Hypergraph3& g, const Triad& p);

enum class TriadStrategy { induced, edge_sampled, exhaustive_tiny };
std::string to_string(TriadStrategy s);
TriadStrategy parse_triad_strategy(const std::string& s);

struct TriadWitness {
    SubtriadTuple tuple;
    /// Vertex subsets per subtriad when the tuple came from the induced strategy.
    std::vector<std::array<std::vector<std::uint32_t>, 3>> induced_sets;
    std::uint64_t triangles = 0;
    std::uint64_t hyperedges = 0;
    Rational density;
};

struct TriadRegOptions {
    TriadStrategy strategy = TriadStrategy::induced;
    std::uint64_t budget = 2000;  // random candidate tuples
    std::uint64_t seed = 0;
    std::size_t tiny_edge_cap = 12;
    bool minimize = true;
    Execution exec = Execution::parallel;
};

struct TriadRegVerdict {
    bool regular = true;
    TriadStrategy strategy = TriadStrategy::induced;
    /// True when a pass is a proof over the full r-tuple quantifier
    /// (exhaustive_tiny only).
    bool complete = false;
    std::optional<TriadWitness> witness;
    /// Second extreme tuple for the "some d" form (density range too wide).
    std::optional<TriadWitness> opposite;
    std::uint64_t triad_triangles = 0;
    Rational triad_density;
    double d3 = 0;  // the d tested (for the "some d" form: midpoint of observed range)
    std::uint64_t candidates = 0;
};

/// (d3, delta3, r)-regularity of P with respect to G: every r-tuple with
/// t(Q) >= delta3 t(P) must satisfy |d3 - d_G(Q)| < delta3.
TriadRegVerdict check_triad_regular(const Hypergraph3& g, const Triad& p, double d3, double delta3, std::size_t r,
                                    const TriadRegOptions& opt = {});

/// (delta3, r)-regularity: (d, delta3, r)-regular for some d. Over the tested
/// candidates this holds iff max density - min density < 2 delta3.
TriadRegVerdict check_triad_regular_any(const Hypergraph3& g, const Triad& p, double delta3, std::size_t r,
                                        const TriadRegOptions& opt = {});

/// Re-derives the witness numbers from scratch and checks the violation.
bool witness_violates(const Hypergraph3& g, const Triad& p, const TriadWitness& w, double d3, double delta3);

enum class GraphNotion { d_delta, delta };
std::string to_string(GraphNotion n);
GraphNotion parse_graph_notion(const std::string& s);

struct ComplexRegOptions {
    double d2 = 0.5, delta2 = 0.1;
    double d3 = 0.5, delta3 = 0.1;
    std::size_t r = 1;
    GraphNotion notion = GraphNotion::d_delta;
    GraphRegOptions graph;
    TriadRegOptions triad;
};

struct PairReport {
    std::uint32_t i = 0, j = 0;
    Rational density;
    GraphRegVerdict verdict;
};

enum class TripleStatus { regular, zero_density, irregular };
std::string to_string(TripleStatus s);

struct TripleReport {
    std::uint32_t i = 0, j = 0, k = 0;
    TripleStatus status = TripleStatus::regular;
    TriadRegVerdict verdict;
};

struct ComplexRegReport {
    std::vector<PairReport> pairs;
    std::vector<TripleReport> triples;
    bool regular = true;
};

/// (d3, delta3, d2, delta2, r)-regularity of a complex: every class pair
/// regular or empty, every class triple regular or of zero hypergraph density.
ComplexRegReport check_complex_regular(const Complex& g, const ComplexRegOptions& opt);

}  // namespace hyperreg
