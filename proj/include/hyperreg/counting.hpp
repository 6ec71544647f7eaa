#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hyperreg/core.hpp"

namespace hyperreg {

/// Pattern class -> host class. Empty means identity.
using ClassMap = std::vector<std::uint32_t>;

/// Image of each pattern vertex, indexed by the pattern's global id.
using Embedding = std::vector<Vertex>;

/// Backtracking search for labelled partition-respecting copies of a pattern
/// complex in a host complex. Copies are not induced; vertices mapped into the
/// same host class are distinct.
class CopySearch {
public:
    CopySearch(const Complex& pattern, const Complex& host, std::span<const std::uint32_t> class_map = {},
               bool graph_only = false);

    /// Pins pattern vertex `p` (global id) to host vertex `v`. Pinned vertices
    /// are placed first and must already be consistent with each other.
    void pin(std::uint32_t p, Vertex v);
    /// Overrides the static order of the free vertices (pattern global ids).
    void set_order(std::vector<std::uint32_t> order);

    Count count(Execution exec = Execution::parallel) const;
    /// Visits copies in lexicographic order of the search; stop by returning false.
    void for_each(const std::function<bool(const Embedding&)>& f) const;

    struct Failure {
        std::vector<std::pair<std::uint32_t, Vertex>> deepest;  // (pattern vertex, image) in order
        std::uint32_t stuck_vertex = 0;                         // pattern vertex with no candidates
    };
    /// First copy in search order, or the deepest failed partial embedding.
    std::optional<Embedding> first(Failure* failure = nullptr) const;

    const std::vector<std::uint32_t>& order() const noexcept { return order_; }
    std::uint32_t host_class_of(std::uint32_t pattern_class) const { return map_[pattern_class]; }

private:
    struct Step {
        std::uint32_t vertex;                      // pattern global id
        std::uint32_t host_class;
        std::vector<std::uint32_t> back_edges;     // positions of earlier neighbours
        std::vector<std::pair<std::uint32_t, std::uint32_t>> back_tris;  // earlier position pairs
        std::optional<std::uint32_t> pinned;       // fixed host index
    };

    void build_steps();
    Bitset candidates(std::size_t pos, const std::vector<Vertex>& img, const std::vector<Bitset>& used) const;

    const Complex& h_;
    const Complex& g_;
    ClassMap map_;
    bool graph_only_;
    bool impossible_ = false;  // a pattern edge collapses into one host class
    bool custom_order_ = false;
    std::vector<std::pair<std::uint32_t, Vertex>> pins_;
    std::vector<std::uint32_t> order_;
    std::vector<std::size_t> degree_;
    std::vector<Step> steps_;
};

/// Throws StructuralError when the class map does not fit pattern and host.
ClassMap resolve_class_map(const Complex& pattern, const Complex& host, std::span<const std::uint32_t> class_map);

/// |H|_G.
Count count_copies(const Complex& h, const Complex& g, std::span<const std::uint32_t> class_map = {},
                   Execution exec = Execution::parallel);
/// |H^(2)|_G: hyperedges ignored on both sides.
Count count_graph_copies(const Complex& h, const Complex& g, std::span<const std::uint32_t> class_map = {},
                         Execution exec = Execution::parallel);

/// True when `phi` is a labelled partition-respecting copy of H in G.
bool is_copy(const Complex& h, const Complex& g, const Embedding& phi, std::span<const std::uint32_t> class_map = {},
             bool graph_only = false);

/// H together with its placement inside H' (same class indices).
struct ExtensionPair {
    Complex h;
    Complex hp;
    std::vector<Vertex> inclusion;  // H global id -> vertex of H'
};

/// Throws DomainError unless `inclusion` makes H an induced subcomplex of H'.
void validate_extension(const ExtensionPair& e);
/// Builds the pair (H'[keep], H') with H' induced on `keep`.
ExtensionPair induced_pair(const Complex& hp, std::span<const Vertex> keep);

/// |phi -> H'|_G: extensions of the copy phi of H to copies of H'.
Count count_extensions(const ExtensionPair& e, const Embedding& phi, const Complex& g,
                       std::span<const std::uint32_t> class_map = {});

/// n^t d2^e2 d3^e3.
double predicted_count(const Complex& h, double n, double d2, double d3);
/// n^{|H'|-|H|} d2^{e2(H')-e2(H)} d3^{e3(H')-e3(H)}.
double predicted_extension(const Complex& h, const Complex& hp, double n, double d2, double d3);
/// n^t d2^e2 prod d_e, with `per_edge` aligned to h.hyperedges().
double predicted_count_per_edge(const Complex& h, double n, double d2, std::span<const double> per_edge);

/// G_D: on each host class triple hit by a hyperedge of D, hyperedges become
/// the triangles of the underlying graph that were not hyperedges.
Complex partial_complement(const Complex& g, const Complex& h, std::span<const Hyperedge> d,
                           std::span<const std::uint32_t> class_map = {});

/// Class i replaced by multiplicity[i] copies; copies of one class are not
/// joined to each other. New class of copy c of class i is offset(i) + c.
Complex blow_up(const Complex& g, std::span<const std::uint32_t> multiplicity);

/// H* from H: every pattern vertex moved into its own class, with the class
/// layout of blow_up(G, multiplicity).
struct OnePerClass {
    Complex pattern;
    std::vector<std::uint32_t> multiplicity;
};
OnePerClass one_per_class(const Complex& h);

struct SandwichReport {
    Count lower;        // |H|_G
    Count blown;        // |H*|_{G*}
    Count upper;        // |H|_G + |H|^2 n^{|H|-1}
    bool holds = false;
};
SandwichReport blow_up_sandwich(const Complex& h, const Complex& g);

/// Two copies of H' identified on V(H).
Complex glued_complex(const ExtensionPair& e);

struct SecondMomentReport {
    Count s1, s2;
    Count copies;        // |H|_G
    Count target;        // |H'|_G
    Count glued;         // |H~'|_G
    Count overlap_bound; // (t'-t)^2 n^{2t'-t-1}
    bool sum_rule = false;  // s1 == |H'|_G
    bool holds = false;     // glued <= s2 <= glued + overlap_bound
};
SecondMomentReport second_moment_check(const ExtensionPair& e, const Complex& g);

struct MomentReport {
    std::size_t n = 0;
    double sum = 0, sum_sq = 0;
    bool first_moment = false;
    bool second_moment = false;
    std::size_t outliers = 0;  // values outside [(1-beta)A, (1+beta)A]
    bool pass = false;
};
MomentReport moment_concentration(std::span<const double> values, double a, double delta, double beta);

/// Extension counts of every copy of H in G (in search order).
std::vector<Count> extension_counts(const ExtensionPair& e, const Complex& g);

}  // namespace hyperreg
