#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperreg/core.hpp"
#include "hyperreg/counting.hpp"

namespace hyperreg {

/// Subcomplexes around a peeled vertex h. Every member keeps the class count
/// of H; `original` maps its vertices back to H.
struct NeighborhoodComplexes {
    Vertex h;
    InducedSubcomplex hh;        // H_h = H - h
    InducedSubcomplex nh;        // N_h: induced on the neighbours of h
    InducedSubcomplex b;         // B: N_h plus h
    InducedSubcomplex nh_star;   // N_h*: distance exactly 2 from V(N_h)
    InducedSubcomplex f_prime;   // F': V(N_h), V(N_h*) and the first neighbourhood of N_h in H_h
    InducedSubcomplex hh_star;   // H_h* = H_h - (F' - N_h*)
    InducedSubcomplex hh_prime;  // H'_h = H_h* - N_h*
    InducedSubcomplex hh_minus;  // H_h^- = H_h - N_h
    /// Graph distance in H_h from V(N_h), by global id of H; -1 when unreachable or h.
    std::vector<int> distance;
};

NeighborhoodComplexes neighborhood_complexes(const Complex& h, Vertex v);

/// Constants of the embedding hierarchy; stored and reported, never checked
/// against the asymptotic ordering.
struct EmbedderConfig {
    double alpha = 0.3;
    double beta = 0.1;
    double c = 1.0;         // |X_i| <= c n
    double d2 = 0.5, d3 = 0.5;
    double delta2 = 0.1;
    double delta2_prime = -1;  // negative: sqrt(delta2)
    double delta3 = 0.1;
    std::size_t r = 1;
    std::size_t max_degree = 4;
    Execution exec = Execution::parallel;

    double effective_delta2_prime() const;
};

/// Throws DomainError naming the first class pair or triple where H has an
/// edge or hyperedge and G has none.
void check_respects_partition(const Complex& h, const Complex& g);

struct EmbedFailure {
    std::vector<std::pair<Vertex, Vertex>> deepest;  // pattern vertex -> host vertex
    Vertex stuck;                                    // pattern vertex with no candidate left
};

struct EmbedResult {
    std::optional<Embedding> embedding;  // by pattern global id
    std::optional<EmbedFailure> failure;
    std::vector<Vertex> order;           // pattern vertices in search order
};

/// Search order: components smallest first; inside a component the
/// neighbourhood of its highest-degree vertex h, then h, then outward.
std::vector<std::uint32_t> embedding_order(const Complex& h);

/// Complete backtracking embedder; the parallel path returns the same copy as
/// the serial one (lowest first-vertex image wins).
EmbedResult embed(const Complex& h, const Complex& g, const EmbedderConfig& cfg = {});

struct CountRatio {
    Count lhs;            // |H|_G
    Count hh_count;       // |H_h|_G
    double factor = 0;    // (1-alpha) n d2^{de2} d3^{de3}
    double rhs = 0;
    bool pass = false;
};

CountRatio count_ratio_check(const Complex& h, Vertex v, const Complex& g, double alpha, double d2, double d3);

struct TypicalityReport {
    std::size_t copies = 0;       // |N_h|_G
    std::size_t typical = 0;
    double predicted = 0;         // predicted extension count N_h -> B
    double threshold = 0;         // (1-beta) predicted
    double fraction = 1;
    std::vector<Count> extensions;  // per copy, search order
    std::vector<Embedding> atypical;   // first few atypical copies of N_h
};

TypicalityReport typicality_report(const Complex& h, Vertex v, const Complex& g, double beta, double n, double d2,
                                   double d3, std::size_t keep_atypical = 16);

struct UsefulOffender {
    Embedding copy;                     // copy of N_h
    std::vector<Vertex> subset;         // pattern vertices of N_h (in H)
    std::uint32_t cls = 0;
    std::size_t size = 0;               // host common neighbourhood in V_cls
    double lo = 0, hi = 0;
};

struct UsefulnessReport {
    std::size_t copies = 0;
    std::size_t useful = 0;
    double fraction = 1;
    std::size_t conditions = 0;          // (subset, class) pairs checked per copy
    std::vector<UsefulOffender> offenders;
};

UsefulnessReport usefulness_report(const Complex& h, Vertex v, const Complex& g, double delta2, double d2, double n,
                                   std::size_t keep_offenders = 32);

}  // namespace hyperreg
