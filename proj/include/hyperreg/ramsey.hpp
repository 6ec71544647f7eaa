#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperreg/core.hpp"

namespace hyperreg {

/// Red/blue colouring of the triples of {0..m-1}; colour 0 is red, 1 is blue.
/// Triples are indexed in lexicographic order of (u < v < w).
struct Colouring {
    std::uint32_t m = 0;
    std::vector<std::uint8_t> colour;

    static std::size_t triple_count(std::uint32_t m);
    static std::size_t index(std::uint32_t m, std::uint32_t u, std::uint32_t v, std::uint32_t w);
    static std::vector<Triple> triples(std::uint32_t m);

    std::uint8_t at(std::uint32_t u, std::uint32_t v, std::uint32_t w) const;
    /// Hypergraph of the triples with colour c.
    Hypergraph3 colour_class(std::uint8_t c) const;
};

/// Lines `col <u> <v> <w> <0|1>`, '#' comments; every triple exactly once.
Colouring parse_colouring(std::string_view text);
std::string serialize_colouring(const Colouring& c);

/// Uniform random colouring.
Colouring random_colouring(std::uint32_t m, std::uint64_t seed);

/// True when some injective map of the pattern's vertices into {0..m-1}
/// sends every hyperedge to triples of one colour (plain enumeration of maps).
bool has_monochromatic_copy(const Hypergraph3& pattern, const Colouring& c);

struct RamseyOptions {
    std::uint32_t m_max = 8;
    std::uint64_t budget = 50'000'000;  // search nodes per m
    std::uint32_t split_depth = 4;      // colour choices fanned out across threads
};

enum class RamseyOutcome { avoiding_found, exhausted, budget_exceeded };
std::string to_string(RamseyOutcome o);

struct RamseyStep {
    std::uint32_t m = 0;
    RamseyOutcome outcome = RamseyOutcome::exhausted;
    std::uint64_t nodes = 0;
    std::uint64_t copies = 0;  // distinct copies of the pattern in K_m
};

struct RamseyResult {
    std::uint32_t lower = 0;              // R(H) >= lower
    std::optional<std::uint32_t> exact;   // set when some m was exhausted
    std::vector<RamseyStep> steps;
    std::optional<Colouring> certificate;  // avoiding colouring on lower - 1 vertices
};

/// Exact search for R(H) over m = |H|, |H|+1, ... up to m_max. The first
/// triple is fixed red (colour swap symmetry).
RamseyResult exact_ramsey(const Hypergraph3& pattern, const RamseyOptions& opt = {});

}  // namespace hyperreg
