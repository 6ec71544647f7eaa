#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperreg/core.hpp"

namespace hyperreg {

enum class SearchMode { exhaustive, sampled };

/// `empty` is reported separately: an empty pair counts as acceptable in a
/// regular k-partite graph but is neither regular nor irregular on its own.
enum class RegStatus { regular, irregular, empty };

std::string to_string(SearchMode m);
std::string to_string(RegStatus s);
SearchMode parse_search_mode(const std::string& s);

struct SubsetWitness {
    std::vector<std::uint32_t> x;  // subset of the left class
    std::vector<std::uint32_t> y;  // subset of the right class
    Rational density;
};

struct GraphRegVerdict {
    RegStatus status = RegStatus::regular;
    SearchMode mode = SearchMode::exhaustive;
    std::optional<SubsetWitness> witness;
    std::uint64_t subsets_examined = 0;

    bool regular() const noexcept { return status == RegStatus::regular; }
};

struct GraphRegOptions {
    SearchMode mode = SearchMode::exhaustive;
    std::uint64_t budget = 20000;  // sampled pairs
    std::uint64_t seed = 0;
    std::size_t exhaustive_cap = 18;
    Execution exec = Execution::parallel;
};

/// Smallest subset size s with s >= delta * n (at least 1).
std::size_t min_subset_size(double delta, std::size_t n);

/// e(X,Y) / (|X||Y|); throws DomainError on an empty side.
Rational bipartite_density(const BipartiteGraph& g, std::span<const std::uint32_t> x,
                           std::span<const std::uint32_t> y);
/// Density between X in class i and Y in class j of a k-partite graph.
Rational bipartite_density(const KPartiteGraph& g, std::uint32_t i, std::uint32_t j,
                           std::span<const std::uint32_t> x, std::span<const std::uint32_t> y);
Rational bipartite_density(const BipartiteGraph& g);

/// (d,delta)-regularity: (1-delta)d < d(X,Y) < (1+delta)d for all |X| >= delta|A|, |Y| >= delta|B|.
GraphRegVerdict check_d_delta_regular(const BipartiteGraph& g, double d, double delta,
                                      const GraphRegOptions& opt = {});
/// delta-regularity: |d(X,Y) - d(A,B)| <= delta over the same subsets.
GraphRegVerdict check_delta_regular(const BipartiteGraph& g, double delta, const GraphRegOptions& opt = {});

GraphRegVerdict check_d_delta_regular(const KPartiteGraph& g, std::uint32_t i, std::uint32_t j, double d,
                                      double delta, const GraphRegOptions& opt = {});
GraphRegVerdict check_delta_regular(const KPartiteGraph& g, std::uint32_t i, std::uint32_t j, double delta,
                                    const GraphRegOptions& opt = {});

/// True when the witness, recomputed from scratch, violates the (d,delta) window.
bool witness_violates_d_delta(const BipartiteGraph& g, const SubsetWitness& w, double d, double delta);
bool witness_violates_delta(const BipartiteGraph& g, const SubsetWitness& w, double delta);

}  // namespace hyperreg
