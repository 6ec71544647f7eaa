#pragma once

#include <cstdint>
#include <vector>

#include "hyperreg/core.hpp"

namespace hyperreg {

struct HostParams {
    std::uint32_t k = 3;
    std::uint32_t n = 10;                // per class, unless `sizes` is given
    std::vector<std::uint32_t> sizes;    // explicit class sizes (overrides k, n)
    double d2 = 0.5;
    double d3 = 0.5;
    std::uint64_t seed = 0;

    std::vector<std::uint32_t> class_sizes() const;
};

/// Binomial random complex: each cross pair is an edge with probability d2,
/// then each triangle is a hyperedge with probability d3. Every draw is keyed
/// by (seed, pair or triangle), so the output does not depend on threading.
Complex random_host(const HostParams& p, Execution exec = Execution::parallel);

/// Hyperedge probability `density` on every triangle meeting `subset`.
struct Planting {
    std::vector<Vertex> subset;
    double density = 1.0;
};

/// random_host with the triangle probability overridden around the planted
/// subset. The same uniform draws are reused, so planting d3 reproduces random_host.
Complex planted_host(const HostParams& p, const Planting& plant, Execution exec = Execution::parallel);

struct PatternParams {
    std::vector<std::uint32_t> sizes{2, 2, 2};
    std::size_t max_degree = 4;          // complex degree budget
    std::size_t target_hyperedges = 4;
    std::size_t extra_edges = 0;         // graph edges outside every hyperedge
    std::uint64_t seed = 0;
    std::size_t attempts_per_edge = 200;
};

struct PatternResult {
    Complex complex;
    std::size_t achieved_degree = 0;
    std::size_t hyperedges = 0;
    bool shortfall = false;  // fewer hyperedges than requested
};

/// Random pattern whose closure keeps every complex degree within the budget.
PatternResult random_pattern(const PatternParams& p);

}  // namespace hyperreg
