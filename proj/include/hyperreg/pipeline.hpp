#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperreg/core.hpp"
#include "hyperreg/embed.hpp"
#include "hyperreg/partition.hpp"
#include "hyperreg/ramsey.hpp"

namespace hyperreg {

struct PipelineConfig {
    std::size_t t = 6;
    std::size_t ell = 1;
    double eps1 = 0.1;
    double eps2 = 0.1;
    double eps3 = 0.5;
    double delta3 = 0.25;
    std::size_t r = 1;
    std::size_t k = 0;          // clique order; 0 means 2Δ+1
    double c0 = 0;
    std::size_t max_retries = 20;
    std::uint64_t seed = 1;
    bool thin = false;
    GraphRegOptions graph{};
    TriadRegOptions triad{};
    Execution exec = Execution::parallel;
};

struct StageLog {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct PipelineResult {
    std::vector<StageLog> stages;
    std::optional<PartitionReport> report;
    std::optional<std::vector<std::uint32_t>> clique;            // cluster ids
    std::optional<TriadSystem> system;
    std::optional<CliqueColouring> clique_colouring;
    std::optional<std::vector<std::size_t>> monochromatic;       // positions in the clique
    std::uint8_t colour = 0;
    std::vector<std::uint32_t> assignment;                       // pattern global id -> position in monochromatic set
    std::optional<Complex> host;                                 // colour class restricted to the chosen triads
    std::optional<EmbedResult> embedding;
    std::vector<std::uint32_t> image;                            // pattern global id -> vertex of K_m
    bool monochromatic_copy = false;                             // re-checked against the input colouring
    std::size_t max_degree = 0;

    bool success() const { return !stages.empty() && stages.back().ok && stages.back().name == "verify"; }
};

/// First-fit colouring of the underlying graph of `h` by descending degree
/// into `colours` colours; throws std::logic_error when it runs out.
std::vector<std::uint32_t> greedy_assignment(const Complex& h, std::size_t colours);

/// Colour-then-embed flow on a 2-colouring of K_m^(3). Stage failures end the
/// run with a populated log, not an exception.
PipelineResult run_pipeline(const Colouring& colouring, const Complex& pattern, const PipelineConfig& cfg);

}  // namespace hyperreg
