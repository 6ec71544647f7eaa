// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <map>

#include "hyperreg/counting.hpp"
#include "hyperreg/density.hpp"
#include "hyperreg/embed.hpp"
#include "hyperreg/models.hpp"
#include "hyperreg/triadreg.hpp"

using namespace hyperreg;

namespace {

Execution exec_arg(const benchmark::State& state) {
    return state.range(0) ? Execution::parallel : Execution::serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

const Complex& host(std::uint32_t n) {
    static std::map<std::uint32_t, Complex> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, random_host({3, n, {}, 0.6, 0.5, 7}, Execution::serial)).first;
    return it->second;
}

void BM_CountTriangles(benchmark::State& state) {
    const Triad p = Triad::from_complex(host(static_cast<std::uint32_t>(state.range(1))), 0, 1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(count_triangles(p, exec_arg(state)));
    label(state);
}
BENCHMARK(BM_CountTriangles)->ArgsProduct({{0, 1}, {64, 256}});

void BM_CountCopies(benchmark::State& state) {
    const Complex h = Complex::complete({2, 1, 1});
    const Complex& g = host(static_cast<std::uint32_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(count_copies(h, g, {}, exec_arg(state)));
    label(state);
}
BENCHMARK(BM_CountCopies)->ArgsProduct({{0, 1}, {30, 60}});

void BM_ExhaustiveGraphRegularity(benchmark::State& state) {
    const Complex& g = host(static_cast<std::uint32_t>(state.range(1)));
    GraphRegOptions opt;
    opt.exec = exec_arg(state);
    for (auto _ : state) benchmark::DoNotOptimize(check_delta_regular(g.graph(), 0, 1, 0.3, opt));
    label(state);
}
BENCHMARK(BM_ExhaustiveGraphRegularity)->ArgsProduct({{0, 1}, {12, 14}});

void BM_TriadRegularity(benchmark::State& state) {
    const Complex& g = host(static_cast<std::uint32_t>(state.range(1)));
    const Triad p = Triad::from_complex(g, 0, 1, 2);
    const Hypergraph3 hg = g.hypergraph();
    TriadRegOptions opt;
    opt.exec = exec_arg(state);
    opt.budget = 500;
    for (auto _ : state) benchmark::DoNotOptimize(check_triad_regular_any(hg, p, 0.2, 2, opt));
    label(state);
}
BENCHMARK(BM_TriadRegularity)->ArgsProduct({{0, 1}, {30}});

void BM_RandomHost(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(random_host({3, n, {}, 0.6, 0.5, 3}, exec_arg(state)));
    label(state);
}
BENCHMARK(BM_RandomHost)->ArgsProduct({{0, 1}, {60, 120}});

void BM_Embed(benchmark::State& state) {
    const Complex h = Complex::complete({2, 2, 2});
    const Complex& g = host(static_cast<std::uint32_t>(state.range(1)));
    EmbedderConfig cfg;
    cfg.exec = exec_arg(state);
    for (auto _ : state) benchmark::DoNotOptimize(embed(h, g, cfg));
    label(state);
}
BENCHMARK(BM_Embed)->ArgsProduct({{0, 1}, {30}});

}  // namespace

BENCHMARK_MAIN();
