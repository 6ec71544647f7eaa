#include "hyperreg/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "hyperreg/rng.hpp"

namespace hyperreg {

std::string to_string(SearchMode m) { return m == SearchMode::exhaustive ? "exhaustive" : "sampled"; }

std::string to_string(RegStatus s) {
    switch (s) {
        case RegStatus::regular: return "regular";
        case RegStatus::irregular: return "irregular";
        case RegStatus::empty: return "empty";
    }
    return "?";
}

SearchMode parse_search_mode(const std::string& s) {
    if (s == "exhaustive") return SearchMode::exhaustive;
    if (s == "sampled") return SearchMode::sampled;
    throw DomainError("unknown search mode '" + s + "'");
}

std::size_t min_subset_size(double delta, std::size_t n) {
    const double raw = delta * static_cast<double>(n);
    auto s = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::max<std::size_t>(s, 1);
}

Rational bipartite_density(const BipartiteGraph& g, std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
    if (x.empty() || y.empty()) throw DomainError("density of an empty vertex set is undefined");
    const Bitset ybits = Bitset::from_indices(g.right_size(), y);
    std::size_t e = 0;
    for (auto u : x) e += Bitset::and_count(g.left_row(u), ybits);
    return Rational(Count(e), Count(x.size()) * Count(y.size()));
}

Rational bipartite_density(const KPartiteGraph& g, std::uint32_t i, std::uint32_t j, std::span<const std::uint32_t> x,
                           std::span<const std::uint32_t> y) {
    if (i == j) throw DomainError("density needs two distinct classes");
    if (i < j) return bipartite_density(g.pair(i, j), x, y);
    return bipartite_density(g.pair(j, i), y, x);
}

Rational bipartite_density(const BipartiteGraph& g) {
    if (g.left_size() == 0 || g.right_size() == 0) throw DomainError("density of an empty vertex set is undefined");
    return Rational(Count(g.edge_count()), Count(g.left_size()) * Count(g.right_size()));
}

namespace {

/// Acceptance window on e(X,Y) relative to |X||Y|.
/// Violation: e <= lo*s (or < when strict) or e >= hi*s (or > when strict).
struct Window {
    double lo;
    double hi;
    bool strict;  // false for (d,delta), true for delta-regularity

    bool low(double e, double s) const { return strict ? e < lo * s : e <= lo * s; }
    bool high(double e, double s) const { return strict ? e > hi * s : e >= hi * s; }
};

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

/// For a fixed X (given by degrees of right vertices into X), find the first
/// violating |Y| and return the witness Y. Only extreme Y (top/bottom degrees)
/// need checking: for each |Y| they attain the max/min of e(X,Y).
std::optional<std::vector<std::uint32_t>> best_y(const std::vector<std::uint32_t>& deg, std::size_t xsize,
                                                 std::size_t min_y, const Window& w) {
    std::vector<std::uint32_t> order(deg.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] > deg[b]; });
    const auto m = order.size();
    double top = 0, bottom = 0;
    for (std::size_t y = 1; y <= m; ++y) {
        top += deg[order[y - 1]];
        bottom += deg[order[m - y]];
        if (y < min_y) continue;
        const double s = static_cast<double>(xsize) * static_cast<double>(y);
        if (w.high(top, s)) return std::vector<std::uint32_t>(order.begin(), order.begin() + static_cast<long>(y));
        if (w.low(bottom, s)) return std::vector<std::uint32_t>(order.end() - static_cast<long>(y), order.end());
    }
    return std::nullopt;
}

bool violates_fast(const std::vector<std::uint32_t>& deg, std::size_t xsize, std::size_t min_y, const Window& w) {
    // same scan as best_y without building the witness; deg is sorted descending in place
    auto d = deg;
    std::sort(d.begin(), d.end(), std::greater<>());
    const auto m = d.size();
    double top = 0, bottom = 0;
    for (std::size_t y = 1; y <= m; ++y) {
        top += d[y - 1];
        bottom += d[m - y];
        if (y < min_y) continue;
        const double s = static_cast<double>(xsize) * static_cast<double>(y);
        if (w.high(top, s) || w.low(bottom, s)) return true;
    }
    return false;
}

std::vector<std::uint32_t> mask_members(std::uint64_t mask) {
    std::vector<std::uint32_t> out;
    while (mask) {
        out.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

GraphRegVerdict exhaustive_search(const BipartiteGraph& g, std::size_t min_x, std::size_t min_y, const Window& w,
                                  const GraphRegOptions& opt) {
    const auto a = g.left_size(), b = g.right_size();
    if (a > opt.exhaustive_cap || b > opt.exhaustive_cap)
        throw CapacityError("exhaustive regularity check limited to classes of size <= " +
                            std::to_string(opt.exhaustive_cap) + " (got " + std::to_string(a) + "x" +
                            std::to_string(b) + "); use sampled mode");
    std::vector<std::uint64_t> col(b, 0);
    for (std::uint32_t v = 0; v < b; ++v) g.right_row(v).for_each([&](std::uint32_t u) { col[v] |= 1ull << u; });

    const auto limit = static_cast<std::int64_t>(1ull << a);
    std::uint64_t best = kNone;
    std::uint64_t examined = 0;

    auto visit = [&](std::int64_t mask, std::uint64_t& local_best, std::uint64_t& local_examined) {
        const auto um = static_cast<std::uint64_t>(mask);
        const auto xs = static_cast<std::size_t>(std::popcount(um));
        if (xs < min_x) return;
        ++local_examined;
        std::vector<std::uint32_t> deg(b);
        for (std::size_t v = 0; v < b; ++v) deg[v] = static_cast<std::uint32_t>(std::popcount(col[v] & um));
        if (um < local_best && violates_fast(deg, xs, min_y, w)) local_best = um;
    };

    if (opt.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 256) reduction(min : best) reduction(+ : examined)
        for (std::int64_t mask = 1; mask < limit; ++mask) visit(mask, best, examined);
    } else {
        for (std::int64_t mask = 1; mask < limit; ++mask) visit(mask, best, examined);
    }

    GraphRegVerdict v;
    v.mode = SearchMode::exhaustive;
    v.subsets_examined = examined;
    if (best == kNone) return v;
    std::vector<std::uint32_t> deg(b);
    for (std::size_t y = 0; y < b; ++y) deg[y] = static_cast<std::uint32_t>(std::popcount(col[y] & best));
    auto x = mask_members(best);
    auto y = best_y(deg, x.size(), min_y, w);
    std::sort(y->begin(), y->end());
    v.status = RegStatus::irregular;
    v.witness = SubsetWitness{x, *y, bipartite_density(g, x, *y)};
    return v;
}

std::vector<std::uint32_t> random_subset(CounterRng& rng, std::size_t n, std::size_t k) {
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

constexpr std::uint64_t kSampleStream = 0x6772617068726567ULL;  // "graphreg"

GraphRegVerdict sampled_search(const BipartiteGraph& g, std::size_t min_x, std::size_t min_y, const Window& w,
                               const GraphRegOptions& opt) {
    const auto a = g.left_size(), b = g.right_size();
    auto draw = [&](std::uint64_t s) {
        CounterRng rng(opt.seed, kSampleStream ^ mix64(s));
        const auto xs = min_x + rng.below(a - min_x + 1);
        const auto ys = min_y + rng.below(b - min_y + 1);
        auto x = random_subset(rng, a, xs);
        auto y = random_subset(rng, b, ys);
        return std::pair{std::move(x), std::move(y)};
    };
    auto violates = [&](const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
        const Bitset ybits = Bitset::from_indices(b, y);
        double e = 0;
        for (auto u : x) e += static_cast<double>(Bitset::and_count(g.left_row(u), ybits));
        const double s = static_cast<double>(x.size()) * static_cast<double>(y.size());
        return w.low(e, s) || w.high(e, s);
    };

    std::uint64_t best = kNone;
    const auto budget = static_cast<std::int64_t>(opt.budget);
    if (opt.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(min : best)
        for (std::int64_t s = 0; s < budget; ++s) {
            const auto us = static_cast<std::uint64_t>(s);
            if (us > best) continue;
            auto [x, y] = draw(us);
            if (violates(x, y)) best = std::min(best, us);
        }
    } else {
        for (std::int64_t s = 0; s < budget; ++s) {
            auto [x, y] = draw(static_cast<std::uint64_t>(s));
            if (violates(x, y)) {
                best = static_cast<std::uint64_t>(s);
                break;
            }
        }
    }
    GraphRegVerdict v;
    v.mode = SearchMode::sampled;
    v.subsets_examined = best == kNone ? opt.budget : best + 1;
    if (best == kNone) return v;
    auto [x, y] = draw(best);
    v.status = RegStatus::irregular;
    v.witness = SubsetWitness{x, y, bipartite_density(g, x, y)};
    return v;
}

GraphRegVerdict run_check(const BipartiteGraph& g, double delta, const Window& w, const GraphRegOptions& opt) {
    if (!(delta > 0 && delta <= 1)) throw DomainError("delta must lie in (0,1]");
    if (g.left_size() == 0 || g.right_size() == 0) throw DomainError("regularity of an empty vertex class is undefined");
    if (g.edge_count() == 0) {
        GraphRegVerdict v;
        v.status = RegStatus::empty;
        v.mode = opt.mode;
        return v;
    }
    const auto min_x = min_subset_size(delta, g.left_size());
    const auto min_y = min_subset_size(delta, g.right_size());
    return opt.mode == SearchMode::exhaustive ? exhaustive_search(g, min_x, min_y, w, opt)
                                              : sampled_search(g, min_x, min_y, w, opt);
}

GraphRegVerdict transpose_verdict(GraphRegVerdict v) {
    if (v.witness) std::swap(v.witness->x, v.witness->y);
    return v;
}

}  // namespace

GraphRegVerdict check_d_delta_regular(const BipartiteGraph& g, double d, double delta, const GraphRegOptions& opt) {
    if (!(d > 0 && d <= 1)) throw DomainError("d must lie in (0,1]");
    return run_check(g, delta, Window{(1 - delta) * d, (1 + delta) * d, false}, opt);
}

GraphRegVerdict check_delta_regular(const BipartiteGraph& g, double delta, const GraphRegOptions& opt) {
    const double base = g.left_size() && g.right_size() ? to_double(bipartite_density(g)) : 0.0;
    return run_check(g, delta, Window{base - delta, base + delta, true}, opt);
}

GraphRegVerdict check_d_delta_regular(const KPartiteGraph& g, std::uint32_t i, std::uint32_t j, double d, double delta,
                                      const GraphRegOptions& opt) {
    if (i < j) return check_d_delta_regular(g.pair(i, j), d, delta, opt);
    if (i == j) throw DomainError("regularity needs two distinct classes");
    return transpose_verdict(check_d_delta_regular(g.pair(j, i).transposed(), d, delta, opt));
}

GraphRegVerdict check_delta_regular(const KPartiteGraph& g, std::uint32_t i, std::uint32_t j, double delta,
                                    const GraphRegOptions& opt) {
    if (i < j) return check_delta_regular(g.pair(i, j), delta, opt);
    if (i == j) throw DomainError("regularity needs two distinct classes");
    return transpose_verdict(check_delta_regular(g.pair(j, i).transposed(), delta, opt));
}

bool witness_violates_d_delta(const BipartiteGraph& g, const SubsetWitness& w, double d, double delta) {
    if (w.x.size() < min_subset_size(delta, g.left_size()) || w.y.size() < min_subset_size(delta, g.right_size()))
        return false;
    const Rational dens = bipartite_density(g, w.x, w.y);
    const Rational dd(d), dl(delta);
    return !((1 - dl) * dd < dens && dens < (1 + dl) * dd);
}

bool witness_violates_delta(const BipartiteGraph& g, const SubsetWitness& w, double delta) {
    if (w.x.size() < min_subset_size(delta, g.left_size()) || w.y.size() < min_subset_size(delta, g.right_size()))
        return false;
    const Rational diff = bipartite_density(g, w.x, w.y) - bipartite_density(g);
    return abs(diff) > Rational(delta);
}

}  // namespace hyperreg
