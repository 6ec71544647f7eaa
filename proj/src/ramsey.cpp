#include "hyperreg/ramsey.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "hyperreg/rng.hpp"

namespace hyperreg {

std::size_t Colouring::triple_count(std::uint32_t m) {
    return m < 3 ? 0 : static_cast<std::size_t>(m) * (m - 1) * (m - 2) / 6;
}

std::size_t Colouring::index(std::uint32_t m, std::uint32_t u, std::uint32_t v, std::uint32_t w) {
    // triples before (u, ., .) then before (u, v, .) in lexicographic order
    auto c3 = [](std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; };
    auto c2 = [](std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; };
    const std::size_t before_u = c3(m) - c3(m - u);
    const std::size_t before_v = c2(m - u - 1) - c2(m - v);
    return before_u + before_v + (w - v - 1);
}

std::vector<Triple> Colouring::triples(std::uint32_t m) {
    std::vector<Triple> out;
    for (std::uint32_t u = 0; u < m; ++u)
        for (std::uint32_t v = u + 1; v < m; ++v)
            for (std::uint32_t w = v + 1; w < m; ++w) out.push_back({u, v, w});
    return out;
}

std::uint8_t Colouring::at(std::uint32_t u, std::uint32_t v, std::uint32_t w) const {
    const auto t = sorted_triple(u, v, w);
    return colour.at(index(m, t[0], t[1], t[2]));
}

Hypergraph3 Colouring::colour_class(std::uint8_t c) const {
    std::vector<Triple> out;
    const auto all = triples(m);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (colour[i] == c) out.push_back(all[i]);
    return Hypergraph3(m, std::move(out));
}

Colouring parse_colouring(std::string_view text) {
    struct Entry {
        std::size_t line;
        std::uint32_t u, v, w;
        int c;
    };
    std::vector<Entry> entries;
    std::uint32_t m = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "col") throw ParseError(line, "expected 'col', got '" + kw + "'");
        long long u, v, w, c;
        if (!(ls >> u >> v >> w >> c)) throw ParseError(line, "expected 'col <u> <v> <w> <0|1>'");
        std::string extra;
        if (ls >> extra) throw ParseError(line, "trailing token '" + extra + "'");
        if (u < 0 || v < 0 || w < 0 || u > 255 || v > 255 || w > 255) throw ParseError(line, "vertex out of range");
        if (c != 0 && c != 1) throw ParseError(line, "colour must be 0 or 1");
        if (u == v || v == w || u == w) throw ParseError(line, "triple has a repeated vertex");
        const auto t = sorted_triple(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v),
                                     static_cast<std::uint32_t>(w));
        m = std::max(m, t[2] + 1);
        entries.push_back({line, t[0], t[1], t[2], static_cast<int>(c)});
    }
    Colouring out;
    out.m = m;
    out.colour.assign(Colouring::triple_count(m), 2);
    for (const auto& e : entries) {
        auto& slot = out.colour[Colouring::index(m, e.u, e.v, e.w)];
        if (slot != 2) throw ParseError(e.line, "triple coloured twice");
        slot = static_cast<std::uint8_t>(e.c);
    }
    for (std::size_t i = 0; i < out.colour.size(); ++i)
        if (out.colour[i] == 2) {
            const auto t = Colouring::triples(m)[i];
            throw ParseError(entries.empty() ? 0 : entries.back().line,
                             "triple " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
                                 std::to_string(t[2]) + " has no colour");
        }
    return out;
}

std::string serialize_colouring(const Colouring& c) {
    std::ostringstream out;
    const auto all = Colouring::triples(c.m);
    for (std::size_t i = 0; i < all.size(); ++i)
        out << "col " << all[i][0] << ' ' << all[i][1] << ' ' << all[i][2] << ' ' << int(c.colour[i]) << '\n';
    return out.str();
}

Colouring random_colouring(std::uint32_t m, std::uint64_t seed) {
    Colouring c;
    c.m = m;
    CounterRng rng(seed, 0x636f6c6f7572ULL);
    c.colour.resize(Colouring::triple_count(m));
    for (auto& x : c.colour) x = static_cast<std::uint8_t>(rng() >> 63);
    return c;
}

bool has_monochromatic_copy(const Hypergraph3& pattern, const Colouring& c) {
    const auto p = pattern.vertex_count();
    if (p > c.m) return false;
    std::vector<std::uint32_t> img(p);
    std::vector<char> used(c.m, 0);
    std::function<bool(std::uint32_t)> rec = [&](std::uint32_t i) -> bool {
        if (i == p) {
            for (std::uint8_t col = 0; col < 2; ++col) {
                bool mono = true;
                for (const auto& t : pattern.triples())
                    if (c.at(img[t[0]], img[t[1]], img[t[2]]) != col) {
                        mono = false;
                        break;
                    }
                if (mono) return true;
            }
            return false;
        }
        for (std::uint32_t x = 0; x < c.m; ++x) {
            if (used[x]) continue;
            used[x] = 1;
            img[i] = x;
            const bool hit = rec(i + 1);
            used[x] = 0;
            if (hit) return true;
        }
        return false;
    };
    return rec(0);
}

std::string to_string(RamseyOutcome o) {
    switch (o) {
        case RamseyOutcome::avoiding_found: return "avoiding-colouring";
        case RamseyOutcome::exhausted: return "exhausted";
        case RamseyOutcome::budget_exceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

constexpr std::uint32_t kMaxOrder = 8;  // C(8,3) = 56 triples fit one word

/// Triple masks of every copy of the pattern in K_m, grouped by their highest triple.
std::vector<std::vector<std::uint64_t>> copies_by_last(const Hypergraph3& pattern, std::uint32_t m,
                                                       std::uint64_t& total, bool& empty_copy) {
    const auto p = pattern.vertex_count();
    std::unordered_set<std::uint64_t> masks;
    std::vector<std::uint32_t> img(p);
    std::vector<char> used(m, 0);
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t i) {
        if (i == p) {
            std::uint64_t mask = 0;
            for (const auto& t : pattern.triples()) {
                const auto s = sorted_triple(img[t[0]], img[t[1]], img[t[2]]);
                mask |= 1ull << Colouring::index(m, s[0], s[1], s[2]);
            }
            masks.insert(mask);
            return;
        }
        for (std::uint32_t x = 0; x < m; ++x) {
            if (used[x]) continue;
            used[x] = 1;
            img[i] = x;
            rec(i + 1);
            used[x] = 0;
        }
    };
    rec(0);
    total = masks.size();
    empty_copy = masks.contains(0);
    std::vector<std::vector<std::uint64_t>> by_last(Colouring::triple_count(m));
    for (auto mask : masks)
        if (mask) by_last[63 - static_cast<std::size_t>(std::countl_zero(mask))].push_back(mask);
    for (auto& v : by_last) std::sort(v.begin(), v.end());
    return by_last;
}

struct Branch {
    RamseyOutcome outcome = RamseyOutcome::exhausted;
    std::uint64_t nodes = 0;
    std::uint64_t red = 0;  // red triple mask of the avoiding colouring
};

bool creates_mono(const std::vector<std::uint64_t>& closing, std::uint64_t mine) {
    for (auto mask : closing)
        if ((mask & ~mine) == 0) return true;
    return false;
}

}  // namespace

RamseyResult exact_ramsey(const Hypergraph3& pattern, const RamseyOptions& opt) {
    const auto p = pattern.vertex_count();
    if (p > kMaxOrder || opt.m_max > kMaxOrder)
        throw CapacityError("exact Ramsey search supports patterns and orders up to " + std::to_string(kMaxOrder) +
                            " vertices");
    RamseyResult res;
    res.lower = std::max<std::uint32_t>(p, 1);
    if (p >= 1 && p - 1 >= 1) {
        // K_{p-1} holds no copy at all, so any colouring avoids the pattern
        Colouring trivial;
        trivial.m = p - 1;
        trivial.colour.assign(Colouring::triple_count(p - 1), 0);
        res.certificate = trivial;
    }
    for (std::uint32_t m = std::max<std::uint32_t>(p, 1); m <= opt.m_max; ++m) {
        RamseyStep step;
        step.m = m;
        bool empty_copy = false;
        const auto by_last = copies_by_last(pattern, m, step.copies, empty_copy);
        const auto T = static_cast<std::uint32_t>(Colouring::triple_count(m));
        if (empty_copy || T == 0) {
            // a pattern without hyperedges is monochromatic in every colouring
            step.outcome = empty_copy ? RamseyOutcome::exhausted : RamseyOutcome::avoiding_found;
            res.steps.push_back(step);
            if (step.outcome == RamseyOutcome::exhausted) {
                res.exact = m;
                return res;
            }
            Colouring c;
            c.m = m;
            res.certificate = c;
            res.lower = m + 1;
            continue;
        }
        const std::uint64_t all = T == 64 ? ~0ull : (1ull << T) - 1;
        // triple 0 is red; fan out the next `split` triples
        const std::uint32_t split = std::min<std::uint32_t>(opt.split_depth, T - 1);
        const std::uint64_t prefixes = 1ull << split;
        const std::uint64_t per_branch = std::max<std::uint64_t>(1, opt.budget / prefixes);
        std::vector<Branch> branches(prefixes);

        auto run_branch = [&](std::uint64_t pre) {
            Branch& b = branches[pre];
            std::uint64_t red = 1, blue = 0;
            if (creates_mono(by_last[0], red)) return;  // exhausted at the root
            for (std::uint32_t i = 1; i <= split; ++i) {
                const std::uint64_t bit = 1ull << i;
                if ((pre >> (i - 1)) & 1u)
                    blue |= bit;
                else
                    red |= bit;
                if (creates_mono(by_last[i], (red & bit) ? red : blue)) return;
            }
            std::function<bool(std::uint32_t)> rec = [&](std::uint32_t i) -> bool {
                if (i == T) return true;
                if (++b.nodes > per_branch) {
                    b.outcome = RamseyOutcome::budget_exceeded;
                    return false;
                }
                const std::uint64_t bit = 1ull << i;
                red |= bit;
                if (!creates_mono(by_last[i], red) && rec(i + 1)) return true;
                red &= ~bit;
                if (b.outcome == RamseyOutcome::budget_exceeded) return false;
                blue |= bit;
                if (!creates_mono(by_last[i], blue) && rec(i + 1)) return true;
                blue &= ~bit;
                return false;
            };
            if (rec(split + 1)) {
                b.outcome = RamseyOutcome::avoiding_found;
                b.red = red & all;
            }
        };
        const auto np = static_cast<std::int64_t>(prefixes);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t pre = 0; pre < np; ++pre) run_branch(static_cast<std::uint64_t>(pre));

        step.outcome = RamseyOutcome::exhausted;
        for (const auto& b : branches) {
            step.nodes += b.nodes;
            if (b.outcome == RamseyOutcome::budget_exceeded && step.outcome == RamseyOutcome::exhausted)
                step.outcome = RamseyOutcome::budget_exceeded;
        }
        const auto found = std::find_if(branches.begin(), branches.end(),
                                         [](const Branch& b) { return b.outcome == RamseyOutcome::avoiding_found; });
        if (found != branches.end()) {
            step.outcome = RamseyOutcome::avoiding_found;
            Colouring c;
            c.m = m;
            c.colour.resize(T);
            for (std::uint32_t i = 0; i < T; ++i) c.colour[i] = ((found->red >> i) & 1u) ? 0 : 1;
            res.certificate = std::move(c);
            res.lower = m + 1;
        }
        res.steps.push_back(step);
        if (step.outcome == RamseyOutcome::exhausted) {
            res.exact = m;
            return res;
        }
        if (step.outcome == RamseyOutcome::budget_exceeded) return res;
    }
    return res;
}

}  // namespace hyperreg
