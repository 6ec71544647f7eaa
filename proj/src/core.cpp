#include "hyperreg/core.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hyperreg {

// ---------------------------------------------------------------- bipartite

BipartiteGraph::BipartiteGraph(std::size_t left, std::size_t right)
    : left_rows_(left, Bitset(right)), right_rows_(right, Bitset(left)) {}

BipartiteGraph BipartiteGraph::complete(std::size_t left, std::size_t right) {
    BipartiteGraph g;
    g.left_rows_.assign(left, Bitset(right, true));
    g.right_rows_.assign(right, Bitset(left, true));
    g.edges_ = left * right;
    return g;
}

void BipartiteGraph::add_edge(std::uint32_t u, std::uint32_t v) {
    if (left_rows_[u].test(v)) return;
    left_rows_[u].set(v);
    right_rows_[v].set(u);
    ++edges_;
}

void BipartiteGraph::remove_edge(std::uint32_t u, std::uint32_t v) {
    if (!left_rows_[u].test(v)) return;
    left_rows_[u].reset(v);
    right_rows_[v].reset(u);
    --edges_;
}

BipartiteGraph BipartiteGraph::transposed() const {
    BipartiteGraph t;
    t.left_rows_ = right_rows_;
    t.right_rows_ = left_rows_;
    t.edges_ = edges_;
    return t;
}

bool BipartiteGraph::is_subgraph_of(const BipartiteGraph& other) const {
    if (left_size() != other.left_size() || right_size() != other.right_size()) return false;
    for (std::size_t u = 0; u < left_rows_.size(); ++u)
        if (!left_rows_[u].is_subset_of(other.left_rows_[u])) return false;
    return true;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> BipartiteGraph::edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(edges_);
    for (std::uint32_t u = 0; u < left_rows_.size(); ++u)
        left_rows_[u].for_each([&](std::uint32_t v) { out.emplace_back(u, v); });
    return out;
}

// ---------------------------------------------------------------- k-partite

KPartiteGraph::KPartiteGraph(std::vector<std::uint32_t> class_sizes) : sizes_(std::move(class_sizes)) {
    const auto k = sizes_.size();
    pairs_.reserve(k * (k - (k > 0)) / 2);
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j) pairs_.emplace_back(sizes_[i], sizes_[j]);
}

std::size_t KPartiteGraph::pair_index(std::uint32_t i, std::uint32_t j) const {
    if (i >= j || j >= sizes_.size()) throw DomainError("class pair must satisfy i < j < k");
    const std::size_t k = sizes_.size();
    return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

const BipartiteGraph& KPartiteGraph::pair(std::uint32_t i, std::uint32_t j) const { return pairs_[pair_index(i, j)]; }
BipartiteGraph& KPartiteGraph::pair_mut(std::uint32_t i, std::uint32_t j) { return pairs_[pair_index(i, j)]; }

bool KPartiteGraph::adjacent(Vertex a, Vertex b) const {
    if (a.cls == b.cls) return false;
    if (a.cls > b.cls) std::swap(a, b);
    return pair(a.cls, b.cls).has_edge(a.idx, b.idx);
}

const Bitset& KPartiteGraph::neighbours(Vertex v, std::uint32_t cls) const {
    if (v.cls < cls) return pair(v.cls, cls).left_row(v.idx);
    return pair(cls, v.cls).right_row(v.idx);
}

std::size_t KPartiteGraph::degree(Vertex v) const {
    std::size_t d = 0;
    for (std::uint32_t c = 0; c < sizes_.size(); ++c)
        if (c != v.cls) d += neighbours(v, c).count();
    return d;
}

std::size_t KPartiteGraph::edge_count() const {
    std::size_t e = 0;
    for (const auto& p : pairs_) e += p.edge_count();
    return e;
}

void KPartiteGraph::add_edge(Vertex a, Vertex b) {
    if (a.cls == b.cls) throw StructuralError("edge inside class " + std::to_string(a.cls));
    if (a.cls > b.cls) std::swap(a, b);
    pair_mut(a.cls, b.cls).add_edge(a.idx, b.idx);
}

// ---------------------------------------------------------------- hypergraph

Hypergraph3::Hypergraph3(std::uint32_t vertex_count, std::vector<Triple> triples, std::vector<std::uint32_t> class_of)
    : n_(vertex_count), class_of_(std::move(class_of)) {
    if (n_ > kMaxVertices) throw CapacityError("hypergraph vertex count exceeds 2^21");
    if (!class_of_.empty() && class_of_.size() != n_) throw StructuralError("class labels do not cover all vertices");
    for (auto& t : triples) {
        t = sorted_triple(t[0], t[1], t[2]);
        if (t[2] >= n_) throw StructuralError("hyperedge vertex out of range");
        if (t[0] == t[1] || t[1] == t[2]) throw StructuralError("hyperedge with repeated vertex");
        if (partite() && (class_of_[t[0]] == class_of_[t[1]] || class_of_[t[1]] == class_of_[t[2]] ||
                          class_of_[t[0]] == class_of_[t[2]]))
            throw StructuralError("hyperedge with two vertices in one class");
    }
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    triples_ = std::move(triples);
    index_.reserve(triples_.size() * 2);
    for (const auto& t : triples_) index_.insert(key(t));
}

bool Hypergraph3::contains(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    return index_.contains(key(sorted_triple(a, b, c)));
}

// ---------------------------------------------------------------- complex

Edge canonical(Edge e) {
    if (e.b < e.a) std::swap(e.a, e.b);
    return e;
}

Hyperedge canonical(Hyperedge h) {
    std::sort(h.v.begin(), h.v.end());
    return h;
}

std::string to_string(Vertex v) { return "(" + std::to_string(v.cls) + "," + std::to_string(v.idx) + ")"; }

namespace {

void check_vertex(const std::vector<std::uint32_t>& sizes, Vertex v) {
    if (v.cls >= sizes.size() || v.idx >= sizes[v.cls])
        throw StructuralError("vertex " + to_string(v) + " out of range");
}

std::string describe(const Hyperedge& h) {
    return "{" + to_string(h.v[0]) + "," + to_string(h.v[1]) + "," + to_string(h.v[2]) + "}";
}

void check_hyperedge(const std::vector<std::uint32_t>& sizes, const Hyperedge& h) {
    for (auto v : h.v) check_vertex(sizes, v);
    if (h.v[0].cls == h.v[1].cls || h.v[1].cls == h.v[2].cls || h.v[0].cls == h.v[2].cls)
        throw StructuralError("hyperedge " + describe(h) + " has two vertices in one class");
}

void check_edge(const std::vector<std::uint32_t>& sizes, const Edge& e) {
    check_vertex(sizes, e.a);
    check_vertex(sizes, e.b);
    if (e.a.cls == e.b.cls)
        throw StructuralError("edge " + to_string(e.a) + "-" + to_string(e.b) + " lies inside one class");
}

}  // namespace

std::uint64_t Complex::link_key(std::uint32_t ga, std::uint32_t gb, std::uint32_t cls) const noexcept {
    if (ga > gb) std::swap(ga, gb);
    return (static_cast<std::uint64_t>(ga) << 43) | (static_cast<std::uint64_t>(gb) << 22) | cls;
}

Complex Complex::build(std::vector<std::uint32_t> sizes, std::vector<Edge> edges, std::vector<Hyperedge> hyperedges) {
    for (auto s : sizes)
        if (s > kDefaultClassCap) throw CapacityError("class size " + std::to_string(s) + " exceeds cap");
    Complex c;
    c.offsets_.resize(sizes.size());
    std::exclusive_scan(sizes.begin(), sizes.end(), c.offsets_.begin(), std::uint32_t{0});
    c.total_ = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    if (c.total_ > Hypergraph3::kMaxVertices) throw CapacityError("complex vertex count exceeds 2^21");
    c.sizes_ = std::move(sizes);

    for (auto& e : edges) e = canonical(e);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto& h : hyperedges) h = canonical(h);
    std::sort(hyperedges.begin(), hyperedges.end());
    hyperedges.erase(std::unique(hyperedges.begin(), hyperedges.end()), hyperedges.end());

    c.graph_ = KPartiteGraph(c.sizes_);
    for (const auto& e : edges) c.graph_.add_edge(e.a, e.b);
    c.hyper_index_.reserve(hyperedges.size() * 2);
    for (const auto& h : hyperedges) {
        const auto g0 = c.global(h.v[0]), g1 = c.global(h.v[1]), g2 = c.global(h.v[2]);
        c.hyper_index_.insert(Hypergraph3::key({g0, g1, g2}));
        const std::array<std::uint32_t, 3> g{g0, g1, g2};
        for (int drop = 0; drop < 3; ++drop) {
            const int a = (drop + 1) % 3, b = (drop + 2) % 3;
            const auto cls = h.v[drop].cls;
            auto [it, fresh] = c.links_.try_emplace(c.link_key(g[a], g[b], cls), c.sizes_[cls]);
            it->second.set(h.v[drop].idx);
        }
    }
    c.edges_ = std::move(edges);
    c.hyperedges_ = std::move(hyperedges);
    return c;
}

Complex Complex::close(std::vector<std::uint32_t> class_sizes, std::span<const Hyperedge> triples,
                       std::span<const Edge> edges) {
    std::vector<Edge> all(edges.begin(), edges.end());
    for (const auto& e : all) check_edge(class_sizes, e);
    for (const auto& h : triples) {
        check_hyperedge(class_sizes, h);
        all.push_back({h.v[0], h.v[1]});
        all.push_back({h.v[1], h.v[2]});
        all.push_back({h.v[0], h.v[2]});
    }
    return build(std::move(class_sizes), std::move(all), {triples.begin(), triples.end()});
}

Complex Complex::strict(std::vector<std::uint32_t> class_sizes, std::span<const Hyperedge> triples,
                        std::span<const Edge> edges) {
    for (const auto& e : edges) check_edge(class_sizes, e);
    for (const auto& h : triples) check_hyperedge(class_sizes, h);
    Complex c = build(std::move(class_sizes), {edges.begin(), edges.end()}, {triples.begin(), triples.end()});
    for (const auto& h : c.hyperedges_) {
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (!c.graph_.adjacent(h.v[a], h.v[b]))
                    throw StructuralError("closure violation: hyperedge " + describe(h) + " lacks edge " +
                                          to_string(h.v[a]) + "-" + to_string(h.v[b]));
    }
    return c;
}

Complex Complex::complete(std::vector<std::uint32_t> class_sizes) {
    std::vector<Edge> edges;
    std::vector<Hyperedge> tris;
    const auto k = static_cast<std::uint32_t>(class_sizes.size());
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j)
            for (std::uint32_t u = 0; u < class_sizes[i]; ++u)
                for (std::uint32_t v = 0; v < class_sizes[j]; ++v) edges.push_back({{i, u}, {j, v}});
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j)
            for (std::uint32_t l = j + 1; l < k; ++l)
                for (std::uint32_t u = 0; u < class_sizes[i]; ++u)
                    for (std::uint32_t v = 0; v < class_sizes[j]; ++v)
                        for (std::uint32_t w = 0; w < class_sizes[l]; ++w)
                            tris.push_back({{Vertex{i, u}, Vertex{j, v}, Vertex{l, w}}});
    return build(std::move(class_sizes), std::move(edges), std::move(tris));
}

std::uint32_t Complex::max_class_size() const noexcept {
    return sizes_.empty() ? 0 : *std::max_element(sizes_.begin(), sizes_.end());
}

Vertex Complex::vertex(std::uint32_t g) const {
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), g);
    // last class whose offset is <= g; empty classes share offsets and are skipped
    const auto cls = static_cast<std::uint32_t>(std::distance(offsets_.begin(), it) - 1);
    return {cls, g - offsets_[cls]};
}

std::vector<Vertex> Complex::vertices() const {
    std::vector<Vertex> out;
    out.reserve(total_);
    for (std::uint32_t c = 0; c < sizes_.size(); ++c)
        for (std::uint32_t i = 0; i < sizes_[c]; ++i) out.push_back({c, i});
    return out;
}

bool Complex::has_edge(Vertex a, Vertex b) const { return graph_.adjacent(a, b); }

bool Complex::has_hyperedge(Vertex a, Vertex b, Vertex c) const {
    if (a.cls == b.cls || b.cls == c.cls || a.cls == c.cls) return false;
    return hyper_index_.contains(Hypergraph3::key(sorted_triple(global(a), global(b), global(c))));
}

const Bitset* Complex::link(Vertex a, Vertex b, std::uint32_t cls) const {
    const auto it = links_.find(link_key(global(a), global(b), cls));
    return it == links_.end() ? nullptr : &it->second;
}

Hypergraph3 Complex::hypergraph() const {
    std::vector<Triple> t;
    t.reserve(hyperedges_.size());
    for (const auto& h : hyperedges_) t.push_back(sorted_triple(global(h.v[0]), global(h.v[1]), global(h.v[2])));
    std::vector<std::uint32_t> labels(total_);
    for (std::uint32_t c = 0; c < sizes_.size(); ++c)
        for (std::uint32_t i = 0; i < sizes_[c]; ++i) labels[offsets_[c] + i] = c;
    return Hypergraph3(static_cast<std::uint32_t>(total_), std::move(t), std::move(labels));
}

InducedSubcomplex induced_subcomplex(const Complex& c, std::span<const Vertex> keep) {
    std::vector<std::uint32_t> sizes(c.class_count(), 0);
    std::unordered_map<std::uint32_t, Vertex> remap;
    InducedSubcomplex out;
    out.mapping.reserve(keep.size());
    for (const auto v : keep) {
        if (v.cls >= c.class_count() || v.idx >= c.class_size(v.cls))
            throw DomainError("vertex " + to_string(v) + " not in complex");
        if (remap.contains(c.global(v))) throw DomainError("vertex " + to_string(v) + " listed twice");
        const Vertex nv{v.cls, sizes[v.cls]++};
        remap.emplace(c.global(v), nv);
        out.mapping.push_back(nv);
    }
    std::vector<Edge> edges;
    for (const auto& e : c.edges()) {
        auto a = remap.find(c.global(e.a)), b = remap.find(c.global(e.b));
        if (a != remap.end() && b != remap.end()) edges.push_back({a->second, b->second});
    }
    std::vector<Hyperedge> tris;
    for (const auto& h : c.hyperedges()) {
        auto a = remap.find(c.global(h.v[0])), b = remap.find(c.global(h.v[1])), d = remap.find(c.global(h.v[2]));
        if (a != remap.end() && b != remap.end() && d != remap.end())
            tris.push_back({{a->second, b->second, d->second}});
    }
    out.complex = Complex::strict(sizes, tris, edges);
    out.original.resize(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) out.original[out.complex.global(out.mapping[i])] = keep[i];
    return out;
}

InducedSubcomplex remove_vertex(const Complex& c, Vertex v) {
    std::vector<Vertex> keep;
    for (const auto w : c.vertices())
        if (w != v) keep.push_back(w);
    return induced_subcomplex(c, keep);
}

DegreeProfile degree_profile(const Complex& c) {
    DegreeProfile p;
    const auto n = c.vertex_count();
    p.graph_degree.assign(n, 0);
    p.hyper_degree.assign(n, 0);
    for (const auto& e : c.edges()) {
        ++p.graph_degree[c.global(e.a)];
        ++p.graph_degree[c.global(e.b)];
    }
    for (const auto& h : c.hyperedges())
        for (auto v : h.v) ++p.hyper_degree[c.global(v)];
    p.complex_degree.resize(n);
    for (std::size_t g = 0; g < n; ++g) {
        p.complex_degree[g] = std::max(p.graph_degree[g], p.hyper_degree[g]);
        p.max_degree = std::max(p.max_degree, p.complex_degree[g]);
    }
    return p;
}

// ---------------------------------------------------------------- text format

namespace {

std::uint32_t parse_index(std::istringstream& in, std::size_t line, const char* what) {
    long long x = -1;
    if (!(in >> x) || x < 0 || x > static_cast<long long>(Hypergraph3::kMaxVertices))
        throw ParseError(line, std::string("expected non-negative integer for ") + what);
    return static_cast<std::uint32_t>(x);
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::istringstream stream{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    std::optional<std::uint32_t> k;
    std::vector<std::optional<std::uint32_t>> sizes;
    std::vector<Edge> edges;
    std::vector<Hyperedge> tris;
    std::vector<std::size_t> tri_lines;

    auto check = [&](Vertex v, const char* role) {
        if (!k) throw ParseError(line, "'k' must precede other records");
        if (v.cls >= *k) throw ParseError(line, std::string(role) + " class " + std::to_string(v.cls) + " out of range");
        if (!sizes[v.cls]) throw ParseError(line, "class " + std::to_string(v.cls) + " used before its size is declared");
        if (v.idx >= *sizes[v.cls])
            throw ParseError(line, std::string(role) + " vertex " + to_string(v) + " out of range");
    };

    while (std::getline(stream, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream in(raw);
        std::string tag;
        if (!(in >> tag)) continue;
        if (tag == "k") {
            if (k) throw ParseError(line, "duplicate 'k' record");
            k = parse_index(in, line, "k");
            sizes.assign(*k, std::nullopt);
        } else if (tag == "class") {
            if (!k) throw ParseError(line, "'k' must precede other records");
            const auto i = parse_index(in, line, "class index");
            const auto s = parse_index(in, line, "class size");
            if (i >= *k) throw ParseError(line, "class index " + std::to_string(i) + " out of range");
            if (sizes[i]) throw ParseError(line, "class " + std::to_string(i) + " declared twice");
            if (s > kDefaultClassCap) throw ParseError(line, "class size exceeds cap");
            sizes[i] = s;
        } else if (tag == "edge") {
            Edge e;
            e.a.cls = parse_index(in, line, "edge class");
            e.a.idx = parse_index(in, line, "edge vertex");
            e.b.cls = parse_index(in, line, "edge class");
            e.b.idx = parse_index(in, line, "edge vertex");
            check(e.a, "edge");
            check(e.b, "edge");
            if (e.a.cls == e.b.cls) throw ParseError(line, "edge inside class " + std::to_string(e.a.cls));
            edges.push_back(e);
        } else if (tag == "tri") {
            Hyperedge h;
            for (auto& v : h.v) {
                v.cls = parse_index(in, line, "tri class");
                v.idx = parse_index(in, line, "tri vertex");
                check(v, "tri");
            }
            if (h.v[0].cls == h.v[1].cls || h.v[1].cls == h.v[2].cls || h.v[0].cls == h.v[2].cls)
                throw ParseError(line, "hyperedge with two vertices in one class");
            tris.push_back(h);
            tri_lines.push_back(line);
        } else {
            throw ParseError(line, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (in >> extra) throw ParseError(line, "trailing token '" + extra + "'");
    }
    if (!k) throw ParseError(line, "missing 'k' record");
    std::vector<std::uint32_t> final_sizes;
    for (std::uint32_t i = 0; i < *k; ++i) {
        if (!sizes[i]) throw ParseError(line, "class " + std::to_string(i) + " has no size record");
        final_sizes.push_back(*sizes[i]);
    }
    // closure check with line anchors before delegating to the strict constructor
    std::unordered_set<std::uint64_t> present;
    auto pkey = [](Vertex a, Vertex b) {
        if (b < a) std::swap(a, b);
        return (static_cast<std::uint64_t>(a.cls) << 48) ^ (static_cast<std::uint64_t>(a.idx) << 32) ^
               (static_cast<std::uint64_t>(b.cls) << 16) ^ b.idx;
    };
    for (const auto& e : edges) present.insert(pkey(e.a, e.b));
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& h = tris[t];
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (!present.contains(pkey(h.v[a], h.v[b])))
                    throw ParseError(tri_lines[t], "closure violation: hyperedge " + describe(h) + " missing edge " +
                                                       to_string(h.v[a]) + "-" + to_string(h.v[b]));
    }
    return Complex::strict(std::move(final_sizes), tris, edges);
}

std::string serialize_complex(const Complex& c) {
    std::ostringstream out;
    out << "k " << c.class_count() << '\n';
    for (std::uint32_t i = 0; i < c.class_count(); ++i) out << "class " << i << ' ' << c.class_size(i) << '\n';
    for (const auto& e : c.edges())
        out << "edge " << e.a.cls << ' ' << e.a.idx << ' ' << e.b.cls << ' ' << e.b.idx << '\n';
    for (const auto& h : c.hyperedges())
        out << "tri " << h.v[0].cls << ' ' << h.v[0].idx << ' ' << h.v[1].cls << ' ' << h.v[1].idx << ' '
            << h.v[2].cls << ' ' << h.v[2].idx << '\n';
    return out.str();
}

Complex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_complex(buf.str());
}

void save_complex(const Complex& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_complex(c);
}

}  // namespace hyperreg
