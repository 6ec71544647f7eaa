#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hyperreg/bitset.hpp"
#include "hyperreg/types.hpp"

namespace hyperreg {

/// Bipartite graph between a left class and a right class, stored as bit rows
/// in both directions.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(std::size_t left, std::size_t right);

    static BipartiteGraph complete(std::size_t left, std::size_t right);

    std::size_t left_size() const noexcept { return left_rows_.size(); }
    std::size_t right_size() const noexcept { return right_rows_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    bool has_edge(std::uint32_t u, std::uint32_t v) const noexcept { return left_rows_[u].test(v); }
    /// Right-side neighbours of left vertex u.
    const Bitset& left_row(std::uint32_t u) const noexcept { return left_rows_[u]; }
    /// Left-side neighbours of right vertex v.
    const Bitset& right_row(std::uint32_t v) const noexcept { return right_rows_[v]; }

    void add_edge(std::uint32_t u, std::uint32_t v);
    void remove_edge(std::uint32_t u, std::uint32_t v);

    BipartiteGraph transposed() const;
    bool is_subgraph_of(const BipartiteGraph& other) const;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

    friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

private:
    std::vector<Bitset> left_rows_;
    std::vector<Bitset> right_rows_;
    std::size_t edges_ = 0;
};

/// k-partite graph; one BipartiteGraph per unordered class pair.
class KPartiteGraph {
public:
    KPartiteGraph() = default;
    explicit KPartiteGraph(std::vector<std::uint32_t> class_sizes);

    std::size_t class_count() const noexcept { return sizes_.size(); }
    const std::vector<std::uint32_t>& class_sizes() const noexcept { return sizes_; }
    std::uint32_t class_size(std::uint32_t c) const { return sizes_.at(c); }

    /// Bipartite graph between classes i < j (left = i).
    const BipartiteGraph& pair(std::uint32_t i, std::uint32_t j) const;
    BipartiteGraph& pair_mut(std::uint32_t i, std::uint32_t j);

    bool adjacent(Vertex a, Vertex b) const;
    /// Neighbours of v inside class `cls` (cls != v.cls).
    const Bitset& neighbours(Vertex v, std::uint32_t cls) const;
    std::size_t degree(Vertex v) const;
    std::size_t edge_count() const;

    void add_edge(Vertex a, Vertex b);

    friend bool operator==(const KPartiteGraph&, const KPartiteGraph&) = default;

private:
    std::size_t pair_index(std::uint32_t i, std::uint32_t j) const;

    std::vector<std::uint32_t> sizes_;
    std::vector<BipartiteGraph> pairs_;
};

/// Sorted triple of global vertex ids.
using Triple = std::array<std::uint32_t, 3>;

inline Triple sorted_triple(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return {a, b, c};
}

/// 3-uniform hypergraph on vertices 0..n-1, optionally with a class label per
/// vertex (partite case: no two vertices of a hyperedge share a class).
class Hypergraph3 {
public:
    static constexpr std::uint32_t kMaxVertices = 1u << 21;

    Hypergraph3() = default;
    Hypergraph3(std::uint32_t vertex_count, std::vector<Triple> triples,
                std::vector<std::uint32_t> class_of = {});

    std::uint32_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return triples_.size(); }
    const std::vector<Triple>& triples() const noexcept { return triples_; }
    const std::vector<std::uint32_t>& class_of() const noexcept { return class_of_; }
    bool partite() const noexcept { return !class_of_.empty(); }

    bool contains(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;
    bool contains(const Triple& t) const { return contains(t[0], t[1], t[2]); }

    static std::uint64_t key(const Triple& t) noexcept {
        return (static_cast<std::uint64_t>(t[0]) << 42) | (static_cast<std::uint64_t>(t[1]) << 21) | t[2];
    }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint32_t> class_of_;
    std::vector<Triple> triples_;
    std::unordered_set<std::uint64_t> index_;
};

/// An edge between distinct classes; canonical when a.cls < b.cls.
struct Edge {
    Vertex a, b;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A hyperedge meeting three distinct classes; canonical when sorted by class.
struct Hyperedge {
    std::array<Vertex, 3> v;
    friend auto operator<=>(const Hyperedge&, const Hyperedge&) = default;
};

Edge canonical(Edge e);
Hyperedge canonical(Hyperedge h);

/// k-partite complex: vertex classes, cross-class edges E2, cross-class
/// hyperedges E3, with every pair inside a hyperedge present in E2.
/// Immutable after construction.
class Complex {
public:
    Complex() = default;

    /// Builder: adds every pair forced by `triples` to `edges`.
    static Complex close(std::vector<std::uint32_t> class_sizes, std::span<const Hyperedge> triples,
                         std::span<const Edge> edges = {});
    /// Strict constructor: throws StructuralError if closure does not already hold.
    static Complex strict(std::vector<std::uint32_t> class_sizes, std::span<const Hyperedge> triples,
                          std::span<const Edge> edges);
    /// Complete complex: all cross edges, all cross triples.
    static Complex complete(std::vector<std::uint32_t> class_sizes);

    std::size_t class_count() const noexcept { return sizes_.size(); }
    const std::vector<std::uint32_t>& class_sizes() const noexcept { return sizes_; }
    std::uint32_t class_size(std::uint32_t c) const { return sizes_.at(c); }
    std::uint32_t max_class_size() const noexcept;
    std::size_t vertex_count() const noexcept { return total_; }
    std::size_t e2() const noexcept { return edges_.size(); }
    std::size_t e3() const noexcept { return hyperedges_.size(); }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Hyperedge>& hyperedges() const noexcept { return hyperedges_; }
    const KPartiteGraph& graph() const noexcept { return graph_; }

    std::uint32_t global(Vertex v) const { return offsets_.at(v.cls) + v.idx; }
    Vertex vertex(std::uint32_t global_id) const;
    std::vector<Vertex> vertices() const;

    bool has_edge(Vertex a, Vertex b) const;
    bool has_hyperedge(Vertex a, Vertex b, Vertex c) const;
    /// Vertices w in class `cls` with {a,b,w} a hyperedge; nullptr when empty.
    const Bitset* link(Vertex a, Vertex b, std::uint32_t cls) const;

    /// Underlying hypergraph over global ids with class labels.
    Hypergraph3 hypergraph() const;

    friend bool operator==(const Complex& x, const Complex& y) {
        return x.sizes_ == y.sizes_ && x.edges_ == y.edges_ && x.hyperedges_ == y.hyperedges_;
    }

private:
    static Complex build(std::vector<std::uint32_t> sizes, std::vector<Edge> edges,
                         std::vector<Hyperedge> hyperedges);
    std::uint64_t link_key(std::uint32_t ga, std::uint32_t gb, std::uint32_t cls) const noexcept;

    std::vector<std::uint32_t> sizes_;
    std::vector<std::uint32_t> offsets_;
    std::size_t total_ = 0;
    std::vector<Edge> edges_;
    std::vector<Hyperedge> hyperedges_;
    KPartiteGraph graph_;
    std::unordered_set<std::uint64_t> hyper_index_;
    std::unordered_map<std::uint64_t, Bitset> links_;
};

/// Induced subcomplex on `keep`, preserving the class count. New local indices
/// follow the order of `keep` within each class; `mapping[i]` is the new
/// vertex for keep[i].
struct InducedSubcomplex {
    Complex complex;
    std::vector<Vertex> original;  // new global id -> original vertex
    std::vector<Vertex> mapping;   // keep[i] -> new vertex
};
InducedSubcomplex induced_subcomplex(const Complex& c, std::span<const Vertex> keep);

/// Complex minus one vertex.
InducedSubcomplex remove_vertex(const Complex& c, Vertex v);

struct DegreeProfile {
    std::vector<std::size_t> graph_degree;  // by global id
    std::vector<std::size_t> hyper_degree;
    std::vector<std::size_t> complex_degree;
    std::size_t max_degree = 0;
};

DegreeProfile degree_profile(const Complex& c);

/// Text format (see README): `k`, `class`, `edge`, `tri` lines, '#' comments.
Complex parse_complex(std::string_view text);
std::string serialize_complex(const Complex& c);
Complex load_complex(const std::string& path);
void save_complex(const Complex& c, const std::string& path);

std::string to_string(Vertex v);

}  // namespace hyperreg
