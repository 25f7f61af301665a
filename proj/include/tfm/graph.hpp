#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tfm {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

// Raised when a caller violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an internal invariant that the theory guarantees fails to hold.
class DefectError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Edge {
    Vertex u = 0;  // u <= v
    Vertex v = 0;

    bool is_loop() const noexcept { return u == v; }
    bool touches(Vertex x) const noexcept { return u == x || v == x; }
    Vertex other(Vertex x) const noexcept { return x == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected graph with an append-only edge table. Self-loops are allowed,
// parallel edges are not. Edge identifiers are indices into the table and
// never change once assigned.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t vertex_count);

    // Throws PreconditionError on out-of-range endpoints or a parallel edge.
    EdgeId add_edge(Vertex a, Vertex b);

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    // A self-loop is listed once; degree counting doubles it.
    std::span<const EdgeId> incident(Vertex v) const { return adjacency_.at(v); }

    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
    bool has_self_loops() const noexcept { return loop_count_ > 0; }

    friend bool operator==(const Graph& lhs, const Graph& rhs)
    {
        return lhs.edges_ == rhs.edges_ && lhs.adjacency_.size() == rhs.adjacency_.size();
    }

private:
    static std::uint64_t key(Vertex a, Vertex b) noexcept;

    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> adjacency_;
    std::unordered_map<std::uint64_t, EdgeId> index_;
    std::size_t loop_count_ = 0;
};

// A set of edge identifiers over a graph's edge table. The binding to a graph
// is its universe size: two subsets are comparable only if their universes
// agree.
class EdgeSubset {
public:
    EdgeSubset() = default;
    explicit EdgeSubset(std::size_t universe) : mask_(universe, 0) {}
    EdgeSubset(std::size_t universe, std::span<const EdgeId> members);
    EdgeSubset(std::size_t universe, std::initializer_list<EdgeId> members)
        : EdgeSubset(universe, std::span<const EdgeId>(members.begin(), members.size()))
    {
    }

    static EdgeSubset full(std::size_t universe);

    std::size_t universe() const noexcept { return mask_.size(); }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains(EdgeId e) const noexcept { return e < mask_.size() && mask_[e] != 0; }
    void insert(EdgeId e);
    void erase(EdgeId e);
    void toggle(EdgeId e);

    // Sorted ascending.
    std::vector<EdgeId> members() const;

    // Same members over a larger edge table (used when a graph gains edges).
    EdgeSubset rebound(std::size_t universe) const;

    friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;

private:
    void check(EdgeId e) const;

    std::vector<std::uint8_t> mask_;
    std::size_t count_ = 0;
};

struct Triangle {
    std::array<EdgeId, 3> edges{};    // sorted ascending
    std::array<Vertex, 3> vertices{};  // sorted ascending

    bool has_edge(EdgeId e) const noexcept
    {
        return edges[0] == e || edges[1] == e || edges[2] == e;
    }
    bool has_vertex(Vertex v) const noexcept
    {
        return vertices[0] == v || vertices[1] == v || vertices[2] == v;
    }
    friend bool operator==(const Triangle&, const Triangle&) = default;
};

// Ordered list of distinct triangles.
using TriangleSet = std::vector<Triangle>;

// Builds the triangle on three distinct pairwise-adjacent vertices, if any.
std::optional<Triangle> make_triangle(const Graph& g, Vertex a, Vertex b, Vertex c);

// Every triangle of g exactly once, sorted by vertex triple.
TriangleSet enumerate_triangles(const Graph& g);

// d_F(v) with self-loops counted twice.
std::size_t degree(const Graph& g, const EdgeSubset& f, Vertex v);

// Provenance of edges across a graph transformation.
struct EdgeMap {
    std::vector<EdgeId> forward;               // source id -> image id, kNoEdge if removed
    std::vector<std::vector<EdgeId>> inverse;  // image id -> source ids identified into it
    std::vector<EdgeId> added;                 // image ids with no source edge

    static EdgeMap identity(std::size_t edge_count);
};

struct Contraction {
    Graph graph;
    EdgeMap edges;
    std::vector<Vertex> vertex_map;  // source vertex -> image vertex
    Vertex merged = 0;               // image of the contracted pair
};

struct Extension {
    Graph graph;
    EdgeId edge = kNoEdge;  // the ensured edge, in the image graph
    EdgeMap edges;
};

// Merges adjacent u and v into one vertex. The edge uv disappears and edges
// xu, xv for a common neighbour x are identified into a single image edge.
// The merged vertex takes id min(u, v); ids above max(u, v) shift down by one.
Contraction contract_pair(const Graph& g, Vertex u, Vertex v);

Extension ensure_self_loop(const Graph& g, Vertex u);
Extension ensure_edge(const Graph& g, Vertex u, Vertex v);

}  // namespace tfm
