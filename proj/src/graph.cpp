#include "tfm/graph.hpp"

#include <algorithm>
#include <string>

namespace tfm {

Graph::Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

std::uint64_t Graph::key(Vertex a, Vertex b) noexcept
{
    if (a > b) {
        std::swap(a, b);
    }
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

EdgeId Graph::add_edge(Vertex a, Vertex b)
{
    if (a >= vertex_count() || b >= vertex_count()) {
        throw PreconditionError("edge endpoint out of range: " + std::to_string(a) + " "
                                + std::to_string(b));
    }
    const auto k = key(a, b);
    if (index_.contains(k)) {
        throw PreconditionError("parallel edge " + std::to_string(a) + " " + std::to_string(b));
    }
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    index_.emplace(k, id);
    adjacency_[a].push_back(id);
    if (a != b) {
        adjacency_[b].push_back(id);
    }
    else {
        ++loop_count_;
    }
    return id;
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const
{
    const auto it = index_.find(key(a, b));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

EdgeSubset::EdgeSubset(std::size_t universe, std::span<const EdgeId> members) : mask_(universe, 0)
{
    for (const auto e : members) {
        insert(e);
    }
}

EdgeSubset EdgeSubset::full(std::size_t universe)
{
    EdgeSubset s(universe);
    std::fill(s.mask_.begin(), s.mask_.end(), std::uint8_t{1});
    s.count_ = universe;
    return s;
}

void EdgeSubset::check(EdgeId e) const
{
    if (e >= mask_.size()) {
        throw PreconditionError("edge id " + std::to_string(e) + " outside edge table of size "
                                + std::to_string(mask_.size()));
    }
}

void EdgeSubset::insert(EdgeId e)
{
    check(e);
    if (mask_[e] == 0) {
        mask_[e] = 1;
        ++count_;
    }
}

void EdgeSubset::erase(EdgeId e)
{
    check(e);
    if (mask_[e] != 0) {
        mask_[e] = 0;
        --count_;
    }
}

void EdgeSubset::toggle(EdgeId e)
{
    check(e);
    if (mask_[e] != 0) {
        mask_[e] = 0;
        --count_;
    }
    else {
        mask_[e] = 1;
        ++count_;
    }
}

std::vector<EdgeId> EdgeSubset::members() const
{
    std::vector<EdgeId> out;
    out.reserve(count_);
    for (std::size_t e = 0; e < mask_.size(); ++e) {
        if (mask_[e] != 0) {
            out.push_back(static_cast<EdgeId>(e));
        }
    }
    return out;
}

EdgeSubset EdgeSubset::rebound(std::size_t universe) const
{
    if (universe < mask_.size()) {
        throw PreconditionError("cannot rebind edge subset to a smaller edge table");
    }
    EdgeSubset out = *this;
    out.mask_.resize(universe, 0);
    return out;
}

std::optional<Triangle> make_triangle(const Graph& g, Vertex a, Vertex b, Vertex c)
{
    if (a == b || b == c || a == c) {
        return std::nullopt;
    }
    const auto ab = g.find_edge(a, b);
    const auto bc = g.find_edge(b, c);
    const auto ca = g.find_edge(c, a);
    if (!ab || !bc || !ca) {
        return std::nullopt;
    }
    Triangle t;
    t.edges = {*ab, *bc, *ca};
    t.vertices = {a, b, c};
    std::sort(t.edges.begin(), t.edges.end());
    std::sort(t.vertices.begin(), t.vertices.end());
    return t;
}

TriangleSet enumerate_triangles(const Graph& g)
{
    const auto n = g.vertex_count();
    std::vector<std::vector<Vertex>> higher(n);
    for (const auto& e : g.edges()) {
        if (!e.is_loop()) {
            higher[e.u].push_back(e.v);
        }
    }
    for (auto& list : higher) {
        std::sort(list.begin(), list.end());
    }

    TriangleSet out;
    for (Vertex a = 0; a < n; ++a) {
        const auto& na = higher[a];
        for (std::size_t i = 0; i < na.size(); ++i) {
            for (std::size_t j = i + 1; j < na.size(); ++j) {
                if (auto t = make_triangle(g, a, na[i], na[j])) {
                    out.push_back(*t);
                }
            }
        }
    }
    return out;
}

std::size_t degree(const Graph& g, const EdgeSubset& f, Vertex v)
{
    std::size_t d = 0;
    for (const auto e : g.incident(v)) {
        if (f.contains(e)) {
            d += g.edge(e).is_loop() ? 2 : 1;
        }
    }
    return d;
}

EdgeMap EdgeMap::identity(std::size_t edge_count)
{
    EdgeMap m;
    m.forward.resize(edge_count);
    m.inverse.resize(edge_count);
    for (std::size_t e = 0; e < edge_count; ++e) {
        m.forward[e] = static_cast<EdgeId>(e);
        m.inverse[e] = {static_cast<EdgeId>(e)};
    }
    return m;
}

Contraction contract_pair(const Graph& g, Vertex u, Vertex v)
{
    if (u == v) {
        throw PreconditionError("contract_pair needs two distinct vertices");
    }
    if (u >= g.vertex_count() || v >= g.vertex_count() || !g.find_edge(u, v)) {
        throw PreconditionError("contract_pair needs an existing edge between the pair");
    }
    const Vertex lo = std::min(u, v);
    const Vertex hi = std::max(u, v);

    Contraction out;
    out.merged = lo;
    out.vertex_map.resize(g.vertex_count());
    for (Vertex w = 0; w < g.vertex_count(); ++w) {
        out.vertex_map[w] = w == hi ? lo : (w > hi ? w - 1 : w);
    }
    out.graph = Graph(g.vertex_count() - 1);
    out.edges.forward.assign(g.edge_count(), kNoEdge);

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        if (edge.touches(u) && edge.touches(v) && !edge.is_loop()) {
            continue;
        }
        const Vertex a = out.vertex_map[edge.u];
        const Vertex b = out.vertex_map[edge.v];
        EdgeId image;
        if (auto existing = out.graph.find_edge(a, b)) {
            image = *existing;
        }
        else {
            image = out.graph.add_edge(a, b);
            out.edges.inverse.emplace_back();
        }
        out.edges.forward[e] = image;
        out.edges.inverse[image].push_back(e);
    }
    return out;
}

Extension ensure_self_loop(const Graph& g, Vertex u)
{
    if (u >= g.vertex_count()) {
        throw PreconditionError("ensure_self_loop: vertex out of range");
    }
    Extension out{g, kNoEdge, EdgeMap::identity(g.edge_count())};
    if (auto existing = g.find_edge(u, u)) {
        out.edge = *existing;
        return out;
    }
    out.edge = out.graph.add_edge(u, u);
    out.edges.inverse.emplace_back();
    out.edges.added.push_back(out.edge);
    return out;
}

Extension ensure_edge(const Graph& g, Vertex u, Vertex v)
{
    if (u == v) {
        throw PreconditionError("ensure_edge needs two distinct vertices");
    }
    if (u >= g.vertex_count() || v >= g.vertex_count()) {
        throw PreconditionError("ensure_edge: vertex out of range");
    }
    Extension out{g, kNoEdge, EdgeMap::identity(g.edge_count())};
    if (auto existing = g.find_edge(u, v)) {
        out.edge = *existing;
        return out;
    }
    out.edge = out.graph.add_edge(u, v);
    out.edges.inverse.emplace_back();
    out.edges.added.push_back(out.edge);
    return out;
}

}  // namespace tfm
