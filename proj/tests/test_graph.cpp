#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "tfm/generators.hpp"
#include "tfm/graph.hpp"
#include "tfm/io.hpp"

using namespace tfm;

namespace {

std::set<std::pair<Vertex, Vertex>> endpoint_pairs(const Graph& g)
{
    std::set<std::pair<Vertex, Vertex>> out;
    for (const auto& e : g.edges()) {
        out.emplace(e.u, e.v);
    }
    return out;
}

bool no_parallel_edges(const Graph& g)
{
    return endpoint_pairs(g).size() == g.edge_count();
}

Edge renamed(const Edge& e, const std::vector<Vertex>& map)
{
    const auto a = map[e.u];
    const auto b = map[e.v];
    return Edge{std::min(a, b), std::max(a, b)};
}

}  // namespace

TEST_CASE("edge list parsing keeps file order as edge identifiers")
{
    const auto k3 = parse_graph("3 3\n0 1\n1 2\n2 0\n");
    CHECK(k3.vertex_count() == 3);
    REQUIRE(k3.edge_count() == 3);
    CHECK(k3.edge(0) == Edge{0, 1});
    CHECK(k3.edge(1) == Edge{1, 2});
    CHECK(k3.edge(2) == Edge{0, 2});

    const auto c4 = parse_graph("# a square\n4 4\n0 1\n1 2\n2 3\n3 0\n");
    CHECK(c4.edge_count() == 4);
    CHECK(enumerate_triangles(c4).empty());
}

TEST_CASE("edge list parsing reports the offending line")
{
    const auto line_of = [](std::string_view text, ParseOptions opts = {}) -> std::size_t {
        try {
            parse_graph(text, opts);
        }
        catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("2 2\n0 1\n0 1\n") == 3);
    CHECK(line_of("2 2\n0 1\n1 0\n") == 3);
    CHECK(line_of("3 1\n0 5\n") == 2);
    CHECK(line_of("3 1\n0 x\n") == 2);
    CHECK(line_of("3 1\n0 1 2\n") == 2);
    CHECK(line_of("3 1\n1 1\n") == 2);
    CHECK(line_of("3 1\n1 1\n", ParseOptions{true}) == 0);
    CHECK(line_of("3 2\n0 1\n") == 2);
    CHECK(line_of("3 1\n0 1\n1 2\n") == 3);
    CHECK(line_of("3\n") == 1);
    CHECK(line_of("") == 1);
    CHECK(line_of("-1 0\n") == 1);
}

TEST_CASE("graph rejects parallel edges and bad endpoints")
{
    Graph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(g.add_edge(1, 0), PreconditionError);
    CHECK_THROWS_AS(g.add_edge(0, 3), PreconditionError);
    g.add_edge(2, 2);
    CHECK(g.has_self_loops());
    CHECK_THROWS_AS(g.add_edge(2, 2), PreconditionError);
    CHECK(g.incident(2).size() == 1);
    CHECK(g.find_edge(1, 0) == EdgeId{0});
    CHECK_FALSE(g.find_edge(1, 2).has_value());
}

TEST_CASE("triangle counts on small named graphs")
{
    CHECK(enumerate_triangles(oracle::complete(3)).size() == 1);
    CHECK(enumerate_triangles(oracle::complete(4)).size() == 4);
    CHECK(enumerate_triangles(oracle::cycle(4)).empty());
    CHECK(enumerate_triangles(oracle::bowtie()).size() == 2);
    CHECK(enumerate_triangles(Graph{}).empty());
}

TEST_CASE("triangle enumeration matches the brute-force triple scan")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto n = 3 + seed % 10;
        const double p = 0.2 + 0.1 * static_cast<double>(seed % 7);
        auto g = erdos_renyi(n, p, seed);
        if (seed % 3 == 0) {
            g.add_edge(0, 0);  // loops never take part in triangles
        }
        const auto ts = enumerate_triangles(g);
        const auto expected = oracle::triangle_triples(g);
        REQUIRE(ts.size() == expected.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            CHECK(ts[i].vertices == expected[i]);
            const auto& t = ts[i];
            CHECK(std::is_sorted(t.edges.begin(), t.edges.end()));
            std::set<Vertex> spanned;
            for (const auto e : t.edges) {
                CHECK_FALSE(g.edge(e).is_loop());
                spanned.insert(g.edge(e).u);
                spanned.insert(g.edge(e).v);
            }
            CHECK(spanned == std::set<Vertex>(t.vertices.begin(), t.vertices.end()));
        }
    }
}

TEST_CASE("degree counts loops twice")
{
    const auto k3 = oracle::complete(3);
    const auto all = EdgeSubset::full(3);
    for (Vertex v = 0; v < 3; ++v) {
        CHECK(degree(k3, all, v) == 2);
        CHECK(degree(k3, EdgeSubset(3), v) == 0);
    }
    Graph g(2);
    const auto loop = g.add_edge(0, 0);
    g.add_edge(0, 1);
    CHECK(degree(g, EdgeSubset(2, {loop}), 0) == 2);
    CHECK(degree(g, EdgeSubset::full(2), 0) == 3);
}

TEST_CASE("degrees over the full edge set sum to twice the edge count")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto g = erdos_renyi(2 + seed % 9, 0.5, seed);
        for (Vertex v = 0; v < g.vertex_count(); v += 2) {
            g.add_edge(v, v);
        }
        const auto all = EdgeSubset::full(g.edge_count());
        std::size_t total = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            total += degree(g, all, v);
        }
        CHECK(total == 2 * g.edge_count());
    }
}

TEST_CASE("edge subset operations")
{
    EdgeSubset s(5, {3, 1});
    CHECK(s.size() == 2);
    CHECK(s.members() == std::vector<EdgeId>{1, 3});
    s.toggle(1);
    s.toggle(4);
    CHECK(s.members() == std::vector<EdgeId>{3, 4});
    s.insert(3);
    CHECK(s.size() == 2);
    s.erase(0);
    CHECK(s.size() == 2);
    CHECK_THROWS_AS(s.insert(5), PreconditionError);
    const auto wider = s.rebound(7);
    CHECK(wider.universe() == 7);
    CHECK(wider.members() == s.members());
    CHECK_THROWS_AS(s.rebound(2), PreconditionError);
    CHECK(EdgeSubset::full(3).size() == 3);
}

TEST_CASE("contracting one side of a triangle identifies the other two edges")
{
    const auto k3 = oracle::complete(3);  // 0:01 1:02 2:12
    const auto c = contract_pair(k3, 1, 2);
    CHECK(c.graph.vertex_count() == 2);
    REQUIRE(c.graph.edge_count() == 1);
    CHECK(c.graph.edge(0) == Edge{0, 1});
    CHECK(c.merged == 1);
    CHECK(c.edges.inverse[0] == std::vector<EdgeId>{0, 1});
    CHECK(c.edges.forward[2] == kNoEdge);
    CHECK(c.edges.added.empty());
}

TEST_CASE("contracting the middle of a path keeps both neighbours")
{
    const auto p = oracle::path(4);  // 0-1-2-3
    const auto c = contract_pair(p, 1, 2);
    CHECK(c.graph.vertex_count() == 3);
    CHECK(endpoint_pairs(c.graph) == std::set<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}});
    for (const auto& pre : c.edges.inverse) {
        CHECK(pre.size() == 1);
    }
}

TEST_CASE("contracting a K4 edge identifies both common-neighbour pairs")
{
    // a=0 b=1 u=2 v=3
    const auto k4 = oracle::complete(4);
    const auto c = contract_pair(k4, 2, 3);
    CHECK(c.graph.vertex_count() == 3);
    CHECK(c.graph.edge_count() == 3);
    const auto uv = c.merged;
    const auto au = *k4.find_edge(0, 2);
    const auto av = *k4.find_edge(0, 3);
    const auto bu = *k4.find_edge(1, 2);
    const auto bv = *k4.find_edge(1, 3);
    const auto a_uv = *c.graph.find_edge(0, uv);
    const auto b_uv = *c.graph.find_edge(1, uv);
    CHECK(c.graph.find_edge(0, 1).has_value());
    auto inv_a = c.edges.inverse[a_uv];
    auto inv_b = c.edges.inverse[b_uv];
    std::sort(inv_a.begin(), inv_a.end());
    std::sort(inv_b.begin(), inv_b.end());
    CHECK(inv_a == std::vector<EdgeId>{au, av});
    CHECK(inv_b == std::vector<EdgeId>{bu, bv});
    CHECK(c.edges.forward[*k4.find_edge(2, 3)] == kNoEdge);
}

TEST_CASE("contraction provenance is consistent on random graphs")
{
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        auto g = erdos_renyi(3 + seed % 8, 0.6, seed);
        if (g.edge_count() == 0) {
            continue;
        }
        if (seed % 4 == 1) {
            g.add_edge(g.edge(0).u, g.edge(0).u);
        }
        const auto& picked = g.edge(static_cast<EdgeId>(seed % g.edge_count()));
        if (picked.is_loop()) {
            continue;
        }
        const auto c = contract_pair(g, picked.u, picked.v);
        CHECK(no_parallel_edges(c.graph));
        CHECK(c.graph.vertex_count() == g.vertex_count() - 1);
        CHECK(c.vertex_map[picked.u] == c.merged);
        CHECK(c.vertex_map[picked.v] == c.merged);
        REQUIRE(c.edges.inverse.size() == c.graph.edge_count());

        for (EdgeId img = 0; img < c.graph.edge_count(); ++img) {
            const auto& pre = c.edges.inverse[img];
            CHECK((pre.size() == 1 || pre.size() == 2));
            for (const auto e : pre) {
                CHECK(c.edges.forward[e] == img);
                CHECK(renamed(g.edge(e), c.vertex_map) == c.graph.edge(img));
            }
        }
        std::size_t removed = 0;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (c.edges.forward[e] == kNoEdge) {
                ++removed;
                CHECK(g.edge(e) == picked);
            }
        }
        CHECK(removed == 1);
    }
}

TEST_CASE("contraction preconditions")
{
    const auto p = oracle::path(3);
    CHECK_THROWS_AS(contract_pair(p, 1, 1), PreconditionError);
    CHECK_THROWS_AS(contract_pair(p, 0, 2), PreconditionError);
}

TEST_CASE("ensuring a self-loop adds one edge or reuses the existing loop")
{
    const auto k3 = oracle::complete(3);
    const auto x = ensure_self_loop(k3, 0);
    CHECK(x.graph.edge_count() == 4);
    CHECK(x.edge == 3);
    CHECK(x.graph.edge(3) == Edge{0, 0});
    CHECK(x.edges.added == std::vector<EdgeId>{3});
    for (EdgeId e = 0; e < 3; ++e) {
        CHECK(x.edges.forward[e] == e);
    }

    const auto again = ensure_self_loop(x.graph, 0);
    CHECK(again.graph == x.graph);
    CHECK(again.edge == 3);
    CHECK(again.edges.added.empty());

    const auto single = ensure_self_loop(Graph(1), 0);
    CHECK(single.graph.edge_count() == 1);
    CHECK(single.graph.edge(0).is_loop());
}

TEST_CASE("ensuring an edge adds it once and never duplicates")
{
    const auto c4 = oracle::cycle(4);
    const auto chord = ensure_edge(c4, 0, 2);
    CHECK(chord.graph.edge_count() == 5);
    CHECK(chord.graph.edge(chord.edge) == Edge{0, 2});
    CHECK(chord.edges.added == std::vector<EdgeId>{4});
    CHECK(no_parallel_edges(chord.graph));

    const auto k3 = oracle::complete(3);
    const auto same = ensure_edge(k3, 1, 0);
    CHECK(same.graph == k3);
    CHECK(same.edge == *k3.find_edge(0, 1));
    CHECK(same.edges.added.empty());

    const auto pair = ensure_edge(Graph(2), 0, 1);
    CHECK(pair.graph.edge_count() == 1);
    CHECK_THROWS_AS(ensure_edge(k3, 1, 1), PreconditionError);
}

TEST_CASE("rendered graphs parse back to the same graph")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto g = erdos_renyi(seed % 12, 0.4, seed);
        CHECK(parse_graph(render_graph(g)) == g);
    }
    CHECK(render_graph(Graph{}) == "0 0\n");
}
