#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace tfm::oracle {

Graph from_pairs(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs)
{
    Graph g(n);
    for (const auto& [a, b] : pairs) {
        g.add_edge(a, b);
    }
    return g;
}

Graph complete(std::size_t n)
{
    Graph g(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            g.add_edge(u, v);
        }
    }
    return g;
}

Graph cycle(std::size_t n)
{
    Graph g(n);
    for (Vertex u = 0; u < n; ++u) {
        g.add_edge(u, static_cast<Vertex>((u + 1) % n));
    }
    return g;
}

Graph path(std::size_t n)
{
    Graph g(n);
    for (Vertex u = 0; u + 1 < n; ++u) {
        g.add_edge(u, u + 1);
    }
    return g;
}

Graph bowtie()
{
    return from_pairs(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
}

std::vector<int> degrees(const Graph& g, const std::vector<EdgeId>& subset)
{
    std::vector<int> deg(g.vertex_count(), 0);
    for (const auto e : subset) {
        const auto& edge = g.edges()[e];
        deg[edge.u] += 1;
        deg[edge.v] += 1;
    }
    return deg;
}

bool two_matching(const Graph& g, const std::vector<EdgeId>& subset)
{
    const auto deg = degrees(g, subset);
    return std::all_of(deg.begin(), deg.end(), [](int d) { return d <= 2; });
}

bool contains_listed_triangle(const std::vector<EdgeId>& subset, const TriangleSet& ts)
{
    const std::set<EdgeId> in(subset.begin(), subset.end());
    return std::any_of(ts.begin(), ts.end(), [&](const Triangle& t) {
        return in.count(t.edges[0]) && in.count(t.edges[1]) && in.count(t.edges[2]);
    });
}

bool feasible(const Graph& g, const TriangleSet& ts, const std::vector<EdgeId>& subset)
{
    return two_matching(g, subset) && !contains_listed_triangle(subset, ts);
}

std::vector<std::array<Vertex, 3>> triangle_triples(const Graph& g)
{
    const auto n = g.vertex_count();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& e : g.edges()) {
        adj[e.u][e.v] = adj[e.v][e.u] = true;
    }
    std::vector<std::array<Vertex, 3>> out;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            for (Vertex c = b + 1; c < n; ++c) {
                if (adj[a][b] && adj[b][c] && adj[a][c]) {
                    out.push_back({a, b, c});
                }
            }
        }
    }
    return out;
}

std::size_t optimum(const Graph& g, const TriangleSet& ts)
{
    std::size_t best = 0;
    std::vector<EdgeId> chosen;
    std::function<void(EdgeId)> rec = [&](EdgeId e) {
        if (!feasible(g, ts, chosen)) {
            return;
        }
        best = std::max(best, chosen.size());
        if (chosen.size() + (g.edge_count() - e) <= best) {
            return;
        }
        for (EdgeId f = e; f < g.edge_count(); ++f) {
            chosen.push_back(f);
            rec(f + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return best;
}

std::vector<std::vector<EdgeId>> all_feasible(const Graph& g, const TriangleSet& ts)
{
    std::vector<std::vector<EdgeId>> out;
    std::vector<EdgeId> chosen;
    std::function<void(EdgeId)> rec = [&](EdgeId e) {
        if (e == g.edge_count()) {
            out.push_back(chosen);
            return;
        }
        rec(e + 1);
        chosen.push_back(e);
        if (feasible(g, ts, chosen)) {
            rec(e + 1);
        }
        chosen.pop_back();
    };
    rec(0);
    return out;
}

std::vector<EdgeId> xor_sets(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b)
{
    std::vector<EdgeId> sa(a), sb(b), out;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  std::back_inserter(out));
    return out;
}

std::vector<EdgeId> members(const EdgeSubset& s)
{
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < s.universe(); ++e) {
        if (s.contains(e)) {
            out.push_back(e);
        }
    }
    return out;
}

bool improving_trail_exists(const Graph& g, const TriangleSet& ts, const std::vector<EdgeId>& apx,
                            std::size_t max_len, bool alternating_family)
{
    const std::set<EdgeId> in(apx.begin(), apx.end());
    std::vector<std::vector<EdgeId>> incident(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edges()[e];
        incident[edge.u].push_back(e);
        if (!edge.is_loop()) {
            incident[edge.v].push_back(e);
        }
    }
    std::vector<EdgeId> steps;
    std::vector<bool> used(g.edge_count(), false);

    const auto improves = [&] {
        if (alternating_family && (steps.size() % 2 == 0 || in.count(steps.back()))) {
            return false;
        }
        const auto next = xor_sets(apx, steps);
        return next.size() > apx.size() && feasible(g, ts, next);
    };

    std::function<bool(Vertex)> dfs = [&](Vertex at) {
        if (!steps.empty() && improves()) {
            return true;
        }
        if (steps.size() == max_len) {
            return false;
        }
        for (const auto e : incident[at]) {
            if (used[e]) {
                continue;
            }
            if (alternating_family) {
                const bool want_outside = steps.size() % 2 == 0;
                if (want_outside == (in.count(e) > 0)) {
                    continue;
                }
            }
            used[e] = true;
            steps.push_back(e);
            const bool found = dfs(g.edges()[e].other(at));
            steps.pop_back();
            used[e] = false;
            if (found) {
                return true;
            }
        }
        return false;
    };

    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (dfs(v)) {
            return true;
        }
    }
    return false;
}

std::vector<Graph> graph_representatives(std::size_t n)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            index[u][v] = index[v][u] = static_cast<int>(pairs.size());
            pairs.emplace_back(u, v);
        }
    }
    std::vector<std::vector<int>> images;
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    do {
        std::vector<int> image(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            image[i] = index[perm[pairs[i].first]][perm[pairs[i].second]];
        }
        images.push_back(std::move(image));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<Graph> out;
    const std::uint32_t end = std::uint32_t{1} << pairs.size();
    for (std::uint32_t mask = 0; mask < end; ++mask) {
        bool canonical = true;
        for (const auto& image : images) {
            std::uint32_t permuted = 0;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if ((mask >> i) & 1u) {
                    permuted |= std::uint32_t{1} << image[i];
                }
            }
            if (permuted < mask) {
                canonical = false;
                break;
            }
        }
        if (!canonical) {
            continue;
        }
        Graph g(n);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if ((mask >> i) & 1u) {
                g.add_edge(pairs[i].first, pairs[i].second);
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

namespace {

enum class Side { Neither, First, Second, Both };

struct Membership {
    std::set<EdgeId> a1;
    std::set<EdgeId> a2;

    Side side(EdgeId e) const
    {
        const bool x = a1.count(e) > 0;
        const bool y = a2.count(e) > 0;
        return x && y ? Side::Both : x ? Side::First : y ? Side::Second : Side::Neither;
    }
};

std::optional<EdgeId> edge_of(const Graph& g, Vertex a, Vertex b)
{
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edges()[e];
        if ((edge.u == a && edge.v == b) || (edge.u == b && edge.v == a)) {
            return e;
        }
    }
    return std::nullopt;
}

Side side_between(const Graph& g, const Membership& m, Vertex a, Vertex b)
{
    const auto e = edge_of(g, a, b);
    return e ? m.side(*e) : Side::Neither;
}

// Vertex of t opposite the single edge of t on side `minor`; u2, u3 are the
// ends of that edge.
std::array<Vertex, 3> roles(const Graph& g, const Triangle& t, const Membership& m, Side minor)
{
    for (const auto e : t.edges) {
        if (m.side(e) == minor) {
            const auto& edge = g.edges()[e];
            for (const auto v : t.vertices) {
                if (v != edge.u && v != edge.v) {
                    return {v, edge.u, edge.v};
                }
            }
        }
    }
    return {0, 0, 0};
}

// Listed triangle {x, u2, u3}, x != u1, with x u2 and u3 x on `side`'s matching.
bool has_twin(const Graph& g, const TriangleSet& ts, const std::set<EdgeId>& side, Vertex u1,
              Vertex u2, Vertex u3)
{
    for (const auto& t : ts) {
        if (!t.has_vertex(u2) || !t.has_vertex(u3) || t.has_vertex(u1)) {
            continue;
        }
        Vertex x = 0;
        for (const auto v : t.vertices) {
            if (v != u2 && v != u3) {
                x = v;
            }
        }
        const auto e1 = edge_of(g, x, u2);
        const auto e2 = edge_of(g, u3, x);
        if (side.count(*e1) && side.count(*e2)) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::pair<CaseTag, Triangle> expected_case(const Graph& g, const TriangleSet& ts,
                                           const std::vector<EdgeId>& a1,
                                           const std::vector<EdgeId>& a2)
{
    const Membership m{{a1.begin(), a1.end()}, {a2.begin(), a2.end()}};
    const auto count = [&](const Triangle& t, Side s) {
        return std::count_if(t.edges.begin(), t.edges.end(),
                             [&](EdgeId e) { return m.side(e) == s; });
    };

    for (const auto& t : ts) {
        if (count(t, Side::Neither) > 0) {
            return {CaseTag::Case1, t};
        }
    }
    for (const auto& t : ts) {
        if (count(t, Side::First) == 1 && count(t, Side::Second) == 1 && count(t, Side::Both) == 1) {
            // u1 u2 first-only, u2 u3 shared, u3 u1 second-only.
            const auto r = roles(g, t, m, Side::Both);
            const bool u2_first = side_between(g, m, r[0], r[1]) == Side::First;
            const Vertex a = u2_first ? r[1] : r[2];
            const Vertex b = u2_first ? r[2] : r[1];
            for (Vertex x = 0; x < g.vertex_count(); ++x) {
                if (side_between(g, m, x, a) == Side::Second
                    && side_between(g, m, b, x) == Side::First) {
                    return {CaseTag::Case2a, t};
                }
            }
            return {CaseTag::Case2b, t};
        }
    }
    for (const auto& t : ts) {
        if (count(t, Side::First) == 2 && count(t, Side::Second) == 1) {
            const auto [u1, u2, u3] = roles(g, t, m, Side::Second);
            if (!has_twin(g, ts, m.a1, u1, u2, u3)) {
                return {CaseTag::Case3, t};
            }
        }
        if (count(t, Side::First) == 1 && count(t, Side::Second) == 2) {
            const auto [u1, u2, u3] = roles(g, t, m, Side::First);
            if (!has_twin(g, ts, m.a2, u1, u2, u3)) {
                return {CaseTag::Case3Sym, t};
            }
        }
    }
    for (const auto& t : ts) {
        if ((count(t, Side::First) == 2 && count(t, Side::Second) == 1)
            || (count(t, Side::First) == 1 && count(t, Side::Second) == 2)) {
            return {CaseTag::Case4, t};
        }
    }
    return {CaseTag::Case1, Triangle{}};
}

bool partition_sound(const Graph& g, const TriangleSet& ts, const std::vector<EdgeId>& a1,
                     const std::vector<EdgeId>& a2, const std::vector<Trail>& trails)
{
    const auto ground = xor_sets(a1, a2);
    const std::set<EdgeId> in_a1(a1.begin(), a1.end());
    std::vector<EdgeId> seen;
    for (const auto& p : trails) {
        if (p.steps.empty() || p.walk.size() != p.steps.size() + 1) {
            return false;
        }
        for (std::size_t i = 0; i < p.steps.size(); ++i) {
            const auto& edge = g.edges()[p.steps[i]];
            const bool joins = (edge.u == p.walk[i] && edge.v == p.walk[i + 1])
                               || (edge.v == p.walk[i] && edge.u == p.walk[i + 1]);
            if (!joins) {
                return false;
            }
            if (i > 0 && (in_a1.count(p.steps[i]) > 0) == (in_a1.count(p.steps[i - 1]) > 0)) {
                return false;
            }
        }
        seen.insert(seen.end(), p.steps.begin(), p.steps.end());
        if (!feasible(g, ts, xor_sets(a1, p.steps)) || !feasible(g, ts, xor_sets(a2, p.steps))) {
            return false;
        }
    }
    std::sort(seen.begin(), seen.end());
    return seen == ground;
}

bool concatenable_pair_exists(const std::vector<EdgeId>& a1, const std::vector<Trail>& trails)
{
    const std::set<EdgeId> in_a1(a1.begin(), a1.end());
    struct End {
        std::size_t trail;
        Vertex at;
        bool first;
    };
    std::vector<End> ends;
    for (std::size_t i = 0; i < trails.size(); ++i) {
        const auto& p = trails[i];
        ends.push_back({i, p.walk.front(), in_a1.count(p.steps.front()) > 0});
        ends.push_back({i, p.walk.back(), in_a1.count(p.steps.back()) > 0});
    }
    for (const auto& x : ends) {
        for (const auto& y : ends) {
            if (x.trail != y.trail && x.at == y.at && x.first != y.first) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace tfm::oracle
