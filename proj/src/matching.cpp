#include "tfm/matching.hpp"

#include <algorithm>
#include <string>

namespace tfm {

Trail Trail::reversed() const
{
    Trail out;
    out.steps.assign(steps.rbegin(), steps.rend());
    out.walk.assign(walk.rbegin(), walk.rend());
    return out;
}

Trail Trail::from_steps(const Graph& g, Vertex start, std::vector<EdgeId> steps)
{
    Trail out;
    if (steps.empty()) {
        return out;
    }
    out.walk.reserve(steps.size() + 1);
    out.walk.push_back(start);
    Vertex at = start;
    for (const auto e : steps) {
        const auto& edge = g.edge(e);
        if (!edge.touches(at)) {
            throw PreconditionError("step " + std::to_string(e) + " does not touch vertex "
                                    + std::to_string(at));
        }
        at = edge.other(at);
        out.walk.push_back(at);
    }
    out.steps = std::move(steps);
    return out;
}

bool is_valid_trail(const Graph& g, const Trail& p)
{
    if (p.steps.empty()) {
        return p.walk.empty();
    }
    if (p.walk.size() != p.steps.size() + 1) {
        return false;
    }
    std::vector<EdgeId> sorted = p.steps;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        return false;
    }
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        if (p.steps[i] >= g.edge_count()) {
            return false;
        }
        const auto& edge = g.edge(p.steps[i]);
        const auto a = p.walk[i];
        const auto b = p.walk[i + 1];
        if (!(edge == Edge{std::min(a, b), std::max(a, b)})) {
            return false;
        }
    }
    return true;
}

EdgeSubset edge_set(const Trail& p, std::size_t universe)
{
    return EdgeSubset(universe, p.steps);
}

bool is_two_matching(const Graph& g, const EdgeSubset& m)
{
    std::vector<std::uint8_t> deg(g.vertex_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!m.contains(e)) {
            continue;
        }
        const auto& edge = g.edge(e);
        if (edge.is_loop()) {
            deg[edge.u] += 2;
            if (deg[edge.u] > 2) {
                return false;
            }
        }
        else {
            if (++deg[edge.u] > 2 || ++deg[edge.v] > 2) {
                return false;
            }
        }
    }
    return true;
}

bool is_t_free(const EdgeSubset& m, const TriangleSet& ts)
{
    return std::none_of(ts.begin(), ts.end(), [&](const Triangle& t) {
        return m.contains(t.edges[0]) && m.contains(t.edges[1]) && m.contains(t.edges[2]);
    });
}

EdgeSubset sym_diff(const EdgeSubset& a, const EdgeSubset& b)
{
    if (a.universe() != b.universe()) {
        throw PreconditionError("sym_diff: edge subsets bound to different graphs");
    }
    EdgeSubset out(a.universe());
    for (EdgeId e = 0; e < a.universe(); ++e) {
        if (a.contains(e) != b.contains(e)) {
            out.insert(e);
        }
    }
    return out;
}

bool is_alternating_trail(const Trail& p, const EdgeSubset& a1, const EdgeSubset& a2)
{
    int previous = -1;
    bool alternating = true;
    for (const auto e : p.steps) {
        const bool in1 = a1.contains(e);
        const bool in2 = a2.contains(e);
        if (in1 == in2) {
            throw ContractViolation("edge " + std::to_string(e) + " is not in A1 xor A2");
        }
        const int side = in1 ? 1 : 2;
        if (side == previous) {
            alternating = false;
        }
        previous = side;
    }
    return alternating;
}

EdgeSubset apply_trail(const EdgeSubset& a, const Trail& p)
{
    EdgeSubset out = a;
    for (const auto e : p.steps) {
        out.toggle(e);
    }
    return out;
}

TriangleSet triangles_incident(const TriangleSet& ts, const EdgeSubset& f)
{
    TriangleSet out;
    for (const auto& t : ts) {
        if (f.contains(t.edges[0]) || f.contains(t.edges[1]) || f.contains(t.edges[2])) {
            out.push_back(t);
        }
    }
    return out;
}

TriangleSet triangles_incident(const TriangleSet& ts, std::span<const EdgeId> f)
{
    TriangleSet out;
    for (const auto& t : ts) {
        if (std::any_of(f.begin(), f.end(), [&](EdgeId e) { return t.has_edge(e); })) {
            out.push_back(t);
        }
    }
    return out;
}

TriangleSet without(const TriangleSet& ts, const TriangleSet& removed)
{
    TriangleSet out;
    for (const auto& t : ts) {
        if (std::find(removed.begin(), removed.end(), t) == removed.end()) {
            out.push_back(t);
        }
    }
    return out;
}

bool check_observation_1(const TriangleSet& ts, const EdgeSubset& m, const Triangle& t)
{
    const auto shared = std::count_if(t.edges.begin(), t.edges.end(),
                                      [&](EdgeId e) { return m.contains(e); });
    if (shared != 2) {
        throw PreconditionError("check_observation_1 requires |M cap T| = 2");
    }
    return is_t_free(m, triangles_incident(ts, std::span<const EdgeId>(t.edges)));
}

}  // namespace tfm
