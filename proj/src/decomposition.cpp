#include "tfm/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

namespace tfm {

std::string_view to_string(CaseTag tag)
{
    switch (tag) {
    case CaseTag::Case1:
        return "case1";
    case CaseTag::Case2a:
        return "case2a";
    case CaseTag::Case2b:
        return "case2b";
    case CaseTag::Case3:
        return "case3";
    case CaseTag::Case3Sym:
        return "case3sym";
    case CaseTag::Case4:
        return "case4";
    }
    return "unknown";
}

namespace {

enum class Side { Neither, First, Second, Both };

Side side_of(EdgeId e, const EdgeSubset& a1, const EdgeSubset& a2)
{
    const bool in1 = a1.contains(e);
    const bool in2 = a2.contains(e);
    if (in1 && in2) {
        return Side::Both;
    }
    if (in1) {
        return Side::First;
    }
    return in2 ? Side::Second : Side::Neither;
}

EdgeId edge_between(const Graph& g, Vertex a, Vertex b)
{
    const auto e = g.find_edge(a, b);
    if (!e) {
        throw DefectError("expected edge " + std::to_string(a) + "-" + std::to_string(b));
    }
    return *e;
}

Vertex opposite_vertex(const Graph& g, const Triangle& t, EdgeId e)
{
    const auto& edge = g.edge(e);
    for (const auto v : t.vertices) {
        if (!edge.touches(v)) {
            return v;
        }
    }
    throw DefectError("edge has no opposite vertex in triangle");
}

using TripleSet = std::set<std::array<Vertex, 3>>;

TripleSet triples_of(const TriangleSet& ts)
{
    TripleSet out;
    for (const auto& t : ts) {
        out.insert(t.vertices);
    }
    return out;
}

bool listed(const TripleSet& triples, Vertex a, Vertex b, Vertex c)
{
    std::array<Vertex, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    return triples.contains(key);
}

// A vertex x != u1 forming a listed triangle x u2 u3 with xu2, u3x in side.
std::optional<Vertex> find_twin(const Graph& g, const TripleSet& triples, const EdgeSubset& side,
                                Vertex u1, Vertex u2, Vertex u3)
{
    for (const auto e : g.incident(u2)) {
        const auto& edge = g.edge(e);
        if (edge.is_loop() || !side.contains(e)) {
            continue;
        }
        const Vertex x = edge.other(u2);
        if (x == u1 || x == u3) {
            continue;
        }
        const auto back = g.find_edge(u3, x);
        if (back && side.contains(*back) && listed(triples, x, u2, u3)) {
            return x;
        }
    }
    return std::nullopt;
}

// Directed view of a trail step, used while lifting and splicing.
struct Step {
    EdgeId edge;
    Vertex from;
    Vertex to;
};

std::vector<Step> directed(const Trail& p)
{
    std::vector<Step> out;
    out.reserve(p.steps.size());
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        out.push_back(Step{p.steps[i], p.walk[i], p.walk[i + 1]});
    }
    return out;
}

Trail undirected(const std::vector<Step>& steps)
{
    Trail out;
    if (steps.empty()) {
        return out;
    }
    out.walk.push_back(steps.front().from);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0 && steps[i - 1].to != steps[i].from) {
            throw DefectError("lifted trail has a gap at step " + std::to_string(i));
        }
        out.steps.push_back(steps[i].edge);
        out.walk.push_back(steps[i].to);
    }
    return out;
}

// Certificate of one trail against (A1, A2, ts); used to pick among bridge
// insertion points.
bool trail_acceptable(const Graph& g, const TriangleSet& ts, const EdgeSubset& a1,
                      const EdgeSubset& a2, const Trail& p)
{
    if (!is_valid_trail(g, p)) {
        return false;
    }
    try {
        if (!is_alternating_trail(p, a1, a2)) {
            return false;
        }
    }
    catch (const ContractViolation&) {
        return false;
    }
    const auto r1 = apply_trail(a1, p);
    const auto r2 = apply_trail(a2, p);
    return is_two_matching(g, r1) && is_two_matching(g, r2) && is_t_free(r1, ts)
        && is_t_free(r2, ts);
}

struct Context {
    const DecomposeOptions& options;
    DecompositionStats& stats;
    std::size_t depth = 0;

    void count(const std::string& branch) { ++stats.branches[branch]; }
};

std::vector<Trail> solve(const Graph& g, const TriangleSet& ts, const EdgeSubset& a1,
                         const EdgeSubset& a2, Context& ctx);

// Images of triangles under a contraction; triangles that lose an edge or
// collapse are dropped, duplicates are merged.
TriangleSet project_triangles(const TriangleSet& ts, const Contraction& c)
{
    TriangleSet out;
    for (const auto& t : ts) {
        if (std::any_of(t.edges.begin(), t.edges.end(),
                        [&](EdgeId e) { return c.edges.forward[e] == kNoEdge; })) {
            continue;
        }
        const auto image = make_triangle(c.graph, c.vertex_map[t.vertices[0]],
                                         c.vertex_map[t.vertices[1]],
                                         c.vertex_map[t.vertices[2]]);
        if (!image) {
            continue;
        }
        std::array<EdgeId, 3> mapped{c.edges.forward[t.edges[0]], c.edges.forward[t.edges[1]],
                                     c.edges.forward[t.edges[2]]};
        std::sort(mapped.begin(), mapped.end());
        if (mapped != image->edges) {
            continue;
        }
        if (std::find(out.begin(), out.end(), *image) == out.end()) {
            out.push_back(*image);
        }
    }
    return out;
}

// Case 2: contract u2u3, recurse, then map trails back. In Case 2a the
// closed trail u1 u2 u1' u3 u1 is added; in Case 2b the bridge u2 u1 u3 is
// spliced into the unique trail meeting the contracted vertex.
std::vector<Trail> reduce_by_contraction(const Graph& g, const TriangleSet& ts,
                                         const EdgeSubset& a1, const EdgeSubset& a2,
                                         const CaseMatch& m, Context& ctx)
{
    const Vertex u1 = m.u1;
    const Vertex u2 = m.u2;
    const Vertex u3 = m.u3;
    const EdgeId e12 = edge_between(g, u1, u2);
    const EdgeId e23 = edge_between(g, u2, u3);
    const EdgeId e31 = edge_between(g, u3, u1);
    const bool twin = m.tag == CaseTag::Case2a;

    std::vector<EdgeId> covered{e12, e23, e31};
    EdgeId e1p2 = kNoEdge;
    EdgeId e31p = kNoEdge;
    if (twin) {
        e1p2 = edge_between(g, *m.u1_prime, u2);
        e31p = edge_between(g, u3, *m.u1_prime);
        covered.push_back(e1p2);
        covered.push_back(e31p);
    }
    const TriangleSet kept = without(ts, triangles_incident(ts, covered));

    const Contraction c = contract_pair(g, u2, u3);
    EdgeSubset b1(c.graph.edge_count());
    EdgeSubset b2(c.graph.edge_count());
    for (const auto e : a1.members()) {
        if (e != e23) {
            b1.insert(c.edges.forward[e]);
        }
    }
    for (const auto e : a2.members()) {
        if (e != e23) {
            b2.insert(c.edges.forward[e]);
        }
    }

    ++ctx.depth;
    const auto sub = solve(c.graph, project_triangles(kept, c), b1, b2, ctx);
    --ctx.depth;

    const EdgeSubset delta = sym_diff(a1, a2);
    const Vertex merged = c.merged;
    std::vector<Vertex> original(c.graph.vertex_count(), 0);
    for (Vertex w = 0; w < g.vertex_count(); ++w) {
        if (w != u2 && w != u3) {
            original[c.vertex_map[w]] = w;
        }
    }

    // Endpoint of an original edge lying on the contracted pair.
    const auto pair_end = [&](EdgeId e) {
        const auto& edge = g.edge(e);
        return edge.touches(u2) ? u2 : u3;
    };

    std::vector<std::vector<Step>> lifted;
    std::vector<std::size_t> touching;
    lifted.reserve(sub.size());
    for (const auto& q : sub) {
        std::vector<Step> steps;
        bool touches_merged = false;
        for (std::size_t i = 0; i < q.steps.size(); ++i) {
            const auto& pre = c.edges.inverse[q.steps[i]];
            EdgeId chosen = kNoEdge;
            for (const auto e : pre) {
                if (delta.contains(e)) {
                    if (chosen != kNoEdge) {
                        throw DefectError("contracted edge has two preimages in A1 xor A2");
                    }
                    chosen = e;
                }
            }
            if (chosen == kNoEdge) {
                throw DefectError("contracted edge has no preimage in A1 xor A2");
            }
            const Vertex a = q.walk[i];
            const Vertex b = q.walk[i + 1];
            touches_merged = touches_merged || a == merged || b == merged;
            const Vertex from = a == merged ? pair_end(chosen) : original[a];
            const Vertex to = b == merged ? (a == b ? from : pair_end(chosen)) : original[b];
            steps.push_back(Step{chosen, from, to});
        }
        if (touches_merged) {
            touching.push_back(lifted.size());
        }
        lifted.push_back(std::move(steps));
    }

    std::vector<Trail> out;
    if (twin) {
        if (!touching.empty()) {
            throw DefectError("case 2a: a recursed trail meets the contracted vertex");
        }
        for (const auto& steps : lifted) {
            out.push_back(undirected(steps));
        }
        out.push_back(undirected({Step{e12, u1, u2}, Step{e1p2, u2, *m.u1_prime},
                                  Step{e31p, *m.u1_prime, u3}, Step{e31, u3, u1}}));
        ctx.count("case2a");
        return out;
    }

    if (touching.size() > 1) {
        throw DefectError("case 2b: more than one trail meets the contracted vertex");
    }
    const auto bridge = [&](Vertex from) {
        const Vertex to = from == u2 ? u3 : u2;
        return std::vector<Step>{Step{from == u2 ? e12 : e31, from, u1},
                                 Step{to == u2 ? e12 : e31, u1, to}};
    };

    if (touching.empty()) {
        for (const auto& steps : lifted) {
            out.push_back(undirected(steps));
        }
        out.push_back(undirected(bridge(u2)));
        ctx.count("case2b.bridge_alone");
        return out;
    }

    const auto& base = lifted[touching.front()];
    std::vector<std::vector<Step>> candidates;
    for (std::size_t i = 1; i < base.size(); ++i) {
        if (base[i - 1].to != base[i].from) {
            auto joined = std::vector<Step>(base.begin(), base.begin() + static_cast<long>(i));
            const auto mid = bridge(base[i - 1].to);
            joined.insert(joined.end(), mid.begin(), mid.end());
            joined.insert(joined.end(), base.begin() + static_cast<long>(i), base.end());
            candidates.push_back(std::move(joined));
        }
    }
    if (candidates.size() > 1) {
        throw DefectError("case 2b: lifted trail breaks at more than one place");
    }
    const auto& image_trail = sub[touching.front()];
    if (candidates.empty() && image_trail.walk.back() == merged) {
        auto joined = base;
        const auto tail = bridge(base.back().to);
        joined.insert(joined.end(), tail.begin(), tail.end());
        candidates.push_back(std::move(joined));
    }
    if (candidates.empty() && image_trail.walk.front() == merged) {
        const Vertex start = base.front().from;
        auto joined = bridge(start == u2 ? u3 : u2);
        joined.insert(joined.end(), base.begin(), base.end());
        candidates.push_back(std::move(joined));
    }
    if (candidates.empty()) {
        throw DefectError("case 2b: no insertion point for the bridge");
    }

    std::size_t pick = 0;
    if (candidates.size() > 1) {
        ++ctx.stats.ambiguous_insertions;
        pick = candidates.size();
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (trail_acceptable(g, ts, a1, a2, undirected(candidates[k]))) {
                pick = k;
                break;
            }
        }
        if (pick == candidates.size()) {
            throw DefectError("case 2b: no bridge insertion point yields a valid trail");
        }
    }
    for (std::size_t k = 0; k < lifted.size(); ++k) {
        out.push_back(undirected(k == touching.front() ? candidates[pick] : lifted[k]));
    }
    ctx.count("case2b.spliced");
    return out;
}

std::size_t find_step(const std::vector<Trail>& trails, EdgeId e, std::size_t& position)
{
    for (std::size_t k = 0; k < trails.size(); ++k) {
        const auto& steps = trails[k].steps;
        const auto it = std::find(steps.begin(), steps.end(), e);
        if (it != steps.end()) {
            position = static_cast<std::size_t>(it - steps.begin());
            return k;
        }
    }
    throw DefectError("edge " + std::to_string(e) + " missing from recursed partition");
}

// Replaces step `position` of trail p with the given directed steps, which
// must start and end where the replaced step did.
Trail splice(const Trail& p, std::size_t position, const std::vector<Step>& replacement)
{
    auto steps = directed(p);
    std::vector<Step> joined(steps.begin(), steps.begin() + static_cast<long>(position));
    joined.insert(joined.end(), replacement.begin(), replacement.end());
    joined.insert(joined.end(), steps.begin() + static_cast<long>(position) + 1, steps.end());
    return undirected(joined);
}

void check_ids(const Graph& g, const std::vector<Trail>& trails)
{
    for (const auto& p : trails) {
        for (const auto e : p.steps) {
            if (e >= g.edge_count()) {
                throw DefectError("auxiliary edge survived lifting");
            }
        }
    }
}

// Case 3 (b1 = A1) and Case 3' (b1 = A2): replace u1u2, u3u1 by u2u3 and a
// self-loop at u1 in b1.
std::vector<Trail> reduce_by_self_loop(const Graph& g, const TriangleSet& ts,
                                       const EdgeSubset& b1, const EdgeSubset& b2,
                                       const CaseMatch& m, Context& ctx, const std::string& name)
{
    const Vertex u1 = m.u1;
    const Vertex u2 = m.u2;
    const Vertex u3 = m.u3;
    const EdgeId e12 = edge_between(g, u1, u2);
    const EdgeId e23 = edge_between(g, u2, u3);
    const EdgeId e31 = edge_between(g, u3, u1);

    const std::array<EdgeId, 2> pair{e12, e31};
    const TriangleSet kept = without(ts, triangles_incident(ts, pair));
    const Extension ext = ensure_self_loop(g, u1);
    const EdgeId loop = ext.edge;

    EdgeSubset c1 = b1.rebound(ext.graph.edge_count());
    EdgeSubset c2 = b2.rebound(ext.graph.edge_count());
    c1.erase(e12);
    c1.erase(e31);
    c1.insert(e23);
    c1.insert(loop);

    ++ctx.depth;
    auto trails = solve(ext.graph, kept, c1, c2, ctx);
    --ctx.depth;

    if (c2.contains(loop)) {
        trails.push_back(Trail::from_steps(g, u1, {loop, e12, e23, e31}));
        ctx.count(name + ".closed");
    }
    else {
        std::size_t pos = 0;
        const auto k = find_step(trails, loop, pos);
        trails[k] = splice(trails[k], pos, {Step{e12, u1, u2}, Step{e23, u2, u3}, Step{e31, u3, u1}});
        ctx.count(name + ".spliced");
    }
    check_ids(g, trails);
    return trails;
}

// Case 4 with b1 the side holding both twin triangles' outer edges.
std::vector<Trail> reduce_by_twin(const Graph& g, const TriangleSet& ts, const EdgeSubset& b1,
                                  const EdgeSubset& b2, const CaseMatch& m, Context& ctx)
{
    const Vertex u1 = m.u1;
    const Vertex u2 = m.u2;
    const Vertex u3 = m.u3;
    const Vertex u1p = *m.u1_prime;
    const EdgeId e12 = edge_between(g, u1, u2);
    const EdgeId e23 = edge_between(g, u2, u3);
    const EdgeId e31 = edge_between(g, u3, u1);
    const EdgeId e1p2 = edge_between(g, u1p, u2);
    const EdgeId e31p = edge_between(g, u3, u1p);

    const std::array<EdgeId, 5> both{e12, e23, e31, e1p2, e31p};
    const TriangleSet touched = triangles_incident(ts, both);
    for (const auto& t : touched) {
        for (const auto v : t.vertices) {
            if (v != u1 && v != u2 && v != u3 && v != u1p) {
                throw DefectError("case 4: triangle of T(T u T') leaves {u1, u2, u3, u1'}");
            }
        }
    }
    const TriangleSet kept = without(ts, touched);
    const Extension ext = ensure_edge(g, u1, u1p);
    const EdgeId chord = ext.edge;

    EdgeSubset c1 = b1.rebound(ext.graph.edge_count());
    EdgeSubset c2 = b2.rebound(ext.graph.edge_count());
    c1.erase(e31);
    c1.erase(e1p2);
    c1.insert(e23);
    c1.insert(chord);

    ++ctx.depth;
    auto trails = solve(ext.graph, kept, c1, c2, ctx);
    --ctx.depth;

    if (c2.contains(chord)) {
        trails.push_back(Trail::from_steps(g, u1, {e31, e23, e1p2, chord}));
        ctx.count("case4.closed");
    }
    else {
        std::size_t pos = 0;
        const auto k = find_step(trails, chord, pos);
        const bool forward = trails[k].walk[pos] == u1;
        std::vector<Step> path{Step{e31, u1, u3}, Step{e23, u3, u2}, Step{e1p2, u2, u1p}};
        if (!forward) {
            path = {Step{e1p2, u1p, u2}, Step{e23, u2, u3}, Step{e31, u3, u1}};
        }
        trails[k] = splice(trails[k], pos, path);
        ctx.count("case4.spliced");
    }
    check_ids(g, trails);
    return trails;
}

std::vector<Trail> solve(const Graph& g, const TriangleSet& ts, const EdgeSubset& a1,
                         const EdgeSubset& a2, Context& ctx)
{
    ctx.stats.max_depth = std::max(ctx.stats.max_depth, ctx.depth);
    std::vector<Trail> trails;
    if (ts.empty()) {
        trails = decompose_base(g, a1, a2).trails;
        ctx.count("base");
    }
    else {
        const CaseMatch m = *classify(g, ts, a1, a2);
        switch (m.tag) {
        case CaseTag::Case1: {
            ++ctx.depth;
            trails = solve(g, without(ts, {m.t}), a1, a2, ctx);
            --ctx.depth;
            ctx.count("case1");
            break;
        }
        case CaseTag::Case2a:
        case CaseTag::Case2b:
            trails = reduce_by_contraction(g, ts, a1, a2, m, ctx);
            break;
        case CaseTag::Case3:
            trails = reduce_by_self_loop(g, ts, a1, a2, m, ctx, "case3");
            break;
        case CaseTag::Case3Sym:
            trails = reduce_by_self_loop(g, ts, a2, a1, m, ctx, "case3sym");
            break;
        case CaseTag::Case4:
            trails = m.swapped ? reduce_by_twin(g, ts, a2, a1, m, ctx)
                               : reduce_by_twin(g, ts, a1, a2, m, ctx);
            break;
        }
    }

    if (ctx.options.check_levels) {
        const auto cert = verify_decomposition(g, ts, a1, a2, TrailPartition{trails, sym_diff(a1, a2)});
        if (!cert.partition_valid) {
            throw DefectError("decomposition level " + std::to_string(ctx.depth)
                              + " failed its certificate");
        }
    }
    return trails;
}

}  // namespace

TrailPartition decompose_base(const Graph& g, const EdgeSubset& a1, const EdgeSubset& a2)
{
    if (!is_two_matching(g, a1) || !is_two_matching(g, a2)) {
        throw PreconditionError("decompose_base: inputs must be 2-matchings");
    }
    TrailPartition part;
    part.ground = sym_diff(a1, a2);

    struct Piece {
        std::deque<EdgeId> steps;
        std::deque<Vertex> walk;
        bool alive = true;
    };
    struct End {
        std::size_t piece;
        bool front;
        bool first_side;
    };

    std::vector<Piece> pieces;
    for (const auto e : part.ground.members()) {
        const auto& edge = g.edge(e);
        pieces.push_back(Piece{{e}, {edge.u, edge.v}, true});
    }

    const auto reverse = [](Piece& p) {
        std::reverse(p.steps.begin(), p.steps.end());
        std::reverse(p.walk.begin(), p.walk.end());
    };

    std::vector<End> ends;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        for (;;) {
            ends.clear();
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                const auto& p = pieces[i];
                if (!p.alive) {
                    continue;
                }
                if (p.walk.front() == v) {
                    ends.push_back(End{i, true, a1.contains(p.steps.front())});
                }
                if (p.walk.back() == v) {
                    ends.push_back(End{i, false, a1.contains(p.steps.back())});
                }
            }
            std::optional<std::pair<End, End>> pair;
            for (std::size_t x = 0; x < ends.size() && !pair; ++x) {
                for (std::size_t y = x + 1; y < ends.size(); ++y) {
                    if (ends[x].piece != ends[y].piece
                        && ends[x].first_side != ends[y].first_side) {
                        pair = std::make_pair(ends[x], ends[y]);
                        break;
                    }
                }
            }
            if (!pair) {
                break;
            }
            auto& p = pieces[pair->first.piece];
            auto& q = pieces[pair->second.piece];
            if (pair->first.front) {
                reverse(p);
            }
            if (!pair->second.front) {
                reverse(q);
            }
            p.steps.insert(p.steps.end(), q.steps.begin(), q.steps.end());
            p.walk.insert(p.walk.end(), q.walk.begin() + 1, q.walk.end());
            q.alive = false;
        }
    }

    for (auto& p : pieces) {
        if (p.alive) {
            Trail t;
            t.steps.assign(p.steps.begin(), p.steps.end());
            t.walk.assign(p.walk.begin(), p.walk.end());
            part.trails.push_back(std::move(t));
        }
    }
    return part;
}

bool has_concatenable_pair(const TrailPartition& part, const EdgeSubset& a1, const EdgeSubset&)
{
    struct End {
        Vertex at;
        bool first_side;
    };
    const auto ends_of = [&](const Trail& p) {
        return std::array<End, 2>{End{p.walk.front(), a1.contains(p.steps.front())},
                                  End{p.walk.back(), a1.contains(p.steps.back())}};
    };
    for (std::size_t i = 0; i < part.trails.size(); ++i) {
        if (part.trails[i].empty()) {
            continue;
        }
        for (std::size_t j = i + 1; j < part.trails.size(); ++j) {
            if (part.trails[j].empty()) {
                continue;
            }
            for (const auto& x : ends_of(part.trails[i])) {
                for (const auto& y : ends_of(part.trails[j])) {
                    if (x.at == y.at && x.first_side != y.first_side) {
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

std::optional<CaseMatch> classify(const Graph& g, const TriangleSet& ts, const EdgeSubset& a1,
                                  const EdgeSubset& a2)
{
    if (ts.empty()) {
        return std::nullopt;
    }

    for (const auto& t : ts) {
        for (const auto e : t.edges) {
            if (side_of(e, a1, a2) == Side::Neither) {
                CaseMatch m;
                m.tag = CaseTag::Case1;
                m.t = t;
                m.u1 = t.vertices[0];
                m.u2 = t.vertices[1];
                m.u3 = t.vertices[2];
                return m;
            }
        }
    }

    struct Pattern {
        std::vector<EdgeId> first;
        std::vector<EdgeId> second;
        std::vector<EdgeId> both;
    };
    const auto pattern = [&](const Triangle& t) {
        Pattern p;
        for (const auto e : t.edges) {
            switch (side_of(e, a1, a2)) {
            case Side::First:
                p.first.push_back(e);
                break;
            case Side::Second:
                p.second.push_back(e);
                break;
            case Side::Both:
                p.both.push_back(e);
                break;
            case Side::Neither:
                break;
            }
        }
        return p;
    };

    for (const auto& t : ts) {
        const auto p = pattern(t);
        if (p.first.size() != 1 || p.second.size() != 1 || p.both.size() != 1) {
            continue;
        }
        CaseMatch m;
        m.t = t;
        m.u1 = opposite_vertex(g, t, p.both[0]);
        m.u2 = g.edge(p.first[0]).other(m.u1);
        m.u3 = g.edge(p.second[0]).other(m.u1);
        m.tag = CaseTag::Case2b;
        for (const auto e : g.incident(m.u2)) {
            const auto& edge = g.edge(e);
            if (edge.is_loop() || side_of(e, a1, a2) != Side::Second) {
                continue;
            }
            const Vertex x = edge.other(m.u2);
            if (x == m.u1 || x == m.u3) {
                continue;
            }
            const auto back = g.find_edge(m.u3, x);
            if (back && side_of(*back, a1, a2) == Side::First) {
                m.tag = CaseTag::Case2a;
                m.u1_prime = x;
                m.t_prime = make_triangle(g, x, m.u2, m.u3);
                break;
            }
        }
        return m;
    }

    const TripleSet triples = triples_of(ts);

    // Roles for the two-plus-one pattern: the pair on `major` meets at u1.
    const auto roles = [&](const Triangle& t, const std::vector<EdgeId>& minor) {
        CaseMatch m;
        m.t = t;
        m.u1 = opposite_vertex(g, t, minor[0]);
        const auto& edge = g.edge(minor[0]);
        m.u2 = std::min(edge.u, edge.v);
        m.u3 = std::max(edge.u, edge.v);
        return m;
    };

    for (const auto& t : ts) {
        const auto p = pattern(t);
        if (p.first.size() == 2 && p.second.size() == 1) {
            auto m = roles(t, p.second);
            if (!find_twin(g, triples, a1, m.u1, m.u2, m.u3)) {
                m.tag = CaseTag::Case3;
                return m;
            }
        }
        else if (p.first.size() == 1 && p.second.size() == 2) {
            auto m = roles(t, p.first);
            if (!find_twin(g, triples, a2, m.u1, m.u2, m.u3)) {
                m.tag = CaseTag::Case3Sym;
                m.swapped = true;
                return m;
            }
        }
    }

    for (const auto& t : ts) {
        const auto p = pattern(t);
        const bool on_first = p.first.size() == 2 && p.second.size() == 1;
        const bool on_second = p.first.size() == 1 && p.second.size() == 2;
        if (!on_first && !on_second) {
            continue;
        }
        auto m = roles(t, on_first ? p.second : p.first);
        m.tag = CaseTag::Case4;
        m.swapped = on_second;
        m.u1_prime = find_twin(g, triples, on_first ? a1 : a2, m.u1, m.u2, m.u3);
        if (!m.u1_prime) {
            throw DefectError("classify: case 3 pattern without twin reached case 4");
        }
        m.t_prime = make_triangle(g, *m.u1_prime, m.u2, m.u3);
        return m;
    }

    throw DefectError("classify: no case applies; inputs are not T-free 2-matchings");
}

Decomposition decompose_tfree(const Graph& g, const TriangleSet& ts, const EdgeSubset& a1,
                              const EdgeSubset& a2, const DecomposeOptions& options)
{
    if (a1.universe() != g.edge_count() || a2.universe() != g.edge_count()) {
        throw PreconditionError("decompose_tfree: matchings are not bound to this graph");
    }
    for (const auto& t : ts) {
        const auto check = make_triangle(g, t.vertices[0], t.vertices[1], t.vertices[2]);
        if (!check || !(*check == t)) {
            throw PreconditionError("decompose_tfree: triangle list contains a non-triangle");
        }
    }
    if (!is_two_matching(g, a1)) {
        throw PreconditionError("decompose_tfree: A1 is not a 2-matching");
    }
    if (!is_two_matching(g, a2)) {
        throw PreconditionError("decompose_tfree: A2 is not a 2-matching");
    }
    if (!is_t_free(a1, ts)) {
        throw PreconditionError("decompose_tfree: A1 contains a listed triangle");
    }
    if (!is_t_free(a2, ts)) {
        throw PreconditionError("decompose_tfree: A2 contains a listed triangle");
    }

    Decomposition out;
    Context ctx{options, out.stats};
    out.partition.trails = solve(g, ts, a1, a2, ctx);
    out.partition.ground = sym_diff(a1, a2);
    out.certificate = verify_decomposition(g, ts, a1, a2, out.partition);
    if (!out.certificate.partition_valid) {
        throw DefectError("decompose_tfree produced an invalid partition");
    }
    return out;
}

DecompositionCertificate verify_decomposition(const Graph& g, const TriangleSet& ts,
                                              const EdgeSubset& a1, const EdgeSubset& a2,
                                              const TrailPartition& part)
{
    DecompositionCertificate cert;
    const auto delta = sym_diff(a1, a2);
    cert.ground_matches = part.ground == delta;

    std::vector<std::size_t> seen(g.edge_count(), 0);
    bool stray = false;
    bool all_ok = true;
    for (const auto& p : part.trails) {
        TrailCertificate tc;
        tc.walk_valid = !p.empty() && is_valid_trail(g, p);
        tc.within_ground = std::all_of(p.steps.begin(), p.steps.end(),
                                       [&](EdgeId e) { return delta.contains(e); });
        for (const auto e : p.steps) {
            if (e < seen.size()) {
                ++seen[e];
            }
            else {
                stray = true;
            }
        }
        if (tc.within_ground) {
            tc.is_alternating = is_alternating_trail(p, a1, a2);
            const auto r1 = apply_trail(a1, p);
            const auto r2 = apply_trail(a2, p);
            tc.a1_delta_valid = is_two_matching(g, r1) && is_t_free(r1, ts);
            tc.a2_delta_valid = is_two_matching(g, r2) && is_t_free(r2, ts);
        }
        all_ok = all_ok && tc.ok();
        cert.trails.push_back(tc);
    }

    cert.disjoint = !stray && std::all_of(seen.begin(), seen.end(), [](auto c) { return c <= 1; });
    cert.covers_ground = !stray;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if ((seen[e] > 0) != delta.contains(e)) {
            cert.covers_ground = false;
        }
    }
    cert.partition_valid = all_ok && cert.ground_matches && cert.disjoint && cert.covers_ground;
    return cert;
}

}  // namespace tfm
