#include "tfm/local_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tfm {

std::size_t SearchConfig::max_trail_length() const
{
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw PreconditionError("epsilon must lie in (0, 1]");
    }
    // Tolerance keeps e.g. 2 / 0.2 from landing just below 10.
    return static_cast<std::size_t>(std::floor(2.0 / epsilon + 1e-9));
}

namespace {

// Read-only data shared by every DFS over one solution.
struct SearchIndex {
    const Graph& g;
    const EdgeSubset& apx;
    std::vector<std::vector<std::uint32_t>> triangles_of_edge;
    const TriangleSet& ts;
    std::vector<std::uint8_t> apx_degree;

    SearchIndex(const Graph& graph, const TriangleSet& triangles, const EdgeSubset& solution)
        : g(graph), apx(solution), triangles_of_edge(graph.edge_count()), ts(triangles),
          apx_degree(graph.vertex_count(), 0)
    {
        for (std::uint32_t i = 0; i < ts.size(); ++i) {
            for (const auto e : ts[i].edges) {
                triangles_of_edge[e].push_back(i);
            }
        }
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            apx_degree[v] = static_cast<std::uint8_t>(degree(g, apx, v));
        }
    }
};

// Depth-limited DFS over alternating trails of one exact length. Holds the
// mutable per-thread state.
class TrailDfs {
public:
    explicit TrailDfs(const SearchIndex& index)
        : ix_(index), used_(index.g.edge_count(), 0), delta_(index.g.vertex_count(), 0)
    {
    }

    std::optional<Trail> from(Vertex start, std::size_t length)
    {
        if (ix_.apx_degree[start] >= 2) {
            return std::nullopt;
        }
        target_ = length;
        steps_.clear();
        walk_.assign(1, start);
        if (extend(start)) {
            return Trail{steps_, walk_};
        }
        return std::nullopt;
    }

private:
    bool extend(Vertex at)
    {
        const std::size_t depth = steps_.size();
        if (depth == target_) {
            return accept();
        }
        const bool want_apx = depth % 2 == 1;
        for (const auto e : ix_.g.incident(at)) {
            if (used_[e] != 0 || ix_.apx.contains(e) != want_apx) {
                continue;
            }
            const auto& edge = ix_.g.edge(e);
            const Vertex next = edge.other(at);
            push(e, at, next, want_apx);
            if (extend(next)) {
                return true;
            }
            pop(e, at, next, want_apx);
        }
        return false;
    }

    void push(EdgeId e, Vertex from, Vertex to, bool removing)
    {
        used_[e] = 1;
        const int d = removing ? -1 : 1;
        delta_[from] += d;
        delta_[to] += d;
        steps_.push_back(e);
        walk_.push_back(to);
    }

    void pop(EdgeId e, Vertex from, Vertex to, bool removing)
    {
        used_[e] = 0;
        const int d = removing ? -1 : 1;
        delta_[from] -= d;
        delta_[to] -= d;
        steps_.pop_back();
        walk_.pop_back();
    }

    bool in_result(EdgeId e) const { return ix_.apx.contains(e) != (used_[e] != 0); }

    // Condition: apx xor P is a T-free 2-matching of larger size. Only walk
    // vertices change degree, only added edges can close a triangle.
    bool accept() const
    {
        for (const auto v : walk_) {
            if (ix_.apx_degree[v] + delta_[v] > 2) {
                return false;
            }
        }
        std::size_t added = 0;
        for (const auto e : steps_) {
            if (ix_.apx.contains(e)) {
                continue;
            }
            ++added;
            for (const auto t : ix_.triangles_of_edge[e]) {
                const auto& tri = ix_.ts[t];
                if (in_result(tri.edges[0]) && in_result(tri.edges[1]) && in_result(tri.edges[2])) {
                    return false;
                }
            }
        }
        return 2 * added > steps_.size();
    }

    const SearchIndex& ix_;
    std::vector<std::uint8_t> used_;
    std::vector<int> delta_;
    std::vector<EdgeId> steps_;
    std::vector<Vertex> walk_;
    std::size_t target_ = 0;
};

std::vector<Vertex> start_order(const Graph& g, std::span<const Vertex> order)
{
    if (!order.empty()) {
        return {order.begin(), order.end()};
    }
    std::vector<Vertex> all(g.vertex_count());
    std::iota(all.begin(), all.end(), Vertex{0});
    return all;
}

void check_solution(const Graph& g, const TriangleSet& ts, const EdgeSubset& apx)
{
    if (apx.universe() != g.edge_count()) {
        throw PreconditionError("improving_trail: solution not bound to this graph");
    }
    if (!is_two_matching(g, apx) || !is_t_free(apx, ts)) {
        throw PreconditionError("improving_trail: solution is not a T-free 2-matching");
    }
}

}  // namespace

std::optional<Trail> improving_trail(const Graph& g, const TriangleSet& ts, const EdgeSubset& apx,
                                     std::size_t max_len, std::span<const Vertex> order)
{
    check_solution(g, ts, apx);
    const SearchIndex index(g, ts, apx);
    const auto starts = start_order(g, order);
    TrailDfs dfs(index);
    for (std::size_t length = 1; length <= max_len; length += 2) {
        for (const auto s : starts) {
            if (auto p = dfs.from(s, length)) {
                return p;
            }
        }
    }
    return std::nullopt;
}

std::optional<Trail> improving_trail_parallel(const Graph& g, const TriangleSet& ts,
                                              const EdgeSubset& apx, std::size_t max_len,
                                              std::span<const Vertex> order)
{
    check_solution(g, ts, apx);
    const SearchIndex index(g, ts, apx);
    const auto starts = start_order(g, order);
    const auto count = static_cast<std::int64_t>(starts.size());

    for (std::size_t length = 1; length <= max_len; length += 2) {
        std::vector<std::optional<Trail>> found(starts.size());
        std::atomic<std::int64_t> best{count};
#pragma omp parallel
        {
            TrailDfs dfs(index);
#pragma omp for schedule(dynamic, 1)
            for (std::int64_t i = 0; i < count; ++i) {
                // Later starts cannot win once an earlier one succeeded.
                if (i > best.load(std::memory_order_relaxed)) {
                    continue;
                }
                found[static_cast<std::size_t>(i)] = dfs.from(starts[static_cast<std::size_t>(i)], length);
                if (found[static_cast<std::size_t>(i)]) {
                    auto current = best.load(std::memory_order_relaxed);
                    while (i < current && !best.compare_exchange_weak(current, i)) {
                    }
                }
            }
        }
        if (best.load() < count) {
            return found[static_cast<std::size_t>(best.load())];
        }
    }
    return std::nullopt;
}

SearchReport local_search(const Graph& g, const TriangleSet& ts, const SearchConfig& cfg,
                          const SearchObserver& observer)
{
    const auto max_len = cfg.max_trail_length();
    const auto begin = std::chrono::steady_clock::now();

    SearchReport report;
    report.final_matching = cfg.warm_start ? *cfg.warm_start : EdgeSubset(g.edge_count());
    std::mt19937_64 rng(cfg.seed);
    std::vector<Vertex> order(g.vertex_count());
    std::iota(order.begin(), order.end(), Vertex{0});

    for (;;) {
        if (observer) {
            observer(report.final_matching);
        }
        if (!cfg.deterministic) {
            std::shuffle(order.begin(), order.end(), rng);
        }
        const auto p = cfg.parallel
            ? improving_trail_parallel(g, ts, report.final_matching, max_len, order)
            : improving_trail(g, ts, report.final_matching, max_len, order);
        if (!p) {
            break;
        }
        report.final_matching = apply_trail(report.final_matching, *p);
        ++report.iterations;
        ++report.trail_lengths[p->length()];
#ifndef NDEBUG
        if (!is_two_matching(g, report.final_matching) || !is_t_free(report.final_matching, ts)) {
            throw DefectError("local search produced an infeasible solution");
        }
#endif
    }
    report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - begin);
    return report;
}

SearchReport triangle_free_solve(const Graph& g, const SearchConfig& cfg)
{
    if (g.has_self_loops()) {
        throw PreconditionError("triangle_free_solve expects a graph without self-loops");
    }
    return local_search(g, enumerate_triangles(g), cfg);
}

}  // namespace tfm
