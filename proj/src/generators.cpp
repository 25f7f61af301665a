#include "tfm/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tfm/matching.hpp"

namespace tfm {

namespace {

double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fisher-Yates driven by raw engine output (std::shuffle is not portable).
template <typename T>
void portable_shuffle(std::vector<T>& items, std::mt19937_64& rng)
{
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed)
{
    if (p < 0.0 || p > 1.0) {
        throw PreconditionError("edge probability must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    Graph g(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (unit(rng) < p) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

EdgeSubset random_greedy_matching(const Graph& g, const TriangleSet& ts, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<EdgeId> order(g.edge_count());
    std::iota(order.begin(), order.end(), EdgeId{0});
    portable_shuffle(order, rng);

    std::vector<std::vector<std::size_t>> by_edge(g.edge_count());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (const auto e : ts[i].edges) {
            by_edge[e].push_back(i);
        }
    }
    EdgeSubset m(g.edge_count());
    std::vector<int> deg(g.vertex_count(), 0);
    for (const auto e : order) {
        const auto& edge = g.edge(e);
        const int need = edge.is_loop() ? 2 : 1;
        if (deg[edge.u] + need > 2 || (!edge.is_loop() && deg[edge.v] + 1 > 2)) {
            continue;
        }
        const bool closes = std::any_of(by_edge[e].begin(), by_edge[e].end(), [&](std::size_t t) {
            return std::all_of(ts[t].edges.begin(), ts[t].edges.end(),
                               [&](EdgeId f) { return f == e || m.contains(f); });
        });
        if (closes) {
            continue;
        }
        m.insert(e);
        deg[edge.u] += 1;
        deg[edge.v] += 1;
    }
    return m;
}

TriangleSet random_triangle_subset(const TriangleSet& ts, double fraction, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(ts.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    portable_shuffle(idx, rng);
    const auto keep = static_cast<std::size_t>(std::floor(static_cast<double>(ts.size()) * fraction));
    idx.resize(std::min(keep, idx.size()));
    std::sort(idx.begin(), idx.end());
    TriangleSet out;
    for (const auto i : idx) {
        out.push_back(ts[i]);
    }
    return out;
}

}  // namespace tfm
