#include "tfm/exact.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

namespace tfm {

namespace {

class BranchAndBound {
public:
    BranchAndBound(const Graph& g, const TriangleSet& ts, std::uint64_t budget)
        : g_(g), budget_(budget), by_edge_(g.edge_count()), tri_count_(ts.size(), 0),
          degree_(g.vertex_count(), 0), open_(g.vertex_count(), 0), chosen_(g.edge_count(), 0)
    {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            for (const auto e : ts[i].edges) {
                by_edge_[e].push_back(i);
            }
        }
        for (const auto& edge : g.edges()) {
            open_[edge.u] += 1;
            open_[edge.v] += 1;
        }
    }

    OracleResult run()
    {
        branch(0);
        OracleResult out;
        out.optimum = EdgeSubset(g_.edge_count(), best_);
        out.optimum_size = best_.size();
        out.nodes_explored = nodes_;
        return out;
    }

private:
    // Each further edge uses two units of residual degree capacity.
    std::size_t capacity_bound() const
    {
        std::size_t slots = 0;
        for (Vertex v = 0; v < g_.vertex_count(); ++v) {
            slots += static_cast<std::size_t>(std::min(2 - degree_[v], open_[v]));
        }
        return slots / 2;
    }

    bool can_include(EdgeId e) const
    {
        const auto& edge = g_.edge(e);
        if (edge.is_loop() ? degree_[edge.u] > 0 : (degree_[edge.u] >= 2 || degree_[edge.v] >= 2)) {
            return false;
        }
        for (const auto t : by_edge_[e]) {
            if (tri_count_[t] == 2) {
                return false;
            }
        }
        return true;
    }

    void set(EdgeId e, int sign)
    {
        const auto& edge = g_.edge(e);
        degree_[edge.u] += sign;
        degree_[edge.v] += sign;
        for (const auto t : by_edge_[e]) {
            tri_count_[t] += sign;
        }
        chosen_[e] = sign > 0 ? 1 : 0;
        size_ = static_cast<std::size_t>(static_cast<long>(size_) + sign);
    }

    void branch(EdgeId e)
    {
        if (++nodes_ > budget_) {
            throw BudgetExceeded("exact_max: node budget of " + std::to_string(budget_)
                                 + " exceeded");
        }
        if (e == g_.edge_count()) {
            if (static_cast<long>(size_) > best_size_) {
                best_size_ = static_cast<long>(size_);
                best_.clear();
                for (EdgeId f = 0; f < g_.edge_count(); ++f) {
                    if (chosen_[f] != 0) {
                        best_.push_back(f);
                    }
                }
            }
            return;
        }
        const std::size_t undecided = g_.edge_count() - e;
        const std::size_t bound = size_ + std::min(undecided, capacity_bound());
        if (static_cast<long>(bound) <= best_size_) {
            return;
        }

        const auto& edge = g_.edge(e);
        open_[edge.u] -= 1;
        open_[edge.v] -= 1;
        if (can_include(e)) {
            set(e, +1);
            branch(e + 1);
            set(e, -1);
        }
        branch(e + 1);
        open_[edge.u] += 1;
        open_[edge.v] += 1;
    }

    const Graph& g_;
    std::uint64_t budget_;
    std::vector<std::vector<std::size_t>> by_edge_;
    std::vector<int> tri_count_;
    std::vector<int> degree_;  // loops counted twice
    std::vector<int> open_;    // undecided edge ends per vertex
    std::vector<std::uint8_t> chosen_;
    std::size_t size_ = 0;
    long best_size_ = -1;
    std::vector<EdgeId> best_;
    std::uint64_t nodes_ = 0;
};

// Bitmask tables for subset enumeration.
struct MaskModel {
    std::vector<std::uint32_t> incident;  // non-loop edges at v
    std::vector<std::uint32_t> loops;     // loop at v
    std::vector<std::uint32_t> triangles;

    MaskModel(const Graph& g, const TriangleSet& ts)
        : incident(g.vertex_count(), 0), loops(g.vertex_count(), 0)
    {
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const auto& edge = g.edge(e);
            if (edge.is_loop()) {
                loops[edge.u] |= 1u << e;
            }
            else {
                incident[edge.u] |= 1u << e;
                incident[edge.v] |= 1u << e;
            }
        }
        for (const auto& t : ts) {
            triangles.push_back((1u << t.edges[0]) | (1u << t.edges[1]) | (1u << t.edges[2]));
        }
    }

    bool feasible(std::uint32_t mask) const
    {
        for (std::size_t v = 0; v < incident.size(); ++v) {
            if (std::popcount(mask & incident[v]) + 2 * std::popcount(mask & loops[v]) > 2) {
                return false;
            }
        }
        for (const auto t : triangles) {
            if ((mask & t) == t) {
                return false;
            }
        }
        return true;
    }
};

// Larger first; among equal sizes the set whose smallest differing edge it
// contains.
bool better(std::uint32_t a, std::uint32_t b)
{
    const int ca = std::popcount(a);
    const int cb = std::popcount(b);
    if (ca != cb) {
        return ca > cb;
    }
    const std::uint32_t diff = a ^ b;
    return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

OracleResult from_mask(const Graph& g, std::uint32_t mask)
{
    OracleResult out;
    out.optimum = EdgeSubset(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if ((mask >> e) & 1u) {
            out.optimum.insert(e);
        }
    }
    out.optimum_size = out.optimum.size();
    out.nodes_explored = std::uint64_t{1} << g.edge_count();
    return out;
}

void check_enum_size(const Graph& g)
{
    if (g.edge_count() > kEnumEdgeLimit) {
        throw PreconditionError("exact_enum supports at most " + std::to_string(kEnumEdgeLimit)
                                + " edges, got " + std::to_string(g.edge_count()));
    }
}

}  // namespace

OracleResult exact_max(const Graph& g, const TriangleSet& ts, std::uint64_t node_budget)
{
    return BranchAndBound(g, ts, node_budget).run();
}

OracleResult exact_enum(const Graph& g, const TriangleSet& ts)
{
    check_enum_size(g);
    const MaskModel model(g, ts);
    const std::uint32_t end = std::uint32_t{1} << g.edge_count();
    std::uint32_t best = 0;
    for (std::uint32_t mask = 1; mask < end; ++mask) {
        if (better(mask, best) && model.feasible(mask)) {
            best = mask;
        }
    }
    return from_mask(g, best);
}

OracleResult exact_enum_parallel(const Graph& g, const TriangleSet& ts)
{
    check_enum_size(g);
    const MaskModel model(g, ts);
    const auto end = static_cast<std::int64_t>(std::int64_t{1} << g.edge_count());
    std::uint32_t best = 0;
#pragma omp parallel
    {
        std::uint32_t local = 0;
#pragma omp for schedule(static)
        for (std::int64_t m = 1; m < end; ++m) {
            const auto mask = static_cast<std::uint32_t>(m);
            if (better(mask, local) && model.feasible(mask)) {
                local = mask;
            }
        }
#pragma omp critical
        if (better(local, best)) {
            best = local;
        }
    }
    return from_mask(g, best);
}

}  // namespace tfm
