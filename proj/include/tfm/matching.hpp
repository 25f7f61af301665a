#pragma once

#include <vector>

#include "tfm/graph.hpp"

namespace tfm {

// A sequence of distinct consecutive edges together with the vertex walk
// that realises it: steps[i] joins walk[i] and walk[i + 1]. Vertices may
// repeat. The empty trail has no steps and an empty walk.
struct Trail {
    std::vector<EdgeId> steps;
    std::vector<Vertex> walk;

    std::size_t length() const noexcept { return steps.size(); }
    bool empty() const noexcept { return steps.empty(); }
    bool is_closed() const noexcept { return !walk.empty() && walk.front() == walk.back(); }
    Trail reversed() const;

    // Builds a trail from a start vertex and a step sequence, deriving the
    // walk. Throws PreconditionError if a step does not touch the current
    // vertex.
    static Trail from_steps(const Graph& g, Vertex start, std::vector<EdgeId> steps);

    friend bool operator==(const Trail&, const Trail&) = default;
};

struct TrailPartition {
    std::vector<Trail> trails;
    EdgeSubset ground;
};

// True iff steps are distinct existing edges and the walk is consistent.
bool is_valid_trail(const Graph& g, const Trail& p);

// Edge set of a trail as a subset over `universe` edges.
EdgeSubset edge_set(const Trail& p, std::size_t universe);

bool is_two_matching(const Graph& g, const EdgeSubset& m);

// No triangle of ts lies entirely inside m.
bool is_t_free(const EdgeSubset& m, const TriangleSet& ts);

// Throws PreconditionError if the universes differ.
EdgeSubset sym_diff(const EdgeSubset& a, const EdgeSubset& b);

// Raised when a trail handed to is_alternating_trail leaves A1 xor A2.
class ContractViolation : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// Steps alternate between A1 \ A2 and A2 \ A1; either side may start.
// Trails of length 0 or 1 are alternating.
bool is_alternating_trail(const Trail& p, const EdgeSubset& a1, const EdgeSubset& a2);

EdgeSubset apply_trail(const EdgeSubset& a, const Trail& p);

// T(F): triangles of ts sharing at least one edge with f, in ts order.
TriangleSet triangles_incident(const TriangleSet& ts, const EdgeSubset& f);
TriangleSet triangles_incident(const TriangleSet& ts, std::span<const EdgeId> f);

// ts minus the given triangles (compared by edge set), order preserved.
TriangleSet without(const TriangleSet& ts, const TriangleSet& removed);

// Asserts the statement "|M cap T| = 2 implies M is T(T)-free" for one
// instance. Throws PreconditionError unless |m cap t| = 2.
bool check_observation_1(const TriangleSet& ts, const EdgeSubset& m, const Triangle& t);

}  // namespace tfm
