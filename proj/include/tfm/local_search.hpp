#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tfm/graph.hpp"
#include "tfm/matching.hpp"

namespace tfm {

struct SearchConfig {
    double epsilon = 0.5;     // in (0, 1]
    std::uint64_t seed = 0;   // start-vertex shuffling when !deterministic
    bool deterministic = true;
    bool parallel = false;    // fan improving-trail scans out over OpenMP threads
    std::optional<EdgeSubset> warm_start;

    // floor(2 / epsilon); throws PreconditionError if epsilon is outside (0, 1].
    std::size_t max_trail_length() const;
};

struct SearchReport {
    EdgeSubset final_matching;
    std::size_t iterations = 0;
    std::map<std::size_t, std::size_t> trail_lengths;  // length -> accepted trails
    std::chrono::nanoseconds elapsed{0};
};

// Scans candidates of odd length 1, 3, 5, ... up to max_len. Candidates are
// alternating trails w.r.t. (E \ apx, apx) that start and end outside apx;
// each is accepted only if apx xor P is a T-free 2-matching larger than apx.
// Start vertices are tried in `order` (ascending when empty), incident edges
// by identifier.
std::optional<Trail> improving_trail(const Graph& g, const TriangleSet& ts, const EdgeSubset& apx,
                                     std::size_t max_len, std::span<const Vertex> order = {});

// Same contract and same result as improving_trail; start vertices are
// scanned concurrently.
std::optional<Trail> improving_trail_parallel(const Graph& g, const TriangleSet& ts,
                                              const EdgeSubset& apx, std::size_t max_len,
                                              std::span<const Vertex> order = {});

// Called with the current solution before every improving-trail scan.
using SearchObserver = std::function<void(const EdgeSubset&)>;

// Starts from the warm start (or the empty set) and applies improving trails
// until none of length <= floor(2 / epsilon) exists.
SearchReport local_search(const Graph& g, const TriangleSet& ts, const SearchConfig& cfg,
                          const SearchObserver& observer = {});

// local_search over all triangles of a simple graph.
SearchReport triangle_free_solve(const Graph& g, const SearchConfig& cfg);

}  // namespace tfm
