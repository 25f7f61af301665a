#pragma once

#include <cstdint>

#include "tfm/graph.hpp"

namespace tfm {

// All randomness is drawn from std::mt19937_64, whose output sequence is
// fixed by the C++ standard, and converted to floats by hand so results do
// not depend on the standard library's distribution implementations.

// Mixes a base seed with an instance index (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// G(n, p): pairs (u, v), u < v, visited with u ascending then v ascending;
// the pair is kept iff the next 53-bit draw, scaled to [0, 1), is below p.
// Edge identifiers follow that visiting order.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Greedy T-free 2-matching over a seeded shuffle of the edges.
EdgeSubset random_greedy_matching(const Graph& g, const TriangleSet& ts, std::uint64_t seed);

// A seeded subset of floor(|ts| * fraction) triangles, in ts order.
TriangleSet random_triangle_subset(const TriangleSet& ts, double fraction, std::uint64_t seed);

}  // namespace tfm
