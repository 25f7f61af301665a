#pragma once

#include <cstdint>
#include <stdexcept>

#include "tfm/graph.hpp"

namespace tfm {

struct OracleResult {
    EdgeSubset optimum;
    std::size_t optimum_size = 0;
    std::uint64_t nodes_explored = 0;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;
inline constexpr std::size_t kEnumEdgeLimit = 20;

// Maximum T-free 2-matching by include/exclude branching over edges in
// identifier order. Ties resolve to the lexicographically smallest edge set.
// Throws BudgetExceeded once more than node_budget nodes have been opened.
OracleResult exact_max(const Graph& g, const TriangleSet& ts,
                       std::uint64_t node_budget = kDefaultNodeBudget);

// Same result by checking every edge subset. Requires at most 20 edges.
OracleResult exact_enum(const Graph& g, const TriangleSet& ts);

// exact_enum with the subset range split across OpenMP threads.
OracleResult exact_enum_parallel(const Graph& g, const TriangleSet& ts);

}  // namespace tfm
