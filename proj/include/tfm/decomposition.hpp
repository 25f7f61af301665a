#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfm/graph.hpp"
#include "tfm/matching.hpp"

namespace tfm {

// Reduction cases for a nonempty triangle list, in dispatch priority order.
//   Case1    a triangle is not contained in A1 u A2
//   Case2a   u1u2 in A1\A2, u2u3 in A1&A2, u3u1 in A2\A1, and a vertex u1'
//            with u1'u2 in A2\A1, u3u1' in A1\A2 exists
//   Case2b   as Case2a without such u1'
//   Case3    u1u2, u1u3 in A1\A2, u2u3 in A2\A1, and no listed triangle
//            u1'u2u3 with u1'u2, u3u1' in A1
//   Case3Sym Case3 with A1 and A2 exchanged
//   Case4    the Case3 pattern with such a twin triangle (on either side)
enum class CaseTag { Case1, Case2a, Case2b, Case3, Case3Sym, Case4 };

std::string_view to_string(CaseTag tag);

struct CaseMatch {
    CaseTag tag = CaseTag::Case1;
    Triangle t;
    std::optional<Triangle> t_prime;
    Vertex u1 = 0;
    Vertex u2 = 0;
    Vertex u3 = 0;
    std::optional<Vertex> u1_prime;
    // Roles were read with A1 and A2 exchanged (always set for Case3Sym).
    bool swapped = false;
};

struct TrailCertificate {
    bool walk_valid = false;
    bool within_ground = false;
    bool is_alternating = false;
    bool a1_delta_valid = false;  // A1 xor P is a T-free 2-matching
    bool a2_delta_valid = false;

    bool ok() const noexcept
    {
        return walk_valid && within_ground && is_alternating && a1_delta_valid && a2_delta_valid;
    }
};

struct DecompositionCertificate {
    std::vector<TrailCertificate> trails;
    bool ground_matches = false;  // partition.ground == A1 xor A2
    bool disjoint = false;
    bool covers_ground = false;
    bool partition_valid = false;
};

struct DecompositionStats {
    std::map<std::string, std::size_t> branches;  // reduction branch -> times taken
    std::size_t max_depth = 0;
    std::size_t ambiguous_insertions = 0;
};

struct DecomposeOptions {
#ifdef NDEBUG
    bool check_levels = false;
#else
    bool check_levels = true;
#endif
};

struct Decomposition {
    TrailPartition partition;
    DecompositionCertificate certificate;
    DecompositionStats stats;
};

// Partition of A1 xor A2 into alternating trails obtained by starting from
// single edges and concatenating trails at shared endpoints until no two
// distinct trails can be joined. Every A_i xor P is then a 2-matching.
TrailPartition decompose_base(const Graph& g, const EdgeSubset& a1, const EdgeSubset& a2);

// True iff two distinct trails end at a common vertex with end edges on
// opposite sides, i.e. they could be concatenated into one alternating trail.
bool has_concatenable_pair(const TrailPartition& part, const EdgeSubset& a1, const EdgeSubset& a2);

// Highest-priority case, scanning ts in order. Absent only for an empty ts.
std::optional<CaseMatch> classify(const Graph& g, const TriangleSet& ts, const EdgeSubset& a1,
                                  const EdgeSubset& a2);

// Partition of A1 xor A2 into alternating trails P with A_i xor P a T-free
// 2-matching for i = 1, 2. Throws PreconditionError unless A1 and A2 are
// T-free 2-matchings of g and ts lists triangles of g.
Decomposition decompose_tfree(const Graph& g, const TriangleSet& ts, const EdgeSubset& a1,
                              const EdgeSubset& a2, const DecomposeOptions& options = {});

// Checks a candidate partition from scratch using only the matching
// predicates.
DecompositionCertificate verify_decomposition(const Graph& g, const TriangleSet& ts,
                                              const EdgeSubset& a1, const EdgeSubset& a2,
                                              const TrailPartition& part);

}  // namespace tfm
