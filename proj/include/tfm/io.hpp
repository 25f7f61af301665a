#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tfm/decomposition.hpp"
#include "tfm/exact.hpp"
#include "tfm/graph.hpp"
#include "tfm/local_search.hpp"
#include "tfm/matching.hpp"

namespace tfm {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct ParseOptions {
    bool allow_loops = false;
};

// Edge-list text:
//   # comment lines anywhere
//   n m
//   u v        (m lines, 0 <= u, v < n; u == v is a self-loop)
// Edge identifiers are 0-based line positions among the edge lines.
Graph parse_graph(std::string_view text, const ParseOptions& options = {});
std::string render_graph(const Graph& g);

// Whitespace-separated 0-based edge identifiers; '#' starts a comment.
EdgeSubset parse_matching(std::string_view text, const Graph& g);
std::string render_matching(const EdgeSubset& m);

// One triangle per line as three vertex indices; '#' starts a comment.
TriangleSet parse_triangles(std::string_view text, const Graph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

using Json = nlohmann::ordered_json;

// [{edge, from, to}, ...] in walk order.
Json trail_to_json(const Trail& p);
Trail trail_from_json(const Json& j, const Graph& g);

Json certificate_to_json(const DecompositionCertificate& cert);

// {trails: [...], certificate: {...}}
Json decomposition_to_json(const TrailPartition& part, const DecompositionCertificate& cert);
TrailPartition partition_from_json(const Json& j, const Graph& g, const EdgeSubset& ground);

// {size, edges, epsilon, max_trail_length, iterations, trail_length_histogram
//  [, elapsed_ms]}
Json report_to_json(const Graph& g, const SearchReport& report, double epsilon,
                    std::size_t max_trail_length, bool with_timing);

// {size, edges, exact: true, nodes_explored}
Json oracle_to_json(const Graph& g, const OracleResult& result);

}  // namespace tfm
