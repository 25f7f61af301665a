#include "tfm/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace tfm {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

// Non-empty lines with comments stripped, split on blanks.
std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++number;
        auto line = text.substr(pos, end - pos);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        Line parsed{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
                ++i;
            }
            const auto start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
                ++i;
            }
            if (i > start) {
                parsed.tokens.push_back(line.substr(start, i - start));
            }
        }
        if (!parsed.tokens.empty()) {
            out.push_back(std::move(parsed));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
    return out;
}

std::uint64_t to_index(std::string_view token, std::size_t line)
{
    std::uint64_t value = 0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Graph parse_graph(std::string_view text, const ParseOptions& options)
{
    const auto lines = tokenize(text);
    if (lines.empty()) {
        throw ParseError(1, "missing header line 'n m'");
    }
    const auto& header = lines.front();
    if (header.tokens.size() != 2) {
        throw ParseError(header.number, "header must be 'n m'");
    }
    const auto n = to_index(header.tokens[0], header.number);
    const auto m = to_index(header.tokens[1], header.number);
    if (n > std::numeric_limits<Vertex>::max() / 2) {
        throw ParseError(header.number, "vertex count too large");
    }

    Graph g(static_cast<std::size_t>(n));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (i > m) {
            throw ParseError(line.number, "more edge lines than the declared " + std::to_string(m));
        }
        if (line.tokens.size() != 2) {
            throw ParseError(line.number, "edge line must be 'u v'");
        }
        const auto u = to_index(line.tokens[0], line.number);
        const auto v = to_index(line.tokens[1], line.number);
        if (u >= n || v >= n) {
            throw ParseError(line.number, "vertex index out of range");
        }
        if (u == v && !options.allow_loops) {
            throw ParseError(line.number, "self-loop at vertex " + std::to_string(u)
                                              + " (pass --allow-loops to accept)");
        }
        if (g.find_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
            throw ParseError(line.number, "duplicate edge " + std::to_string(u) + " "
                                              + std::to_string(v));
        }
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (g.edge_count() != m) {
        throw ParseError(lines.back().number, "declared " + std::to_string(m) + " edges, found "
                                                  + std::to_string(g.edge_count()));
    }
    return g;
}

std::string render_graph(const Graph& g)
{
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v << '\n';
    }
    return out.str();
}

EdgeSubset parse_matching(std::string_view text, const Graph& g)
{
    EdgeSubset m(g.edge_count());
    for (const auto& line : tokenize(text)) {
        for (const auto token : line.tokens) {
            const auto e = to_index(token, line.number);
            if (e >= g.edge_count()) {
                throw ParseError(line.number, "edge index " + std::to_string(e) + " out of range");
            }
            if (m.contains(static_cast<EdgeId>(e))) {
                throw ParseError(line.number, "edge index " + std::to_string(e) + " repeated");
            }
            m.insert(static_cast<EdgeId>(e));
        }
    }
    return m;
}

std::string render_matching(const EdgeSubset& m)
{
    std::ostringstream out;
    bool first = true;
    for (const auto e : m.members()) {
        out << (first ? "" : " ") << e;
        first = false;
    }
    out << '\n';
    return out.str();
}

TriangleSet parse_triangles(std::string_view text, const Graph& g)
{
    TriangleSet out;
    for (const auto& line : tokenize(text)) {
        if (line.tokens.size() != 3) {
            throw ParseError(line.number, "triangle line must list three vertices");
        }
        std::array<std::uint64_t, 3> v{};
        for (std::size_t i = 0; i < 3; ++i) {
            v[i] = to_index(line.tokens[i], line.number);
            if (v[i] >= g.vertex_count()) {
                throw ParseError(line.number, "vertex index out of range");
            }
        }
        const auto t = make_triangle(g, static_cast<Vertex>(v[0]), static_cast<Vertex>(v[1]),
                                     static_cast<Vertex>(v[2]));
        if (!t) {
            throw ParseError(line.number, "vertices do not span a triangle of the graph");
        }
        if (std::find(out.begin(), out.end(), *t) != out.end()) {
            throw ParseError(line.number, "triangle listed twice");
        }
        out.push_back(*t);
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

Json trail_to_json(const Trail& p)
{
    Json records = Json::array();
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        records.push_back({{"edge", p.steps[i]}, {"from", p.walk[i]}, {"to", p.walk[i + 1]}});
    }
    return records;
}

Trail trail_from_json(const Json& j, const Graph& g)
{
    if (!j.is_array()) {
        throw std::runtime_error("trail must be a JSON array");
    }
    Trail p;
    for (const auto& record : j) {
        const auto e = record.at("edge").get<EdgeId>();
        const auto from = record.at("from").get<Vertex>();
        const auto to = record.at("to").get<Vertex>();
        if (e >= g.edge_count()) {
            throw std::runtime_error("trail references unknown edge " + std::to_string(e));
        }
        if (p.walk.empty()) {
            p.walk.push_back(from);
        }
        else if (p.walk.back() != from) {
            throw std::runtime_error("trail records are not consecutive");
        }
        p.steps.push_back(e);
        p.walk.push_back(to);
    }
    return p;
}

Json certificate_to_json(const DecompositionCertificate& cert)
{
    Json trails = Json::array();
    for (const auto& t : cert.trails) {
        trails.push_back({{"walk_valid", t.walk_valid},
                          {"within_ground", t.within_ground},
                          {"is_alternating", t.is_alternating},
                          {"a1_delta_valid", t.a1_delta_valid},
                          {"a2_delta_valid", t.a2_delta_valid}});
    }
    return {{"partition_valid", cert.partition_valid},
            {"ground_matches", cert.ground_matches},
            {"disjoint", cert.disjoint},
            {"covers_ground", cert.covers_ground},
            {"trails", trails}};
}

Json decomposition_to_json(const TrailPartition& part, const DecompositionCertificate& cert)
{
    Json trails = Json::array();
    for (const auto& p : part.trails) {
        trails.push_back(trail_to_json(p));
    }
    return {{"trails", trails}, {"certificate", certificate_to_json(cert)}};
}

TrailPartition partition_from_json(const Json& j, const Graph& g, const EdgeSubset& ground)
{
    TrailPartition part;
    part.ground = ground;
    for (const auto& t : j.at("trails")) {
        part.trails.push_back(trail_from_json(t, g));
    }
    return part;
}

namespace {

Json edge_pairs(const Graph& g, const EdgeSubset& m)
{
    Json edges = Json::array();
    for (const auto e : m.members()) {
        edges.push_back({g.edge(e).u, g.edge(e).v});
    }
    return edges;
}

}  // namespace

Json report_to_json(const Graph& g, const SearchReport& report, double epsilon,
                    std::size_t max_trail_length, bool with_timing)
{
    Json histogram = Json::object();
    for (const auto& [length, count] : report.trail_lengths) {
        histogram[std::to_string(length)] = count;
    }
    Json out = {{"size", report.final_matching.size()},
                {"edges", edge_pairs(g, report.final_matching)},
                {"epsilon", epsilon},
                {"max_trail_length", max_trail_length},
                {"iterations", report.iterations},
                {"trail_length_histogram", histogram}};
    if (with_timing) {
        out["elapsed_ms"] = std::chrono::duration<double, std::milli>(report.elapsed).count();
    }
    return out;
}

Json oracle_to_json(const Graph& g, const OracleResult& result)
{
    return {{"size", result.optimum_size},
            {"edges", edge_pairs(g, result.optimum)},
            {"exact", true},
            {"nodes_explored", result.nodes_explored}};
}

}  // namespace tfm
