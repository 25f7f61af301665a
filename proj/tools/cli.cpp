#include "tfm/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tfm/decomposition.hpp"
#include "tfm/exact.hpp"
#include "tfm/generators.hpp"
#include "tfm/io.hpp"
#include "tfm/local_search.hpp"

namespace tfm {

namespace {

// Carries an exit status out of a subcommand handler.
struct Failure {
    int code;
    std::string message;
};

std::uint64_t default_budget()
{
    if (const char* env = std::getenv("TFM_ORACLE_BUDGET")) {
        try {
            return std::stoull(env);
        }
        catch (const std::exception&) {
            throw Failure{kExitInput, "TFM_ORACLE_BUDGET is not an integer: " + std::string(env)};
        }
    }
    return kDefaultNodeBudget;
}

Graph load_graph(const std::string& path, bool allow_loops)
{
    const auto text = read_file(path);
    try {
        return parse_graph(text, ParseOptions{allow_loops});
    }
    catch (const ParseError& e) {
        throw Failure{kExitInput, path + ": " + e.what()};
    }
}

EdgeSubset load_matching(const std::string& path, const Graph& g)
{
    const auto text = read_file(path);
    try {
        return parse_matching(text, g);
    }
    catch (const ParseError& e) {
        throw Failure{kExitInput, path + ": " + e.what()};
    }
}

// "all" or a triangle file.
TriangleSet load_triangles(const std::string& source, const Graph& g)
{
    if (source == "all") {
        return enumerate_triangles(g);
    }
    const auto text = read_file(source);
    try {
        return parse_triangles(text, g);
    }
    catch (const ParseError& e) {
        throw Failure{kExitInput, source + ": " + e.what()};
    }
}

void check_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        std::ostringstream msg;
        msg << "epsilon must lie in (0, 1], got " << epsilon;
        throw Failure{kExitInput, msg.str()};
    }
}

void require_feasible(const Graph& g, const TriangleSet& ts, const EdgeSubset& m,
                      const std::string& name)
{
    if (!is_two_matching(g, m)) {
        throw Failure{kExitInfeasible, name + " is not a 2-matching"};
    }
    if (!is_t_free(m, ts)) {
        throw Failure{kExitInfeasible, name + " contains a listed triangle"};
    }
}

void print_edges(std::ostream& out, const Graph& g, const EdgeSubset& m)
{
    out << "edges";
    for (const auto e : m.members()) {
        out << ' ' << g.edge(e).u << '-' << g.edge(e).v;
    }
    out << '\n';
}

struct SolveArgs {
    std::string input;
    double epsilon = 0.5;
    std::uint64_t seed = 0;
    std::string triangles = "all";
    bool json = false;
    bool allow_loops = false;
    bool parallel = false;
    bool timing = false;
    bool randomized = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out)
{
    check_epsilon(a.epsilon);
    const auto g = load_graph(a.input, a.allow_loops);
    const auto ts = load_triangles(a.triangles, g);

    SearchConfig cfg;
    cfg.epsilon = a.epsilon;
    cfg.seed = a.seed;
    cfg.deterministic = !a.randomized;
    cfg.parallel = a.parallel;
    const auto report = local_search(g, ts, cfg);

    if (a.json) {
        out << report_to_json(g, report, a.epsilon, cfg.max_trail_length(), a.timing).dump(2)
            << '\n';
        return kExitOk;
    }
    out << "size " << report.final_matching.size() << '\n';
    out << "iterations " << report.iterations << '\n';
    print_edges(out, g, report.final_matching);
    if (a.timing) {
        out << "elapsed_ms "
            << std::chrono::duration<double, std::milli>(report.elapsed).count() << '\n';
    }
    return kExitOk;
}

struct ExactArgs {
    std::string input;
    std::string triangles = "all";
    std::optional<std::uint64_t> budget;
    bool json = false;
    bool allow_loops = false;
};

int cmd_exact(const ExactArgs& a, std::ostream& out)
{
    const auto budget = a.budget ? *a.budget : default_budget();
    const auto g = load_graph(a.input, a.allow_loops);
    const auto ts = load_triangles(a.triangles, g);
    OracleResult result;
    try {
        result = exact_max(g, ts, budget);
    }
    catch (const BudgetExceeded& e) {
        throw Failure{kExitBound, a.input + ": " + e.what()};
    }
    if (a.json) {
        out << oracle_to_json(g, result).dump(2) << '\n';
        return kExitOk;
    }
    out << "size " << result.optimum_size << '\n';
    out << "nodes " << result.nodes_explored << '\n';
    print_edges(out, g, result.optimum);
    return kExitOk;
}

struct DecomposeArgs {
    std::string input;
    std::string m1;
    std::string m2;
    std::string triangles = "all";
    std::string partition;  // verify only
    bool json = false;
    bool allow_loops = false;
};

struct PairInstance {
    Graph g;
    TriangleSet ts;
    EdgeSubset a1;
    EdgeSubset a2;
};

PairInstance load_pair(const DecomposeArgs& a)
{
    PairInstance in;
    in.g = load_graph(a.input, a.allow_loops);
    in.ts = load_triangles(a.triangles, in.g);
    in.a1 = load_matching(a.m1, in.g);
    in.a2 = load_matching(a.m2, in.g);
    require_feasible(in.g, in.ts, in.a1, "m1");
    require_feasible(in.g, in.ts, in.a2, "m2");
    return in;
}

void print_trails(std::ostream& out, const TrailPartition& part)
{
    out << "trails " << part.trails.size() << '\n';
    for (const auto& p : part.trails) {
        out << p.walk.front();
        for (std::size_t i = 0; i < p.steps.size(); ++i) {
            out << " -[" << p.steps[i] << "]- " << p.walk[i + 1];
        }
        out << '\n';
    }
}

int cmd_decompose(const DecomposeArgs& a, std::ostream& out)
{
    const auto in = load_pair(a);
    const auto result = decompose_tfree(in.g, in.ts, in.a1, in.a2);
    const bool valid = result.certificate.partition_valid;
    if (a.json) {
        auto j = decomposition_to_json(result.partition, result.certificate);
        Json branches = Json::object();
        for (const auto& [name, count] : result.stats.branches) {
            branches[name] = count;
        }
        j["stats"] = {{"branches", branches},
                      {"max_depth", result.stats.max_depth},
                      {"ambiguous_insertions", result.stats.ambiguous_insertions}};
        out << j.dump(2) << '\n';
    }
    else {
        print_trails(out, result.partition);
        out << "partition_valid " << (valid ? "true" : "false") << '\n';
    }
    return valid ? kExitOk : kExitInvalid;
}

int cmd_verify(const DecomposeArgs& a, std::ostream& out)
{
    const auto in = load_pair(a);
    TrailPartition part;
    try {
        const auto j = Json::parse(read_file(a.partition));
        part = partition_from_json(j, in.g, sym_diff(in.a1, in.a2));
    }
    catch (const Json::exception& e) {
        throw Failure{kExitInput, a.partition + ": " + e.what()};
    }
    catch (const std::runtime_error& e) {
        throw Failure{kExitInput, a.partition + ": " + e.what()};
    }
    const auto cert = verify_decomposition(in.g, in.ts, in.a1, in.a2, part);
    out << certificate_to_json(cert).dump(2) << '\n';
    return cert.partition_valid ? kExitOk : kExitInvalid;
}

struct GenArgs {
    std::size_t n = 0;
    double p = 0.5;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_gen(const GenArgs& a, std::ostream& out)
{
    if (!(a.p >= 0.0 && a.p <= 1.0)) {
        throw Failure{kExitInput, "p must lie in [0, 1]"};
    }
    const auto text = render_graph(erdos_renyi(a.n, a.p, a.seed));
    if (a.out_path.empty()) {
        out << text;
    }
    else {
        try {
            write_file(a.out_path, text);
        }
        catch (const std::runtime_error& e) {
            throw Failure{kExitInput, e.what()};
        }
    }
    return kExitOk;
}

struct BenchArgs {
    std::vector<std::size_t> sizes;
    std::vector<double> ps{0.5};
    std::vector<double> epsilons{0.5};
    std::vector<std::string> inputs;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string out_path;
    bool with_opt = false;
};

struct BenchRow {
    std::size_t instance = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    double epsilon = 0;
    std::size_t apx_size = 0;
    std::optional<std::size_t> opt_size;
    std::optional<double> ratio;
    std::size_t iterations = 0;
    double elapsed_ms = 0;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err)
{
    for (const auto eps : a.epsilons) {
        check_epsilon(eps);
    }
    for (const auto p : a.ps) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Failure{kExitInput, "p must lie in [0, 1]"};
        }
    }
    const auto budget = default_budget();

    // Instances are generated up front so their order never depends on threads.
    std::vector<Graph> graphs;
    if (!a.inputs.empty()) {
        for (const auto& path : a.inputs) {
            graphs.push_back(load_graph(path, false));
        }
    }
    else {
        std::uint64_t index = 0;
        for (const auto n : a.sizes) {
            for (const auto p : a.ps) {
                for (std::size_t t = 0; t < a.trials; ++t, ++index) {
                    graphs.push_back(erdos_renyi(n, p, derive_seed(a.seed, index)));
                }
            }
        }
    }

    const auto count = static_cast<std::int64_t>(graphs.size());
    std::vector<std::vector<BenchRow>> rows(graphs.size());
    std::vector<std::string> failures(graphs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto& g = graphs[static_cast<std::size_t>(i)];
        try {
            const auto ts = enumerate_triangles(g);
            std::optional<std::size_t> opt;
            if (a.with_opt) {
                opt = exact_max(g, ts, budget).optimum_size;
            }
            for (const auto eps : a.epsilons) {
                SearchConfig cfg;
                cfg.epsilon = eps;
                cfg.seed = derive_seed(a.seed, static_cast<std::uint64_t>(i));
                const auto report = local_search(g, ts, cfg);
                BenchRow row;
                row.instance = static_cast<std::size_t>(i);
                row.n = g.vertex_count();
                row.m = g.edge_count();
                row.epsilon = eps;
                row.apx_size = report.final_matching.size();
                row.iterations = report.iterations;
                row.elapsed_ms = std::chrono::duration<double, std::milli>(report.elapsed).count();
                if (opt) {
                    row.opt_size = opt;
                    row.ratio = *opt == 0 ? 1.0
                                          : static_cast<double>(row.apx_size)
                                                / static_cast<double>(*opt);
                }
                rows[static_cast<std::size_t>(i)].push_back(row);
            }
        }
        catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
        }
    }

    std::ostringstream csv;
    csv << "instance,n,m,epsilon,apx_size,opt_size,ratio,iterations,elapsed_ms\n";
    int status = kExitOk;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (!failures[i].empty()) {
            err << "instance " << i << ": " << failures[i] << '\n';
            status = kExitBound;
            continue;
        }
        for (const auto& row : rows[i]) {
            csv << row.instance << ',' << row.n << ',' << row.m << ',' << row.epsilon << ','
                << row.apx_size << ',';
            if (row.opt_size) {
                csv << *row.opt_size << ',' << std::fixed << std::setprecision(6) << *row.ratio
                    << std::defaultfloat;
            }
            else {
                csv << ',';
            }
            csv << ',' << row.iterations << ',' << std::fixed << std::setprecision(3)
                << row.elapsed_ms << std::defaultfloat << std::setprecision(6) << '\n';
            // |APX| >= (1 - eps) |OPT|, compared without rounding the product.
            if (row.opt_size
                && static_cast<long double>(row.apx_size)
                       < (1.0L - static_cast<long double>(row.epsilon))
                             * static_cast<long double>(*row.opt_size)) {
                err << "instance " << row.instance << ": ratio " << *row.ratio
                    << " below 1 - epsilon = " << 1.0 - row.epsilon << '\n';
                status = kExitBound;
            }
        }
    }
    if (a.out_path.empty()) {
        out << csv.str();
    }
    else {
        try {
            write_file(a.out_path, csv.str());
        }
        catch (const std::runtime_error& e) {
            throw Failure{kExitInput, e.what()};
        }
    }
    return status;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Maximum triangle-free 2-matchings: local search, exact oracles, and "
                 "alternating-trail decompositions"};
    app.name("tfm");
    app.require_subcommand(1, 1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "approximate a maximum triangle-free 2-matching");
    s->add_option("input", solve.input, "edge-list file")->required();
    s->add_option("--epsilon", solve.epsilon, "accuracy in (0, 1]; trails up to floor(2/epsilon)");
    s->add_option("--seed", solve.seed, "seed for --randomized start-vertex order");
    s->add_option("--triangles", solve.triangles, "'all' or a triangle file");
    s->add_flag("--json", solve.json, "emit JSON");
    s->add_flag("--allow-loops", solve.allow_loops, "accept self-loops in the input");
    s->add_flag("--parallel", solve.parallel, "scan start vertices on several threads");
    s->add_flag("--timing", solve.timing, "report elapsed time");
    s->add_flag("--randomized", solve.randomized, "shuffle start vertices with --seed");

    ExactArgs exact;
    auto* x = app.add_subcommand("exact", "maximum triangle-free 2-matching by branch and bound");
    x->add_option("input", exact.input, "edge-list file")->required();
    x->add_option("--budget", exact.budget, "node budget (default $TFM_ORACLE_BUDGET or 5e7)");
    x->add_option("--triangles", exact.triangles, "'all' or a triangle file");
    x->add_flag("--json", exact.json, "emit JSON");
    x->add_flag("--allow-loops", exact.allow_loops, "accept self-loops in the input");

    DecomposeArgs decompose;
    auto* d = app.add_subcommand("decompose", "split m1 xor m2 into alternating trails");
    d->add_option("input", decompose.input, "edge-list file")->required();
    d->add_option("--m1", decompose.m1, "first matching (edge ids)")->required();
    d->add_option("--m2", decompose.m2, "second matching (edge ids)")->required();
    d->add_option("--triangles", decompose.triangles, "'all' or a triangle file");
    d->add_flag("--json", decompose.json, "emit JSON");
    d->add_flag("--allow-loops", decompose.allow_loops, "accept self-loops in the input");

    DecomposeArgs verify;
    auto* v = app.add_subcommand("verify", "re-check a stored trail partition");
    v->add_option("input", verify.input, "edge-list file")->required();
    v->add_option("--m1", verify.m1, "first matching (edge ids)")->required();
    v->add_option("--m2", verify.m2, "second matching (edge ids)")->required();
    v->add_option("--partition", verify.partition, "JSON written by decompose --json")
        ->required();
    v->add_option("--triangles", verify.triangles, "'all' or a triangle file");
    v->add_flag("--allow-loops", verify.allow_loops, "accept self-loops in the input");

    GenArgs gen;
    auto* gsub = app.add_subcommand("gen", "write a seeded G(n, p) graph");
    gsub->add_option("--n", gen.n, "vertex count")->required();
    gsub->add_option("--p", gen.p, "edge probability");
    gsub->add_option("--seed", gen.seed, "generator seed");
    gsub->add_option("--out", gen.out_path, "output file (stdout when omitted)");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "CSV table of local-search results");
    b->add_option("--sizes", bench.sizes, "vertex counts")->delimiter(',');
    b->add_option("--p", bench.ps, "edge probabilities")->delimiter(',');
    b->add_option("--epsilons", bench.epsilons, "accuracies in (0, 1]")->delimiter(',');
    b->add_option("--trials", bench.trials, "instances per (size, p)");
    b->add_option("--seed", bench.seed, "base seed; instance i uses a seed derived from it");
    b->add_option("--input", bench.inputs, "edge-list files used instead of generated graphs");
    b->add_option("--out", bench.out_path, "output file (stdout when omitted)");
    b->add_flag("--with-opt", bench.with_opt, "add exact optimum and ratio columns");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::ParseError& e) {
        err << "tfm: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (*s) {
            return cmd_solve(solve, out);
        }
        if (*x) {
            return cmd_exact(exact, out);
        }
        if (*d) {
            return cmd_decompose(decompose, out);
        }
        if (*v) {
            return cmd_verify(verify, out);
        }
        if (*gsub) {
            return cmd_gen(gen, out);
        }
        return cmd_bench(bench, out, err);
    }
    catch (const Failure& f) {
        err << "tfm: " << f.message << '\n';
        return f.code;
    }
    catch (const PreconditionError& e) {
        err << "tfm: " << e.what() << '\n';
        return kExitInput;
    }
    catch (const std::runtime_error& e) {
        err << "tfm: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace tfm
