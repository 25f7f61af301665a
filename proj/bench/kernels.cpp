// Serial vs OpenMP kernels on seeded instances.

#include <benchmark/benchmark.h>

#include "tfm/exact.hpp"
#include "tfm/generators.hpp"
#include "tfm/local_search.hpp"

using namespace tfm;

namespace {

// Half of a greedy solution, so the scan has improvements to find but must
// look past the first few start vertices.
struct ScanInput {
    Graph g;
    TriangleSet ts;
    EdgeSubset apx;

    explicit ScanInput(std::size_t n)
        : g(erdos_renyi(n, 8.0 / static_cast<double>(n), 11)), ts(enumerate_triangles(g))
    {
        const auto greedy = random_greedy_matching(g, ts, 11);
        apx = EdgeSubset(g.edge_count());
        for (const auto e : greedy.members()) {
            if (e % 2 == 0) {
                apx.insert(e);
            }
        }
    }
};

template <auto Scan>
void improving_trail_scan(benchmark::State& state)
{
    const ScanInput in(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Scan(in.g, in.ts, in.apx, 9, {}));
    }
}

template <auto Enumerate>
void exact_enumeration(benchmark::State& state)
{
    // Edge count tracks the argument; capped by the enumeration limit.
    Graph g;
    for (std::uint64_t seed = 0;; ++seed) {
        g = erdos_renyi(9, 0.45, seed);
        if (g.edge_count() == static_cast<std::size_t>(state.range(0))) {
            break;
        }
    }
    const auto ts = enumerate_triangles(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Enumerate(g, ts));
    }
}

}  // namespace

BENCHMARK(improving_trail_scan<improving_trail>)->Name("improving_trail/serial")->Arg(200)->Arg(800);
BENCHMARK(improving_trail_scan<improving_trail_parallel>)
    ->Name("improving_trail/parallel")
    ->Arg(200)
    ->Arg(800);
BENCHMARK(exact_enumeration<exact_enum>)->Name("exact_enum/serial")->Arg(14)->Arg(18);
BENCHMARK(exact_enumeration<exact_enum_parallel>)->Name("exact_enum/parallel")->Arg(14)->Arg(18);

BENCHMARK_MAIN();
