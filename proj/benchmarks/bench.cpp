#include "cylkit/dimension_ops.hpp"
#include "cylkit/hh.hpp"
#include "cylkit/monk.hpp"
#include "cylkit/morphisms.hpp"
#include "cylkit/set_algebras.hpp"

#include <benchmark/benchmark.h>

using namespace cylkit;

static void BM_MonkStructure(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(monk_structure(m, 3));
}
BENCHMARK(BM_MonkStructure)->Arg(3)->Arg(4);

static void BM_Cylindrify(benchmark::State& state)
{
    const FiniteBAO a(monk_structure(4, 3));
    Element x = a.zero();
    for (int k = 0; k < static_cast<int>(a.atom_count()); k += 7)
        x.set(k);
    for (auto _ : state)
        benchmark::DoNotOptimize(a.apply(cylindrifier_name(1), x));
}
BENCHMARK(BM_Cylindrify);

static void BM_NeatReductIso(benchmark::State& state)
{
    const FiniteBAO big(monk_structure(4, 3));
    const FiniteBAO small(monk_structure(3, 3));
    for (auto _ : state) {
        const auto nr = neat_reduct(big, {0, 1, 2});
        benchmark::DoNotOptimize(find_isomorphism(nr.algebra, small, SearchOptions{4096, 1}));
    }
}
BENCHMARK(BM_NeatReductIso)->Unit(benchmark::kMillisecond);

static void BM_Hypernetworks(benchmark::State& state)
{
    const FiniteBAO a = hh_algebra(3, 1, 3);
    for (auto _ : state) {
        const auto h = enumerate_hypernetworks(a, 3, 3, 1, HypernetworkCaps{});
        benchmark::DoNotOptimize(check_hyperbasis(h));
    }
}
BENCHMARK(BM_Hypernetworks)->Unit(benchmark::kMillisecond);

static void BM_Representation(benchmark::State& state)
{
    const FiniteBAO a = full_set_algebra(2, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(representation_search(a, RepresentationOptions{3, 10, 1}));
}
BENCHMARK(BM_Representation);
