// Parallel kernels against the serial reference versions on binary truncations.

#include <benchmark/benchmark.h>

#include "arbor/operators.hpp"
#include "arbor/random.hpp"

using namespace arbor;

namespace {

struct Inputs {
    TreeFunction phi;
    TreeFunction f;
};

Inputs inputs(std::size_t depth) {
    const auto t = build_truncation(TreeSpec::homogeneous(2), depth);
    Rng rng(depth);
    return {random_function(t, rng), random_function(t, rng)};
}

template <auto Kernel>
void unary(benchmark::State& state) {
    const auto in = inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(in.f));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(in.f.size()));
}

template <auto Kernel>
void binary(benchmark::State& state) {
    const auto in = inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(in.phi, in.f));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(in.f.size()));
}

template <auto Kernel>
void dense(benchmark::State& state) {
    const auto in = inputs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(in.phi));
}

constexpr TreeFunction (*par_nabla)(const TreeFunction&) = &apply_nabla;
constexpr TreeFunction (*ref_nabla)(const TreeFunction&) = &reference::apply_nabla;
constexpr TreeFunction (*par_delta)(const TreeFunction&) = &apply_delta;
constexpr TreeFunction (*ref_delta)(const TreeFunction&) = &reference::apply_delta;
constexpr TreeFunction (*par_toeplitz)(const TreeFunction&, const TreeFunction&) = &apply_toeplitz;
constexpr TreeFunction (*ref_toeplitz)(const TreeFunction&, const TreeFunction&) = &reference::apply_toeplitz;
constexpr OperatorMatrix (*par_materialize)(const TreeFunction&) = &materialize;
constexpr OperatorMatrix (*ref_materialize)(const TreeFunction&) = &reference::materialize;

}  // namespace

BENCHMARK(unary<par_nabla>)->Name("nabla/parallel")->DenseRange(12, 20, 4);
BENCHMARK(unary<ref_nabla>)->Name("nabla/reference")->DenseRange(12, 20, 4);
BENCHMARK(unary<par_delta>)->Name("delta/parallel")->DenseRange(12, 20, 4);
BENCHMARK(unary<ref_delta>)->Name("delta/reference")->DenseRange(12, 20, 4);
BENCHMARK(binary<par_toeplitz>)->Name("toeplitz/parallel")->DenseRange(12, 20, 4);
BENCHMARK(binary<ref_toeplitz>)->Name("toeplitz/reference")->DenseRange(12, 20, 4);
BENCHMARK(dense<par_materialize>)->Name("materialize/parallel")->DenseRange(8, 11, 1);
BENCHMARK(dense<ref_materialize>)->Name("materialize/reference")->DenseRange(8, 11, 1);

BENCHMARK_MAIN();
