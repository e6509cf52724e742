// Serial reference vs OpenMP kernels on the default 1000-sample workload.
#include <benchmark/benchmark.h>

#include "miembed/embedding.hpp"
#include "miembed/synthgen.hpp"
#include "miembed/windows.hpp"

namespace {

using namespace miembed;

const Dataset& sample_dataset() {
    static const Dataset d = generate(sample_params(RelationshipClass::Sinusoid, 7));
    return d;
}

const std::vector<MIEmbedding>& sample_embeddings() {
    static const auto es = embed_all(corpus(20, 42));
    return es;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto ceiling = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bin_combination_scores_serial(sample_dataset().view(), ceiling));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto ceiling = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bin_combination_scores(sample_dataset().view(), ceiling));
}

void BM_WindowedSerial(benchmark::State& state) {
    const WindowConfig cfg(static_cast<std::size_t>(state.range(0)), 1, BinningScheme(5, 5));
    for (auto _ : state) benchmark::DoNotOptimize(windowed_mi_serial(sample_dataset(), cfg));
}

void BM_WindowedParallel(benchmark::State& state) {
    const WindowConfig cfg(static_cast<std::size_t>(state.range(0)), 1, BinningScheme(5, 5));
    for (auto _ : state) benchmark::DoNotOptimize(windowed_mi(sample_dataset(), cfg));
}

void BM_PairwiseSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pairwise_cosine_serial(sample_embeddings()));
}

void BM_PairwiseParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pairwise_cosine(sample_embeddings()));
}

void BM_LooSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(loo_accuracy_serial(sample_embeddings()));
}

void BM_LooParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(loo_accuracy(sample_embeddings()));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_SweepParallel)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_WindowedSerial)->Arg(50)->Arg(200);
BENCHMARK(BM_WindowedParallel)->Arg(50)->Arg(200);
BENCHMARK(BM_PairwiseSerial);
BENCHMARK(BM_PairwiseParallel);
BENCHMARK(BM_LooSerial);
BENCHMARK(BM_LooParallel);

BENCHMARK_MAIN();
