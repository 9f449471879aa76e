// OpenMP kernels against their serial references.
//   build/bench/bench_parallel [--benchmark_filter=...]
// Set OMP_NUM_THREADS to vary the thread count.

#include "combicodec/batch.hpp"
#include "combicodec/random_instances.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace combicodec;

namespace {

ExactPmf wide_pmf(std::size_t outcomes) {
    std::mt19937_64 rng(outcomes);
    std::vector<Integer> w(outcomes);
    for (auto& x : w) {
        x = to_integer(rng());
        x *= to_integer(rng());
    }
    return ExactPmf(std::move(w));
}

void BM_discretize(benchmark::State& state) {
    const ExactPmf pmf = wide_pmf(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(discretize(pmf, 32));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_discretize_serial(benchmark::State& state) {
    const ExactPmf pmf = wide_pmf(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(discretize_serial(pmf, 32));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<CodingJob> batch_jobs(std::size_t count) {
    std::vector<CodingJob> jobs;
    for (Model m : kAllModels) {
        auto part = random_jobs(m, count / kAllModels.size(), 99 + static_cast<std::uint64_t>(m));
        jobs.insert(jobs.end(), part.begin(), part.end());
    }
    return jobs;
}

void BM_encode_batch(benchmark::State& state) {
    const auto jobs = batch_jobs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(encode_batch(jobs));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs.size()));
}

void BM_encode_batch_serial(benchmark::State& state) {
    const auto jobs = batch_jobs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(encode_batch_serial(jobs));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs.size()));
}

}  // namespace

BENCHMARK(BM_discretize)->Arg(256)->Arg(4096)->Arg(65536);
BENCHMARK(BM_discretize_serial)->Arg(256)->Arg(4096)->Arg(65536);
BENCHMARK(BM_encode_batch)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_encode_batch_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
