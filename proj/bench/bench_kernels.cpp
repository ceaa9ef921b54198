// Parallel library kernels vs the serial oracle on the same inputs.
// Arg(0) = N originals; the fti benches use N/4 samples. Run with
// OMP_NUM_THREADS to control the library side.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fti/embedding.hpp"
#include "fti/fuzzy_graph.hpp"
#include "fti/impact.hpp"
#include "fti/knn.hpp"
#include "oracle.hpp"

namespace {

fti::EmbeddingSet gaussian(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n * dim);
  for (double& x : v) x = g(rng);
  return fti::EmbeddingSet(std::move(v), dim);
}

constexpr std::size_t kDim = 32;
constexpr std::size_t kK = 5;

void BM_KnnParallel(benchmark::State& state) {
  const auto set = gaussian(state.range(0), kDim, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fti::knn(set, kK));
  state.SetComplexityN(state.range(0));
}

void BM_KnnOracle(benchmark::State& state) {
  const auto set = gaussian(state.range(0), kDim, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fti::oracle::oracle_knn(set, kK));
  state.SetComplexityN(state.range(0));
}

void BM_GraphParallel(benchmark::State& state) {
  const auto set = gaussian(state.range(0), kDim, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fti::build_fuzzy_graph(set, kK));
}

void BM_GraphOracle(benchmark::State& state) {
  const auto set = gaussian(state.range(0), kDim, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fti::oracle::oracle_graph(set, kK));
}

// Graph built once outside the loop on the library side; the oracle has no
// separate graph stage to hoist beyond its own oracle_graph.
void BM_FtiParallel(benchmark::State& state) {
  const auto original = gaussian(state.range(0), kDim, 1);
  const auto samples = gaussian(state.range(0) / 4, kDim, 2);
  const auto graph = fti::build_fuzzy_graph(original, kK);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fti::fti(graph, original, samples, fti::Normalization::kEdgeNormalized).fti);
  }
}

void BM_FtiOracle(benchmark::State& state) {
  const auto original = gaussian(state.range(0), kDim, 1);
  const auto samples = gaussian(state.range(0) / 4, kDim, 2);
  const auto graph = fti::oracle::oracle_graph(original, kK);
  for (auto _ : state) {
    double total = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      total += fti::oracle::oracle_sample(graph, original, samples.row(s)).normalized_drop;
    }
    benchmark::DoNotOptimize(total);
  }
}

void BM_SolveSigma(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::vector<std::vector<double>> rows(256, std::vector<double>(state.range(0)));
  for (auto& r : rows) {
    for (double& d : r) d = u(rng);
    std::sort(r.begin(), r.end());
  }
  const double target = std::log2(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    for (const auto& r : rows) benchmark::DoNotOptimize(fti::solve_sigma(r, target).sigma);
  }
  state.SetItemsProcessed(state.iterations() * rows.size());
}

void BM_OracleSigma(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::vector<double> r(state.range(0));
  for (double& d : r) d = u(rng);
  std::sort(r.begin(), r.end());
  const double target = std::log2(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fti::oracle::oracle_sigma(r, target).sigma);
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_KnnParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnnOracle)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphOracle)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FtiParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FtiOracle)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveSigma)->Arg(3)->Arg(10);
BENCHMARK(BM_OracleSigma)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
