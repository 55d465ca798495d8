#include <benchmark/benchmark.h>

#include <random>

#include "gelinspect/bench.hpp"
#include "gelinspect/inquiry.hpp"
#include "gelinspect/solver.hpp"

using namespace gelinspect;

namespace {

GrayImage noise_image(std::size_t rows, std::size_t cols) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealMatrix m(rows, cols);
  for (double& v : m.values()) v = u(gen);
  return GrayImage(std::move(m));
}

void BM_Solve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GrayImage img = noise_image(n, n);
  const SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(solve_pseudo_background(img, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_Solve)->Arg(256)->Arg(512)->Arg(1024)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Inquiry(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GrayImage img = noise_image(n, n);
  const InquiryParams params;
  for (auto _ : state) benchmark::DoNotOptimize(run_inquiry(img, params));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_Inquiry)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BenchCorpus(benchmark::State& state) {
  const BenchSuite suite = default_bench_suite();
  for (auto _ : state) benchmark::DoNotOptimize(generate_bench_corpus(suite, 1));
}
BENCHMARK(BM_BenchCorpus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
