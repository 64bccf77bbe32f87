#include <random>

#include <benchmark/benchmark.h>

#include "hcstar/fixtures.hpp"
#include "hcstar/globular.hpp"
#include "hcstar/hypermatrix.hpp"

using namespace hcstar;

namespace {

Hypermatrix random_hypermatrix(const std::vector<int>& sizes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Hypermatrix h(sizes);
  for (Eigen::Index k = 0; k < h.size(); ++k) h.entries()(k) = Cx(g(rng), g(rng));
  return h;
}

std::vector<int> sizes_for(int depth, int n) { return std::vector<int>(static_cast<std::size_t>(depth), n); }

GlobularCategory exchange_input(int n) {
  return fixtures::hypermatrix_index_category({n, n}, Mode{1}).category;
}

void BM_ExchangePruned(benchmark::State& state) {
  const auto cat = exchange_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_exchange(cat));
  state.counters["cells"] = cat.size();
}

void BM_ExchangeBruteForce(benchmark::State& state) {
  const auto cat = exchange_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::check_exchange_bruteforce(cat));
  state.counters["cells"] = cat.size();
}

void BM_ExchangeS3Pruned(benchmark::State& state) {
  const auto cat = fixtures::symmetric3_two_category();
  for (auto _ : state) benchmark::DoNotOptimize(check_exchange(cat));
}

void BM_ExchangeS3BruteForce(benchmark::State& state) {
  const auto cat = fixtures::symmetric3_two_category();
  for (auto _ : state) benchmark::DoNotOptimize(reference::check_exchange_bruteforce(cat));
}

void BM_HypermatrixParallel(benchmark::State& state) {
  const auto sizes = sizes_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto a = random_hypermatrix(sizes, 1), b = random_hypermatrix(sizes, 2);
  const Mode mode = Mode::all(static_cast<int>(sizes.size()));
  for (auto _ : state) benchmark::DoNotOptimize(hypermatrix_product(a, b, mode));
  state.counters["entries"] = static_cast<double>(a.size());
}

void BM_HypermatrixSerial(benchmark::State& state) {
  const auto sizes = sizes_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto a = random_hypermatrix(sizes, 1), b = random_hypermatrix(sizes, 2);
  const Mode mode = Mode::all(static_cast<int>(sizes.size()));
  for (auto _ : state) benchmark::DoNotOptimize(reference::hypermatrix_product_serial(a, b, mode));
  state.counters["entries"] = static_cast<double>(a.size());
}

}  // namespace

BENCHMARK(BM_ExchangePruned)->Arg(2)->Arg(3);
BENCHMARK(BM_ExchangeBruteForce)->Arg(2)->Arg(3);
BENCHMARK(BM_ExchangeS3Pruned);
BENCHMARK(BM_ExchangeS3BruteForce);
BENCHMARK(BM_HypermatrixParallel)->Args({2, 2})->Args({2, 3})->Args({3, 2});
BENCHMARK(BM_HypermatrixSerial)->Args({2, 2})->Args({2, 3})->Args({3, 2});

BENCHMARK_MAIN();
