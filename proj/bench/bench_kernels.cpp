#include <benchmark/benchmark.h>

#include <random>

#include "turrittin/kernels.hpp"

using namespace turrittin;

namespace {

std::vector<Matrix> random_sequence(std::mt19937_64& rng, int n, std::size_t len) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
  std::vector<Matrix> v;
  for (std::size_t s = 0; s < len; ++s) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Scalar(Rational(num(rng), den(rng)));
    v.push_back(m);
  }
  return v;
}

template <auto Kernel>
void bm_convolve(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int n = static_cast<int>(state.range(0));
  const auto len = static_cast<std::size_t>(state.range(1));
  auto a = random_sequence(rng, n, len), b = random_sequence(rng, n, len);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b, len));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(len));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {2, 4, 6})
    for (int len : {8, 32, 64}) b->Args({n, len});
}

}  // namespace

BENCHMARK(bm_convolve<kernels::convolve_serial>)->Name("convolve_serial")->Apply(sizes)->UseRealTime();
BENCHMARK(bm_convolve<kernels::convolve_parallel>)->Name("convolve_parallel")->Apply(sizes)->UseRealTime();

BENCHMARK_MAIN();
