// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>

#include "kfree/euler_product.hpp"
#include "kfree/quadrature.hpp"
#include "kfree/sieve.hpp"

using namespace kfree;

static void BM_count_kfree(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_kfree(x, 2));
}
BENCHMARK(BM_count_kfree)->Arg(10'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

static void BM_count_kfree_serial(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::count_kfree(x, 2));
}
BENCHMARK(BM_count_kfree_serial)->Arg(10'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

static void BM_class_counts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(class_counts(10'000'000, 100'000, 2));
}
BENCHMARK(BM_class_counts)->Unit(benchmark::kMillisecond);

static void BM_class_counts_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::class_counts(10'000'000, 100'000, 2));
}
BENCHMARK(BM_class_counts_serial)->Unit(benchmark::kMillisecond);

namespace {

// The q = 1 product behind F*(-1/2) for k = 2.
EulerProductSpec fstar_spec(std::uint64_t P) {
  EulerProductSpec spec;
  spec.prime_cutoff = P;
  spec.factor = [](std::uint64_t p) { return 1 - 2 / (Real(p) * Real(p) + Real(p)); };
  spec.log_factor = [](std::uint64_t p) {
    const long double x = static_cast<long double>(p);
    return std::log1p(-2.0L / (x * x + x));
  };
  return spec;
}

}  // namespace

static void BM_euler_product(benchmark::State& state) {
  const EulerProductSpec spec = fstar_spec(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(euler_product(spec));
}
BENCHMARK(BM_euler_product)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_euler_product_serial(benchmark::State& state) {
  const EulerProductSpec spec = fstar_spec(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(euler_product_serial(spec));
}
BENCHMARK(BM_euler_product_serial)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

namespace {

Complex oscillatory(double t) { return std::exp(Complex(0, 40 * t)) / Complex(2, t); }

}  // namespace

static void BM_integrate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integrate(oscillatory, 0, 2000, PanelPolicy{}));
}
BENCHMARK(BM_integrate)->Unit(benchmark::kMillisecond);

static void BM_integrate_serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integrate_serial(oscillatory, 0, 2000, PanelPolicy{}));
}
BENCHMARK(BM_integrate_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
