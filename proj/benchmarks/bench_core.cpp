#include <benchmark/benchmark.h>

#include "ophh/hermitian.hpp"
#include "ophh/inequality.hpp"
#include "ophh/rng.hpp"
#include "ophh/scalar_convexity.hpp"
#include "ophh/scalar_function.hpp"
#include "ophh/segment.hpp"

using namespace ophh;

namespace {

HermitianMatrix fixture_matrix(int dim, std::uint64_t stream) {
  RngStream rng(1234, stream);
  return random_hermitian(dim, 0.1, 10.0, rng);
}

void BM_decompose(benchmark::State& state) {
  const HermitianMatrix a = fixture_matrix(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(a));
  }
}
BENCHMARK(BM_decompose)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_apply_power(benchmark::State& state) {
  const HermitianMatrix a = fixture_matrix(static_cast<int>(state.range(0)), 1);
  const ScalarFunction f = ScalarFunction::power(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_function(f, a));
  }
}
BENCHMARK(BM_apply_power)->Arg(2)->Arg(4)->Arg(16);

void BM_random_qualified_pair(benchmark::State& state) {
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(99, stream++);
    benchmark::DoNotOptimize(random_qualified_pair(static_cast<int>(state.range(0)), rng));
  }
}
BENCHMARK(BM_random_qualified_pair)->Arg(2)->Arg(4)->Arg(8);

void BM_operator_integral_power(benchmark::State& state) {
  RngStream rng(7, 0);
  auto [a, b] = random_qualified_pair(static_cast<int>(state.range(0)), rng);
  const ScalarFunction f = ScalarFunction::power(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(operator_integral(f, a, b));
  }
}
BENCHMARK(BM_operator_integral_power)->Arg(2)->Arg(4)->Arg(8);

void BM_paired_scalar_integral(benchmark::State& state) {
  RngStream rng(8, 0);
  auto [a, b] = random_qualified_pair(3, rng);
  const ComplexVector x = random_unit_vector(3, rng);
  const ScalarFunction f = ScalarFunction::power(0.3);
  const ScalarFunction g = ScalarFunction::power(0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(paired_scalar_integral(f, g, a, b, x));
  }
}
BENCHMARK(BM_paired_scalar_integral);

void BM_theorem6_check(benchmark::State& state) {
  RngStream rng(9, 0);
  auto [a, b] = random_qualified_pair(4, rng);
  const ScalarFunction f = ScalarFunction::power(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_theorem6(f, 0.5, a, b));
  }
}
BENCHMARK(BM_theorem6_check);

void BM_second_sense_falsifier(benchmark::State& state) {
  const ScalarFunction f = ScalarFunction::example1(1.0, 1.0, 0.5, 0.5);
  const int density = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_s_convex_second(f, 0.5, density));
  }
}
BENCHMARK(BM_second_sense_falsifier)->Arg(51)->Arg(101)->Arg(201);

}  // namespace

BENCHMARK_MAIN();
