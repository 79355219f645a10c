#include <benchmark/benchmark.h>

#include "padicslopes/bounds.hpp"
#include "padicslopes/harness.hpp"
#include "padicslopes/newton.hpp"

using namespace padicslopes;

namespace {

QuotientShape bench_shape(long t, long n) {
  std::vector<long> a(static_cast<size_t>(t), 0);
  for (long i = 0; i < std::min(t, n); ++i) a[static_cast<size_t>(i)] = n - i;
  return QuotientShape(n, std::move(a));
}

void BM_CharPoly(benchmark::State& state) {
  long t = state.range(0);
  IntegerMatrix m = gen_matrix(bench_shape(t, 4), Prime(3), 7, 6);
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(m));
  state.SetComplexityN(t);
}
BENCHMARK(BM_CharPoly)->Arg(8)->Arg(16)->Arg(24)->Arg(32)->Complexity();

void BM_SnfExponents(benchmark::State& state) {
  long t = state.range(0);
  IntegerMatrix m = gen_matrix(bench_shape(t, 4), Prime(3), 11, 6);
  for (auto _ : state) benchmark::DoNotOptimize(snf_p_exponents(m, Prime(3)));
}
BENCHMARK(BM_SnfExponents)->Arg(16)->Arg(32)->Arg(64);

void BM_NewtonPolygon(benchmark::State& state) {
  long t = state.range(0);
  IntegerMatrix m = gen_matrix(bench_shape(t, 4), Prime(2), 3, 6);
  CharPolyCoeffs cp = char_poly(m);
  for (auto _ : state) benchmark::DoNotOptimize(newton_polygon(cp, Prime(2)));
}
BENCHMARK(BM_NewtonPolygon)->Arg(16)->Arg(64);

void BM_DivisibilityTrial(benchmark::State& state) {
  SigmaProfile prof = sigma_profile(2, 2, 4);
  QuotientShape shape = shape_from_profile(prof, prof.total() + 2);
  Prime p(5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    IntegerMatrix u = gen_matrix(shape, p, mix_seed(1, seed++), 6);
    benchmark::DoNotOptimize(verify_divisibility(u, shape, p));
  }
}
BENCHMARK(BM_DivisibilityTrial);

void BM_CriticalSlope(benchmark::State& state) {
  SigmaProfile prof = sigma_profile(3, 2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(critical_slope_c(prof));
}
BENCHMARK(BM_CriticalSlope)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
