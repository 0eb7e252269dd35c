// Microbenchmarks for the hot paths: exact series arithmetic, Moebius
// inversion of the product formula, class-number and orbit machinery, and
// one Rademacher partial sum.  Numbers are indicative only; correctness
// lives in the test suite.

#include <benchmark/benchmark.h>

#include "thmoon/borcherds.hpp"
#include "thmoon/bqf.hpp"
#include "thmoon/bqf_orbits.hpp"
#include "thmoon/hauptmodul.hpp"
#include "thmoon/rademacher.hpp"

using namespace thmoon;

namespace {

void BM_ThompsonSeries(benchmark::State& state) {
  long order = state.range(0);
  for (auto _ : state) {
    FracSeries t = thompson_series("12A", order);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_ThompsonSeries)->Arg(20)->Arg(60);

void BM_SeriesMultiply(benchmark::State& state) {
  long order = state.range(0);
  FracSeries t = thompson_series("1A", order);
  for (auto _ : state) {
    FracSeries sq = t * t;
    benchmark::DoNotOptimize(sq);
  }
}
BENCHMARK(BM_SeriesMultiply)->Arg(30)->Arg(90);

void BM_InvertProduct(benchmark::State& state) {
  long order = state.range(0);
  for (auto _ : state) {
    CoeffProvider cp = weight_half_3c_provider(order);
    benchmark::DoNotOptimize(cp);
  }
}
BENCHMARK(BM_InvertProduct)->Arg(11)->Arg(30);

void BM_HurwitzClassNumbers(benchmark::State& state) {
  for (auto _ : state) {
    Rat sum = 0;
    for (long d = 0; d <= state.range(0); ++d) sum += hurwitz_class_number(d);
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_HurwitzClassNumbers)->Arg(200);

void BM_OrbitEnumeration(benchmark::State& state) {
  SeriesEvaluator jay(
      [](long order) { return standard_series(StdSeriesKind::J, order); });
  GroupSpec g = GroupSpec::parse("1");
  auto fp = jay.at_bits_reduced(192, 1);
  for (auto _ : state) {
    OrbitDecomposition dec = enumerate_orbits(-state.range(0), g, fp, 192);
    benchmark::DoNotOptimize(dec);
  }
}
BENCHMARK(BM_OrbitEnumeration)->Arg(47)->Arg(84);

void BM_RademacherPartialSum(benchmark::State& state) {
  RademacherSpec spec;
  spec.cosets = {{1, 1}};
  spec.prec_bits = 128;
  for (auto _ : state) {
    CoeffEstimate est =
        rademacher_coefficient(spec, 1, Rat(1, 4), state.range(0));
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_RademacherPartialSum)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
