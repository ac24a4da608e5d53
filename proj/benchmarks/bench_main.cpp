#include <benchmark/benchmark.h>

#include "qcdist/bounds.hpp"
#include "qcdist/distortion.hpp"
#include "qcdist/elliptic.hpp"
#include "qcdist/modulus.hpp"

namespace {

using namespace qcdist;

void BM_EllintK(benchmark::State& state) {
  const UnitRadius r(0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ellint_k(r));
  }
}
BENCHMARK(BM_EllintK);

void BM_EllintAll(benchmark::State& state) {
  const UnitRadius r(0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ellint_all(r));
  }
}
BENCHMARK(BM_EllintAll);

void BM_Mu(benchmark::State& state) {
  const UnitRadius r(0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mu(r));
  }
}
BENCHMARK(BM_Mu);

void BM_MuInverse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mu_inverse(2.5));
  }
}
BENCHMARK(BM_MuInverse);

void BM_Lambda(benchmark::State& state) {
  const Dilatation k(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambda(k));
  }
}
BENCHMARK(BM_Lambda)->Arg(2)->Arg(10)->Arg(100);

void BM_EtaLog(benchmark::State& state) {
  const Dilatation k(50.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta_log(k, 3.0));
  }
}
BENCHMARK(BM_EtaLog);

void BM_SandwichPoint(benchmark::State& state) {
  const Dilatation k(3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta_sandwich(k, 7.0));
  }
}
BENCHMARK(BM_SandwichPoint);

void BM_VerifySmallGrid(benchmark::State& state) {
  GridSpec spec;
  spec.k_range = Range{1.5, 10.0, 4, true};
  spec.t_range = Range{0.1, 10.0, 4, true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_grid(spec, 1));
  }
}
BENCHMARK(BM_VerifySmallGrid);

}  // namespace

BENCHMARK_MAIN();
