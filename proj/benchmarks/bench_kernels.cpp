#include <benchmark/benchmark.h>

#include "guedge/airy_ops.hpp"
#include "guedge/gue_mc.hpp"
#include "guedge/hermite_n.hpp"
#include "guedge/painleve2.hpp"
#include "guedge/specfun.hpp"

namespace {

void BM_AiryEval(benchmark::State& state) {
  double x = -10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(guedge::airy_both(x));
    x += 0.37;
    if (x > 12.0) x = -10.0;
  }
}
BENCHMARK(BM_AiryEval);

void BM_HermitePhi(benchmark::State& state) {
  const int n = state.range(0);
  const double x = std::sqrt(2.0 * n);  // turning point, worst case
  for (auto _ : state) benchmark::DoNotOptimize(guedge::hermite_phi(n, x));
  state.SetComplexityN(n);
}
BENCHMARK(BM_HermitePhi)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_FredholmDetAiry(benchmark::State& state) {
  const int m = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(guedge::f2_cdf(-2.0, guedge::F2Method::determinant, m));
  state.SetComplexityN(m);
}
BENCHMARK(BM_FredholmDetAiry)->RangeMultiplier(2)->Range(50, 400)->Complexity();

void BM_Functionals(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(guedge::functionals(-2.0));
}
BENCHMARK(BM_Functionals);

void BM_CdfViaQp(benchmark::State& state) {
  const guedge::ScalingMap map{8, 0.0};
  const double t = map.tau(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(guedge::cdf_via_qp(8, t));
}
BENCHMARK(BM_CdfViaQp)->Unit(benchmark::kMillisecond);

void BM_HmSolve(benchmark::State& state) {
  const int npts = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(guedge::hm_solve(-12.0, 8.0, npts));
  state.SetComplexityN(npts);
}
BENCHMARK(BM_HmSolve)->Arg(150)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_SampleLambdaMax(benchmark::State& state) {
  const int n = state.range(0);
  long index = 0;
  std::vector<double> d, e;
  for (auto _ : state) {
    guedge::sample_tridiagonal(n, 42, index++, d, e);
    benchmark::DoNotOptimize(guedge::top_eigenvalue_tridiag(d, e));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleLambdaMax)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
