#include <benchmark/benchmark.h>

#include "qbx/oracle.hpp"
#include "qbx/qbx.hpp"
#include "qbx/special.hpp"

using namespace qbx;

static void BM_BesselJBatch(benchmark::State& state) {
  const int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j_batch(n, 17.3));
}
BENCHMARK(BM_BesselJBatch)->Arg(16)->Arg(64)->Arg(200);

static void BM_Hankel1Batch(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(hankel1_batch(int(state.range(0)), 2.0));
}
BENCHMARK(BM_Hankel1Batch)->Arg(16)->Arg(64);

static void BM_SphHarmTable(benchmark::State& state) {
  const int l = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sph_harm_table(l, 2.3, 0.85, true));
}
BENCHMARK(BM_SphHarmTable)->Arg(8)->Arg(16)->Arg(32);

static void BM_GaussRule(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(gauss_rule(int(state.range(0))));
}
BENCHMARK(BM_GaussRule)->Arg(8)->Arg(16)->Arg(64);

static void BM_CauchyCoeffs(benchmark::State& state) {
  const Curve c = make_curve("starfish(1;0.3;5)");
  const Density phi = Density::cos_n(3);
  const CenterPlacement ctr = place_center(c, 0.4, 0.05, Side::interior);
  const GaussRule rule = gauss_rule(16);
  const int M = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(cauchy_coeffs(c, phi, ctr, 5, M, rule));
  state.SetItemsProcessed(state.iterations() * M * rule.q);
}
BENCHMARK(BM_CauchyCoeffs)->Arg(64)->Arg(256)->Arg(1024);

static void BM_Helmholtz2dCoeffs(benchmark::State& state) {
  const Curve c = Curve::circle(1.0);
  const Density phi = Density::exp_in(3);
  const CenterPlacement ctr = place_center(c, 0.7, 0.1, Side::interior);
  const GaussRule rule = gauss_rule(8);
  const int N = int(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        helmholtz2d_coeffs(c, phi, ctr, N, 128, rule, Layer::slp, 2.0));
}
BENCHMARK(BM_Helmholtz2dCoeffs)->Arg(3)->Arg(7)->Arg(15);

static void BM_EvalOnSurface2d(benchmark::State& state) {
  const Curve c = make_curve("starfish(1;0.3;5)");
  const Density phi = Density::cos_n(3);
  EvalParams p;
  p.N = 5;
  p.r = 0.05;
  p.M = int(state.range(0));
  p.q = 16;
  const KernelSpec kern = make_kernel("laplace_dlp");
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_on_surface(kern, c, phi, 0.4, p));
}
BENCHMARK(BM_EvalOnSurface2d)->Arg(128)->Arg(512);

static void BM_EvalOnSurface3d(benchmark::State& state) {
  const Sphere s{1.0};
  const Density3 phi = Density3::ylm(5, 2);
  EvalParams p;
  p.N = 4;
  p.r = 0.25;
  p.n_phi = int(state.range(0));
  p.n_theta = 2 * p.n_phi;
  const KernelSpec kern = make_kernel("helmholtz_slp", 3, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(eval_on_surface(kern, s, phi, 0.9, 1.1, p));
}
BENCHMARK(BM_EvalOnSurface3d)->Arg(48)->Arg(96);

BENCHMARK_MAIN();
