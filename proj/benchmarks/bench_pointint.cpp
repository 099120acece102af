#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pointint/bogolyubov.hpp"
#include "pointint/gaussian.hpp"
#include "pointint/greenfn.hpp"
#include "pointint/oracle.hpp"
#include "pointint/tau.hpp"

using namespace pointint;

namespace {

PointInteractionConfig chain(int n) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> gap(0.2, 3.0), v(0.2, 5.0);
  std::vector<PointInteraction> pts;
  double a = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j > 0) a += gap(rng);
    pts.push_back({a, v(rng)});
  }
  return PointInteractionConfig(pts);
}

void BM_ResolventKernel(benchmark::State& state) {
  const auto cfg = chain(static_cast<int>(state.range(0)));
  const SpectralParameter sp(cplx(1.2, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(greenfn::resolvent_kernel(sp, cfg, 0.3, 1.7));
}
BENCHMARK(BM_ResolventKernel)->RangeMultiplier(2)->Range(1, 64);

void BM_TransferGreen(benchmark::State& state) {
  const auto cfg = chain(static_cast<int>(state.range(0)));
  const SpectralParameter sp(cplx(1.2, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::transfer_green(sp, cfg, 0.3, 1.7));
}
BENCHMARK(BM_TransferGreen)->RangeMultiplier(2)->Range(1, 64);

void BM_ResolventViaFields(benchmark::State& state) {
  const auto cfg = chain(3);
  const SpectralParameter sp(1.0);
  bogolyubov::FieldsOptions fo;
  fo.dimension = static_cast<int>(state.range(0));
  fo.check_convergence = false;
  for (auto _ : state) benchmark::DoNotOptimize(bogolyubov::resolvent_via_fields(sp, cfg, 0.3, 1.7, fo));
}
BENCHMARK(BM_ResolventViaFields)->Arg(32)->Arg(64)->Arg(128);

void BM_CorrelatorDet(benchmark::State& state) {
  const auto cfg = chain(static_cast<int>(state.range(0)));
  const SpectralParameter sp(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(greenfn::correlator_det(sp, cfg));
}
BENCHMARK(BM_CorrelatorDet)->RangeMultiplier(4)->Range(1, 64);

void BM_CorrelatorFusion(benchmark::State& state) {
  const auto cfg = chain(static_cast<int>(state.range(0)));
  const SpectralParameter sp(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(bogolyubov::delta_correlator_via_fusion(sp, cfg));
}
BENCHMARK(BM_CorrelatorFusion)->RangeMultiplier(2)->Range(1, 16);

void BM_FormFactorClosed(benchmark::State& state) {
  const bogolyubov::BogolyubovParams p{cplx(0.4, 0.1), cplx(-0.3, 0.0), cplx(0.2, -0.5)};
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bogolyubov::form_factor(k, k, p));
}
BENCHMARK(BM_FormFactorClosed)->Arg(4)->Arg(30)->Arg(150);

void BM_FormFactorTableRecursive(benchmark::State& state) {
  const bogolyubov::BogolyubovParams p{cplx(0.4, 0.1), cplx(-0.3, 0.0), cplx(0.2, -0.5)};
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bogolyubov::form_factor_table_recursive(k, k, p));
}
BENCHMARK(BM_FormFactorTableRecursive)->Arg(10)->Arg(30);

void BM_BuildOperator(benchmark::State& state) {
  const oracle::FockTruncation t(static_cast<int>(state.range(0)));
  const auto p = bogolyubov::delta_params(2.0, SpectralParameter(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::build_operator(p, t));
}
BENCHMARK(BM_BuildOperator)->Arg(32)->Arg(64)->Arg(128);

void BM_TauCollapsed(benchmark::State& state) {
  const auto cfg = chain(static_cast<int>(state.range(0)));
  const SpectralParameter sp(cplx(1.0, 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(tau::tau_collapsed(sp, cfg));
}
BENCHMARK(BM_TauCollapsed)->RangeMultiplier(4)->Range(1, 64);

void BM_TauViaM(benchmark::State& state) {
  const auto cfg = chain(static_cast<int>(state.range(0)));
  const SpectralParameter sp(cplx(1.0, 0.4));
  const auto loc = tau::Localization::around(cfg.positions());
  for (auto _ : state) benchmark::DoNotOptimize(tau::tau_via_m(sp, loc, cfg));
}
BENCHMARK(BM_TauViaM)->RangeMultiplier(4)->Range(1, 64);

void BM_MonteCarlo(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto q = gaussian::random_quadratic_form<double>(2, 2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian::moment_check_mc(q, static_cast<std::size_t>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
