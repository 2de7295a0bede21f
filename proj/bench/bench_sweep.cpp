// Reference (serial) against OpenMP-parallel dimensional sweeps on one patch.
#include <benchmark/benchmark.h>

#include <cmath>

#include "surge/patch.hpp"
#include "surge/solver.hpp"
#include "surge/sweep.hpp"

using namespace surge;

namespace {

Patch make_patch(int n) {
  static const GeoDomain dom{-5.0, 5.0, 20.0, 30.0, 512, 512};
  static const LevelGeometry geo(dom, 6.367e6, 512, 512);
  Patch p(1, IndexBox{0, 0, n, n}, geo);
  const int g = kGhostWidth;
  for (int j = -g; j < n + g; ++j)
    for (int i = -g; i < n + g; ++i) {
      p.b(i, j) = -200.0 + 50.0 * std::sin(0.05 * i) * std::cos(0.07 * j);
      const double bump = std::exp(-((i - n / 2.0) * (i - n / 2.0) + (j - n / 3.0) * (j - n / 3.0)) / (0.01 * n * n));
      p.h(i, j) = -p.b(i, j) + 0.5 * bump;
      p.hu(i, j) = 0.1 * p.h(i, j) * bump;
      p.hv(i, j) = -0.05 * p.h(i, j) * bump;
    }
  p.fluxes.resize(n, n);
  return p;
}

void run_step(benchmark::State& state, SweepMode mode) {
  const int n = static_cast<int>(state.range(0));
  const Patch base = make_patch(n);
  SolverOptions opt;
  opt.mode = mode;
  const double dt = compute_stable_dt(base, 0.8, opt.g, opt.dry_tolerance);
  for (auto _ : state) {
    state.PauseTiming();
    Patch p = base;
    state.ResumeTiming();
    step_hyperbolic(p, dt, opt, true, true);
    benchmark::DoNotOptimize(p.h(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * n);
}

void BM_StepReference(benchmark::State& s) { run_step(s, SweepMode::Reference); }
void BM_StepParallel(benchmark::State& s) { run_step(s, SweepMode::Parallel); }

}  // namespace

BENCHMARK(BM_StepReference)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepParallel)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
