#include <gtest/gtest.h>

#include <cmath>

#include "surge/patch.hpp"
#include "surge/solver.hpp"
#include "surge/sweep.hpp"

using namespace surge;

namespace {

const LevelGeometry& geo() {
  static const GeoDomain d{-3.0, 3.0, 10.0, 16.0, 60, 60};
  static const LevelGeometry g(d, 6.367e6, 60, 60);
  return g;
}

// bumpy bed, a dry island and a moving surface hump
Patch test_patch() {
  Patch p(1, IndexBox{5, 7, 45, 39}, geo());
  const int gw = kGhostWidth;
  for (int j = -gw; j < p.ny() + gw; ++j)
    for (int i = -gw; i < p.nx() + gw; ++i) {
      const double x = i - 20.0, y = j - 16.0;
      p.b(i, j) = -50.0 + 10.0 * std::sin(0.3 * i) + 60.0 * std::exp(-((x - 8) * (x - 8) + y * y) / 8.0);
      const double eta = 0.8 * std::exp(-(x * x + y * y) / 20.0);
      p.h(i, j) = std::max(0.0, eta - p.b(i, j));
      p.hu(i, j) = p.h(i, j) > 1e-3 ? 0.2 * p.h(i, j) * std::cos(0.2 * j) : 0.0;
      p.hv(i, j) = p.h(i, j) > 1e-3 ? -0.1 * p.h(i, j) : 0.0;
    }
  return p;
}

void expect_bitwise(const Array2D& a, const Array2D& b) {
  ASSERT_EQ(a.raw().size(), b.raw().size());
  for (size_t k = 0; k < a.raw().size(); ++k) ASSERT_EQ(a.raw()[k], b.raw()[k]) << "index " << k;
}

}  // namespace

TEST(Sweep, ParallelMatchesReferenceBitwise) {
  for (bool x_first : {true, false}) {
    Patch a = test_patch(), b = test_patch();
    SolverOptions oa, ob;
    oa.mode = SweepMode::Reference;
    ob.mode = SweepMode::Parallel;
    const double dt = compute_stable_dt(a, 0.8, oa.g, oa.dry_tolerance);
    const auto ra = step_hyperbolic(a, dt, oa, x_first, true);
    const auto rb = step_hyperbolic(b, dt, ob, x_first, true);
    EXPECT_EQ(ra.max_courant, rb.max_courant);
    expect_bitwise(a.h, b.h);
    expect_bitwise(a.hu, b.hu);
    expect_bitwise(a.hv, b.hv);
    ASSERT_EQ(a.fluxes.x_left, b.fluxes.x_left);
    ASSERT_EQ(a.fluxes.y_right, b.fluxes.y_right);
  }
}

TEST(Sweep, FirstOrderAlsoMatches) {
  Patch a = test_patch(), b = test_patch();
  SolverOptions o;
  o.second_order = false;
  o.mode = SweepMode::Reference;
  step_hyperbolic(a, 20.0, o, true, false);
  o.mode = SweepMode::Parallel;
  step_hyperbolic(b, 20.0, o, true, false);
  expect_bitwise(a.h, b.h);
}

TEST(Sweep, MassChangeEqualsBoundaryFlux) {
  Patch p = test_patch();
  SolverOptions o;
  const double m0 = p.mass();
  step_hyperbolic(p, 10.0, o, true, true);
  // interior faces cancel; only the patch-edge contributions change the mass
  double edge = 0.0;
  const auto& f = p.fluxes;
  for (int j = 0; j < p.ny(); ++j) edge += f.x_right[f.xf(0, j)] + f.x_left[f.xf(p.nx(), j)];
  for (int i = 0; i < p.nx(); ++i) edge += f.y_right[f.yf(i, 0)] + f.y_left[f.yf(i, p.ny())];
  EXPECT_NEAR(p.mass() - m0, -edge, 1e-9 * m0);
}

TEST(Sweep, CflViolationRestoresState) {
  Patch p = test_patch();
  const Patch before = p;
  SolverOptions o;
  const double dt = compute_stable_dt(p, 0.9, o.g, o.dry_tolerance);
  EXPECT_THROW(step_hyperbolic(p, 5.0 * dt, o, true, true), CflViolation);
  expect_bitwise(p.h, before.h);
  expect_bitwise(p.hu, before.hu);
}

TEST(Sweep, StableDtFollowsGravitySpeed) {
  Patch p(1, IndexBox{0, 0, 4, 4}, geo());
  p.b.fill(-100.0);
  p.h.fill(100.0);
  const double dt = compute_stable_dt(p, 1.0, 9.81, 1e-3);
  double size = 1e300;
  for (int j = 0; j < 4; ++j) {
    const auto m = p.geometry().metric(j);
    size = std::min({size, m.dx_m, m.dy_m});
  }
  EXPECT_NEAR(dt, size / std::sqrt(9.81 * 100.0), 1e-9 * dt);
}
