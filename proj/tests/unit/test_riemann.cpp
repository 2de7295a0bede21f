#include <gtest/gtest.h>

#include <cmath>

#include "surge/riemann.hpp"

using namespace surge;

namespace {
constexpr double g = 9.81;
constexpr double tol = 1e-3;

Vec3 normal_flux(const StateVector& q) {
  if (q.h < tol) return {0.0, 0.0, 0.0};
  const double u = q.hu / q.h;
  return {q.hu, q.hu * u + 0.5 * g * q.h * q.h, q.hv * u};
}
}  // namespace

TEST(Riemann, LakeAtRestIsBalancedToRounding) {
  // surface at 0.3 over a step, including awkward binary fractions; the
  // hydrostatic jump and the bed source cancel to rounding of g h^2 / 2
  const double bl = -1234.567, br = -0.1;
  const StateVector ql{0.3 - bl, 0.0, 0.0}, qr{0.3 - br, 0.0, 0.0};
  for (int normal : {0, 1}) {
    const auto s = solve_augmented(ql, qr, bl, br, normal, g, tol);
    const double scale = 0.5 * g * ql.h * ql.h;
    for (int m = 0; m < 3; ++m) {
      EXPECT_LE(std::abs(s.amdq[m]), 1e-15 * scale);
      EXPECT_LE(std::abs(s.apdq[m]), 1e-15 * scale);
    }
  }
}

TEST(Riemann, FwavesDecomposeFluxJumpFlatBed) {
  const StateVector ql{3.0, 1.5, -0.4}, qr{1.2, -0.6, 0.9};
  const auto s = solve_augmented(ql, qr, -5.0, -5.0, 0, g, tol);
  ASSERT_TRUE(s.active);
  const Vec3 fl = normal_flux(ql), fr = normal_flux(qr);
  Vec3 sum{0, 0, 0};
  for (const auto& z : s.fwaves)
    for (int m = 0; m < 3; ++m) sum[m] += z[m];
  for (int m = 0; m < 3; ++m) EXPECT_NEAR(sum[m], fr[m] - fl[m], 1e-12);
  for (int m = 0; m < 3; ++m) EXPECT_NEAR(s.amdq[m] + s.apdq[m], sum[m], 1e-12);
}

TEST(Riemann, BathymetrySourceEntersMomentumOnly) {
  const StateVector ql{10.0, 2.0, 0.0}, qr{6.0, 1.0, 0.0};
  const double bl = -10.0, br = -5.5;
  const auto s = solve_augmented(ql, qr, bl, br, 0, g, tol);
  const Vec3 fl = normal_flux(ql), fr = normal_flux(qr);
  Vec3 sum{0, 0, 0};
  for (const auto& z : s.fwaves)
    for (int m = 0; m < 3; ++m) sum[m] += z[m];
  EXPECT_NEAR(sum[0], fr[0] - fl[0], 1e-12);
  EXPECT_NEAR(sum[1], fr[1] - fl[1] - s.bathy_source, 1e-9);
  EXPECT_NE(s.bathy_source, 0.0);
}

TEST(Riemann, YNormalUsesHvAndKeepsGlobalOrder) {
  const StateVector qx{2.0, 0.7, -0.3}, qy{2.0, -0.3, 0.7};
  const StateVector rx{1.0, 0.2, 0.1}, ry{1.0, 0.1, 0.2};
  const auto sx = solve_augmented(qx, rx, -3.0, -3.0, 0, g, tol);
  const auto sy = solve_augmented(qy, ry, -3.0, -3.0, 1, g, tol);
  EXPECT_NEAR(sx.amdq[0], sy.amdq[0], 1e-13);
  EXPECT_NEAR(sx.amdq[1], sy.amdq[2], 1e-13);
  EXPECT_NEAR(sx.amdq[2], sy.amdq[1], 1e-13);
  EXPECT_NEAR(sx.apdq[1], sy.apdq[2], 1e-13);
}

TEST(Riemann, DryDryIsInactive) {
  const auto s = solve_augmented({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1.0, 2.0, 0, g, tol);
  EXPECT_FALSE(s.active);
}

TEST(Riemann, HighDryBankActsAsWall) {
  // water moving towards a bank it cannot overtop: no mass reaches the dry cell
  const StateVector ql{1.0, 0.5, 0.0}, qr{0.0, 0.0, 0.0};
  const auto s = solve_augmented(ql, qr, -1.0, 5.0, 0, g, tol);
  EXPECT_NEAR(s.apdq[0], 0.0, 1e-14);
  EXPECT_NEAR(s.apdq[1], 0.0, 1e-14);
  // the wet side sees a reflecting wall: net mass flux zero, momentum pushed back
  EXPECT_NEAR(s.amdq[0], -ql.hu, 1e-12);
}

TEST(Riemann, WetCellFloodsLowDryBank) {
  const StateVector ql{2.0, 0.0, 0.0}, qr{0.0, 0.0, 0.0};
  const auto s = solve_augmented(ql, qr, -1.0, -0.5, 0, g, tol);
  ASSERT_TRUE(s.active);
  EXPECT_LT(s.apdq[0], 0.0);  // the dry cell gains mass: q_r -= apdq
}

TEST(Riemann, NegativeDepthIsRejected) {
  EXPECT_THROW(solve_augmented({-1e-3, 0, 0}, {1, 0, 0}, 0, 0, 0, g, tol), std::invalid_argument);
}

TEST(Riemann, EinfeldtSpeedsForEqualStates) {
  const auto s = einfeldt_speeds(4.0, 1.0, 4.0, 1.0, g, tol);
  ASSERT_TRUE(s.has_value());
  EXPECT_NEAR(s->s_min, 1.0 - std::sqrt(g * 4.0), 1e-12);
  EXPECT_NEAR(s->s_max, 1.0 + std::sqrt(g * 4.0), 1e-12);
  EXPECT_FALSE(einfeldt_speeds(0.0, 0.0, 0.0, 0.0, g, tol).has_value());
}

TEST(Riemann, DrySideSpeedUsesTwoCelerity) {
  const auto s = einfeldt_speeds(1.0, 0.0, 0.0, 0.0, g, tol);
  ASSERT_TRUE(s.has_value());
  EXPECT_NEAR(s->s_max, 2.0 * std::sqrt(g), 1e-12);
}

TEST(Riemann, McLimiterValues) {
  EXPECT_DOUBLE_EQ(mc_limiter(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(mc_limiter(0.0), 0.0);
  EXPECT_DOUBLE_EQ(mc_limiter(0.5), 0.75);
  EXPECT_DOUBLE_EQ(mc_limiter(1.0), 1.0);
  EXPECT_DOUBLE_EQ(mc_limiter(5.0), 2.0);
  EXPECT_DOUBLE_EQ(wave_ratio({1, 0, 0}, {0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(wave_ratio({2, 0, 0}, {1, 0, 0}), 2.0);
}
