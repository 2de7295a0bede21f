#include <gtest/gtest.h>

#include <cmath>

#include "surge/patch.hpp"
#include "surge/solver.hpp"
#include "surge/sources.hpp"

using namespace surge;

namespace {

const LevelGeometry& geo() {
  static const GeoDomain d{-91.0, -89.0, 29.0, 31.0, 8, 8};
  static const LevelGeometry g(d, 6.367e6, 8, 8);
  return g;
}

Patch uniform_patch(double h, double hu, double hv) {
  Patch p(1, IndexBox{0, 0, 8, 8}, geo());
  p.b.fill(-h);
  p.h.fill(h);
  p.hu.fill(hu);
  p.hv.fill(hv);
  return p;
}

StormFields fields_for(const Patch& p, double wx, double wy, double pressure) {
  StormFields f{Array2D(p.nx(), p.ny(), kGhostWidth), Array2D(p.nx(), p.ny(), kGhostWidth),
                Array2D(p.nx(), p.ny(), kGhostWidth)};
  f.wind_x.fill(wx);
  f.wind_y.fill(wy);
  f.pressure.fill(pressure);
  return f;
}

}  // namespace

TEST(Drag, PiecewiseLinearWithCap) {
  EXPECT_NEAR(wind_drag(0.0), 7.5e-4, 1e-18);
  EXPECT_NEAR(wind_drag(10.0), 1.42e-3, 1e-15);
  EXPECT_DOUBLE_EQ(wind_drag(40.0), 2.0e-3);
  const double cross = (2.0 - 0.75) / 0.067;
  EXPECT_LT(wind_drag(cross - 1e-6), 2.0e-3);
  EXPECT_DOUBLE_EQ(wind_drag(cross + 1e-6), 2.0e-3);
}

TEST(Wind, DepthScaledIncrement) {
  // 100 m of water, 20 m/s wind, one second: drag is capped
  Patch p = uniform_patch(100.0, 0.0, 0.0);
  PhysConfig phys;
  apply_wind(p, 1.0, fields_for(p, 20.0, 0.0, 101300.0), phys);
  const double expect = (100.0 / 1025.0) * 1.15 * 2.0e-3 * 20.0 * 20.0;
  EXPECT_NEAR(p.hu(3, 3), expect, 1e-15);
  EXPECT_NEAR(p.hu(3, 3), 0.0898, 1e-4);
  EXPECT_EQ(p.hv(3, 3), 0.0);
}

TEST(Wind, StressFormIsDepthIndependentAboveTaper) {
  PhysConfig phys;
  phys.wind_depth_scaled = false;
  phys.wind_taper_depth = 2.0;
  Patch deep = uniform_patch(100.0, 0.0, 0.0), thin = uniform_patch(0.5, 0.0, 0.0);
  apply_wind(deep, 10.0, fields_for(deep, 0.0, -30.0, 101300.0), phys);
  apply_wind(thin, 10.0, fields_for(thin, 0.0, -30.0, 101300.0), phys);
  const double tau = 10.0 * 1.15 * 2.0e-3 * 30.0 * 30.0 / 1025.0;
  EXPECT_NEAR(deep.hv(1, 1), -tau, 1e-14);
  EXPECT_NEAR(thin.hv(1, 1), -0.25 * tau, 1e-14);
}

TEST(Friction, CoefficientMatchesFormula) {
  FrictionConfig cfg;
  const double h = 10.0, n = 0.025, mom = 5.0;
  const double bracket = 1.0 - std::pow(0.2, 10.0);
  const double expect = 9.81 * n * n * std::pow(h, -7.0 / 3.0) * mom * std::pow(bracket, (4.0 / 3.0) / 10.0);
  EXPECT_NEAR(friction_coefficient(h, n, cfg, mom), expect, 1e-15);
  EXPECT_NEAR(friction_coefficient(h, n, cfg, mom), 1.4e-4, 5e-6);
}

TEST(Friction, ClampedBracketVanishesAtBreakDepth) {
  FrictionConfig cfg;
  EXPECT_EQ(friction_coefficient(2.0, 0.03, cfg, 1.0), 0.0);
  EXPECT_EQ(friction_coefficient(1.0, 0.03, cfg, 1.0), 0.0);
  EXPECT_GT(friction_coefficient(2.5, 0.03, cfg, 1.0), 0.0);
  EXPECT_EQ(friction_coefficient(50.0, 0.0, cfg, 1.0), 0.0);
  EXPECT_THROW(friction_coefficient(0.0, 0.03, cfg, 1.0), std::domain_error);
}

TEST(Friction, HybridBracketEnhancesShallowDrag) {
  FrictionConfig cfg;
  cfg.clamped_bracket = false;
  const double h = 1.0;
  const double manning_only = 9.81 * 0.03 * 0.03 * std::pow(h, -7.0 / 3.0);
  const double enhanced = manning_only * std::pow(1.0 + std::pow(2.0, 10.0), 0.4 / 3.0);
  EXPECT_NEAR(friction_coefficient(h, 0.03, cfg, 1.0), enhanced, 1e-14);
  // deep water: bracket tends to one from either side
  FrictionConfig clamped;
  EXPECT_NEAR(friction_coefficient(500.0, 0.03, cfg, 1.0) / friction_coefficient(500.0, 0.03, clamped, 1.0), 1.0,
              1e-12);
}

TEST(Friction, ImplicitUpdateHalvesAtUnitProduct) {
  Patch p = uniform_patch(10.0, 3.0, -4.0);
  FrictionConfig cfg;
  PhysConfig phys;
  manning_field(p, cfg, phys.sea_level);
  const double d = friction_coefficient(10.0, p.manning(0, 0), cfg, 5.0);
  apply_friction(p, 1.0 / d, cfg, phys);
  EXPECT_NEAR(p.hu(2, 2), 1.5, 1e-12);
  EXPECT_NEAR(p.hv(2, 2), -2.0, 1e-12);
}

TEST(Manning, RulesAndRegions) {
  FrictionConfig cfg;
  EXPECT_EQ(manning_value(1.0, 0.0, 0.0, cfg, 0.0), 0.030);
  EXPECT_EQ(manning_value(-1.0, 0.0, 0.0, cfg, 0.0), 0.022);
  EXPECT_EQ(manning_value(0.5, 0.0, 0.0, cfg, 1.0), 0.022);  // contours follow sea level
  cfg.regions.push_back({-98.0, -90.0, 25.25, 30.0, shelf_manning_rules()});
  EXPECT_EQ(manning_value(-2.0, -95.0, 28.0, cfg, 0.0), 0.030);
  EXPECT_EQ(manning_value(-50.0, -95.0, 28.0, cfg, 0.0), 0.012);
  EXPECT_EQ(manning_value(-500.0, -95.0, 28.0, cfg, 0.0), 0.022);
  EXPECT_EQ(manning_value(-50.0, -85.0, 28.0, cfg, 0.0), 0.022);
  FrictionConfig bad;
  bad.default_rules = {{0.0, 0.03}};
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Coriolis, TruncatedRotationFactor) {
  Patch p = uniform_patch(50.0, 2.0, 1.0);
  PhysConfig phys;
  const double dt = 600.0;
  apply_coriolis(p, dt, phys);
  for (int j = 0; j < p.ny(); ++j) {
    const double x = 2.0 * phys.omega * std::sin(p.lat(j) * kPi / 180.0) * dt;
    const double factor = std::sqrt(1.0 - std::pow(x, 6) / 72.0 + std::pow(x, 8) / 576.0);
    const double mag = std::hypot(p.hu(0, j), p.hv(0, j));
    EXPECT_NEAR(mag / std::hypot(2.0, 1.0), factor, 1e-14);
    // clockwise in the northern hemisphere
    EXPECT_LT(p.hv(0, j) * 2.0 - p.hu(0, j) * 1.0, 0.0);
  }
}

TEST(Pressure, CentredGradientDrivesFlowTowardsLowPressure) {
  Patch p = uniform_patch(20.0, 0.0, 0.0);
  StormFields f = fields_for(p, 0.0, 0.0, 0.0);
  const int gw = kGhostWidth;
  for (int j = -gw; j < p.ny() + gw; ++j)
    for (int i = -gw; i < p.nx() + gw; ++i) f.pressure(i, j) = 100000.0 + 3.0 * i;
  PhysConfig phys;
  apply_pressure(p, 2.0, f, phys);
  for (int j = 0; j < p.ny(); ++j) {
    const auto m = cell_size_meters(p.lat(j), geo().dlon(), geo().dlat(), phys.earth_radius);
    EXPECT_NEAR(p.hu(4, j), -2.0 * (20.0 / 1025.0) * 3.0 / m.dx_m, 1e-15);
    EXPECT_NEAR(p.hv(4, j), 0.0, 1e-18);
  }
}

TEST(Sources, DryCellsAreUntouched) {
  Patch p = uniform_patch(5e-4, 0.0, 0.0);
  PhysConfig phys;
  FrictionConfig fr;
  StormFields f = fields_for(p, 30.0, 30.0, 100000.0);
  apply_wind(p, 10.0, f, phys);
  apply_coriolis(p, 10.0, phys);
  EXPECT_EQ(p.hu(1, 1), 0.0);
  EXPECT_EQ(p.hv(1, 1), 0.0);
}
