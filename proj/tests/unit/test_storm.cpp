#include <gtest/gtest.h>

#include <cmath>

#include "surge/geometry.hpp"
#include "surge/storm.hpp"

using namespace surge;

namespace {

const char* kTrack =
    "# two samples\n"
    "t_seconds,eye_lon,eye_lat,max_wind_mps,rmw_m,central_pressure_pa,radius_outer_m\n"
    "0, -90.0, 25.0, 40.0, 30000, 97000, 400000\n"
    "36000, -90.0, 28.0, 50.0, 50000, 95000, 500000  # later\n";

StormState steady(double b) {
  StormState s;
  s.sample = {0.0, -90.0, 25.0, 50.0, 40.0e3, 95000.0, 400.0e3};
  s.ambient_pressure = 101300.0;
  s.holland_b = b;
  return s;
}

}  // namespace

TEST(Holland, ParameterExample) {
  EXPECT_NEAR(holland_B(54.0, 0.0, 93500.0, 101300.0, 1.15), 1.169, 1e-3);
  // translation reduces the effective wind, floored at a tenth
  const double full = holland_B(54.0, 0.0, 93500.0, 101300.0, 1.15);
  EXPECT_NEAR(holland_B(54.0, 4.0, 93500.0, 101300.0, 1.15), full * (50.0 * 50.0) / (54.0 * 54.0), 1e-12);
  EXPECT_NEAR(holland_B(54.0, 100.0, 93500.0, 101300.0, 1.15), full * 0.01, 1e-12);
  EXPECT_THROW(holland_B(54.0, 0.0, 101300.0, 101300.0, 1.15), std::domain_error);
}

TEST(Holland, ProfilesAtRadiusOfMaximumWind) {
  for (double b : {1.0, 1.4, 2.2}) {
    const StormState s = steady(b);
    EXPECT_NEAR(wind_profile(40.0e3, s, 0.0), 50.0, 1e-12);
    EXPECT_NEAR(pressure_profile(40.0e3, s), 95000.0 + 6300.0 / std::exp(1.0), 1e-9);
  }
  const StormState s = steady(1.3);
  EXPECT_EQ(wind_profile(0.0, s, 1e-4), 0.0);
  EXPECT_EQ(pressure_profile(0.0, s), 95000.0);
  EXPECT_NEAR(pressure_profile(1e9, s), 101300.0, 0.05);
  // Coriolis lowers the gradient wind
  EXPECT_LT(wind_profile(80.0e3, s, 6e-5), wind_profile(80.0e3, s, 0.0));
  EXPECT_EQ(wind_profile(80.0e3, s, 6e-5), wind_profile(80.0e3, s, -6e-5));
}

TEST(Holland, RampHalfAtOuterRadius) {
  EXPECT_EQ(ramp(300.0e3, 300.0e3, 100.0e3), 0.5);
  EXPECT_NEAR(ramp(0.0, 300.0e3, 100.0e3), 0.5 * (1.0 + std::tanh(3.0)), 1e-15);
  EXPECT_LT(ramp(1e6, 300.0e3, 100.0e3), 1e-6);
}

TEST(StormPoint, CounterClockwiseNorthClockwiseSouth) {
  StormParams params;
  StormState s = steady(1.5);
  // east of the eye: wind blows north in the northern hemisphere
  const auto p = evaluate_point(-89.5, 25.0, s, params);
  EXPECT_GT(p.wind_y, 0.0);
  EXPECT_NEAR(p.wind_x, 0.0, 1e-9);
  s.sample.eye_lat = -25.0;
  const auto q = evaluate_point(-89.5, -25.0, s, params);
  EXPECT_LT(q.wind_y, 0.0);
  EXPECT_LT(p.pressure, 101300.0);
}

TEST(Track, ParseValidateInterpolate) {
  const auto track = parse_storm_track(kTrack);
  ASSERT_EQ(track.size(), 2u);
  EXPECT_EQ(track[1].rmw, 50000.0);
  StormParams params;
  EXPECT_NO_THROW(validate_track(track, params.ambient_pressure, "t"));
  const StormState mid = interpolate_track(track, 18000.0, params);
  EXPECT_DOUBLE_EQ(mid.sample.eye_lat, 26.5);
  EXPECT_DOUBLE_EQ(mid.sample.max_wind, 45.0);
  EXPECT_DOUBLE_EQ(mid.sample.central_pressure, 96000.0);
  const double north = params.earth_radius * 3.0 * kDegToRad / 36000.0;
  EXPECT_NEAR(mid.trans_y, north, 1e-12);
  EXPECT_NEAR(mid.trans_x, 0.0, 1e-12);
  EXPECT_NEAR(mid.holland_b, holland_B(45.0, north, 96000.0, 101300.0, params.rho_air), 1e-12);
  // after the last sample the eye keeps moving at the final translation speed
  const StormState late = interpolate_track(track, 36000.0 + 3600.0, params);
  EXPECT_NEAR(late.sample.eye_lat, 28.0 + 0.3, 1e-12);
  EXPECT_EQ(late.sample.max_wind, 50.0);
  EXPECT_THROW(interpolate_track(track, -1.0, params), InputError);
}

TEST(Track, RejectsBadInput) {
  EXPECT_THROW(parse_storm_track("t,x\n1,2\n"), InputError);
  EXPECT_THROW(parse_storm_track(""), InputError);
  const std::string header = "t_seconds,eye_lon,eye_lat,max_wind_mps,rmw_m,central_pressure_pa,radius_outer_m\n";
  EXPECT_THROW(parse_storm_track(header + "0,1,2,3\n"), InputError);
  EXPECT_THROW(parse_storm_track(header + "0,1,2,3,4,5,abc\n"), InputError);
  auto track = parse_storm_track(kTrack);
  track[1].t = 0.0;
  EXPECT_THROW(validate_track(track, 101300.0, "t"), InputError);
  track = parse_storm_track(kTrack);
  track[0].central_pressure = 102000.0;
  EXPECT_THROW(validate_track(track, 101300.0, "t"), InputError);
  track = parse_storm_track(kTrack);
  track[0].radius_outer = 100.0;
  EXPECT_THROW(validate_track(track, 101300.0, "t"), InputError);
}
