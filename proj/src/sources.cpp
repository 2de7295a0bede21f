#include "surge/sources.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace surge {

void FrictionConfig::validate() const {
  if (!(h_break > 0)) throw ConfigError("friction.h_break must be > 0");
  if (!(theta_f > 0)) throw ConfigError("friction.theta_f must be > 0");
  if (!(gamma_f > 0)) throw ConfigError("friction.gamma_f must be > 0");
  auto check_rules = [](const std::vector<ManningRule>& rules, const std::string& where) {
    if (rules.empty() || std::isfinite(rules.back().threshold))
      throw ConfigError(where + ": last rule must be a catch-all (threshold null)");
    for (const auto& r : rules)
      if (!(r.n >= 0)) throw ConfigError(where + ": Manning n must be >= 0");
  };
  check_rules(default_rules, "friction.manning");
  for (size_t k = 0; k < regions.size(); ++k) {
    const auto& reg = regions[k];
    const std::string where = "friction.regions[" + std::to_string(k) + "]";
    if (!(reg.lon_min < reg.lon_max && reg.lat_min < reg.lat_max)) throw ConfigError(where + ": empty rectangle");
    check_rules(reg.rules, where);
  }
}

std::vector<ManningRule> shelf_manning_rules(double shallow, double deep) {
  return {{shallow, 0.030}, {deep, 0.012}, {}};
}

double friction_coefficient(double h, double n, const FrictionConfig& cfg, double momentum_magnitude, double g) {
  if (!(h > 0.0)) throw std::domain_error("friction_coefficient: depth must be positive");
  if (n == 0.0) return 0.0;
  double bracket;
  if (cfg.clamped_bracket) {
    if (h <= cfg.h_break) return 0.0;
    bracket = std::max(0.0, 1.0 - std::pow(cfg.h_break / h, cfg.theta_f));
  } else {
    bracket = 1.0 + std::pow(cfg.h_break / h, cfg.theta_f);
  }
  return g * n * n * std::pow(h, -7.0 / 3.0) * momentum_magnitude * std::pow(bracket, cfg.gamma_f / cfg.theta_f);
}

double manning_value(double b, double lon, double lat, const FrictionConfig& cfg, double sea_level) {
  const std::vector<ManningRule>* rules = &cfg.default_rules;
  for (const auto& reg : cfg.regions) {
    if (reg.contains(lon, lat)) {
      rules = &reg.rules;
      break;
    }
  }
  for (const auto& r : *rules)
    if (b > sea_level + r.threshold) return r.n;
  return rules->back().n;
}

void manning_field(Patch& patch, const FrictionConfig& cfg, double sea_level) {
  const int gw = patch.manning.ghost();
  for (int j = -gw; j < patch.ny() + gw; ++j)
    for (int i = -gw; i < patch.nx() + gw; ++i)
      patch.manning(i, j) = manning_value(patch.b(i, j), patch.lon(i), patch.lat(j), cfg, sea_level);
}

void apply_friction(Patch& patch, double dt, const FrictionConfig& cfg, const PhysConfig& phys) {
  for (int j = 0; j < patch.ny(); ++j) {
    for (int i = 0; i < patch.nx(); ++i) {
      const double h = patch.h(i, j);
      if (h < phys.dry_tolerance) continue;
      const double d = friction_coefficient(h, patch.manning(i, j), cfg, std::hypot(patch.hu(i, j), patch.hv(i, j)),
                                            phys.g);
      if (d == 0.0) continue;
      const double factor = 1.0 / (1.0 + d * dt);
      patch.hu(i, j) *= factor;
      patch.hv(i, j) *= factor;
    }
  }
}

void apply_coriolis(Patch& patch, double dt, const PhysConfig& phys) {
  for (int j = 0; j < patch.ny(); ++j) {
    const double f = coriolis_parameter(patch.lat(j), phys.omega);
    if (f == 0.0) continue;
    const auto [c, s] = coriolis_coefficients(f * dt);
    for (int i = 0; i < patch.nx(); ++i) {
      if (patch.h(i, j) < phys.dry_tolerance) continue;
      const double hu = patch.hu(i, j), hv = patch.hv(i, j);
      patch.hu(i, j) = c * hu + s * hv;
      patch.hv(i, j) = -s * hu + c * hv;
    }
  }
}

void apply_wind(Patch& patch, double dt, const StormFields& fields, const PhysConfig& phys) {
  for (int j = 0; j < patch.ny(); ++j) {
    for (int i = 0; i < patch.nx(); ++i) {
      const double h = patch.h(i, j);
      if (h < phys.dry_tolerance) continue;
      const double wx = fields.wind_x(i, j), wy = fields.wind_y(i, j);
      const double w = std::hypot(wx, wy);
      const double depth = phys.wind_depth_scaled ? h
                           : phys.wind_taper_depth > 0.0 ? std::min(1.0, h / phys.wind_taper_depth)
                                                         : 1.0;
      const double tau = dt * (depth / phys.rho) * phys.rho_air * wind_drag(w) * w;
      patch.hu(i, j) += tau * wx;
      patch.hv(i, j) += tau * wy;
    }
  }
}

void apply_pressure(Patch& patch, double dt, const StormFields& fields, const PhysConfig& phys) {
  const LevelGeometry& g = patch.geometry();
  for (int j = 0; j < patch.ny(); ++j) {
    const auto m = cell_size_meters(patch.lat(j), g.dlon(), g.dlat(), phys.earth_radius);
    for (int i = 0; i < patch.nx(); ++i) {
      const double h = patch.h(i, j);
      if (h < phys.dry_tolerance) continue;
      const double dpx = (fields.pressure(i - 1, j) - fields.pressure(i + 1, j)) / (2.0 * m.dx_m);
      const double dpy = (fields.pressure(i, j - 1) - fields.pressure(i, j + 1)) / (2.0 * m.dy_m);
      patch.hu(i, j) += dt * (h / phys.rho) * dpx;
      patch.hv(i, j) += dt * (h / phys.rho) * dpy;
    }
  }
}

}  // namespace surge
