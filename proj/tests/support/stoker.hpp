#pragma once

#include <cmath>

namespace surge::testing {

// Exact dam break over a wet bed: rarefaction, plateau, shock.
struct StokerSolution {
  double g, hl, hr, hm, um, shock;

  StokerSolution(double h_left, double h_right, double gravity = 9.81) : g(gravity), hl(h_left), hr(h_right) {
    // plateau depth where the rarefaction and shock velocities agree
    double lo = hr, hi = hl;
    for (int k = 0; k < 200; ++k) {
      const double m = 0.5 * (lo + hi);
      const double u_rare = 2.0 * (std::sqrt(g * hl) - std::sqrt(g * m));
      const double u_shock = (m - hr) * std::sqrt(0.5 * g * (m + hr) / (m * hr));
      (u_rare > u_shock ? lo : hi) = m;
    }
    hm = 0.5 * (lo + hi);
    um = 2.0 * (std::sqrt(g * hl) - std::sqrt(g * hm));
    shock = hm * um / (hm - hr);
  }

  double depth(double x, double t) const {
    const double xi = x / t;
    const double cl = std::sqrt(g * hl);
    if (xi <= -cl) return hl;
    if (xi <= um - std::sqrt(g * hm)) {
      const double c = (2.0 * cl - xi) / 3.0;
      return c * c / g;
    }
    return xi < shock ? hm : hr;
  }

  // cell average by midpoint quadrature
  double cell_average(double x0, double x1, double t, int samples = 400) const {
    double s = 0.0;
    for (int k = 0; k < samples; ++k) s += depth(x0 + (k + 0.5) / samples * (x1 - x0), t);
    return s / samples;
  }
};

}  // namespace surge::testing
