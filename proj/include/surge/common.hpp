#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace surge {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr int kGhostWidth = 2;

/// Conserved state of one cell: depth and depth-integrated momentum.
struct StateVector {
  double h = 0.0;
  double hu = 0.0;
  double hv = 0.0;
};

using Vec3 = std::array<double, 3>;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NestingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a step exceeds unit Courant number; callers retry with a
/// smaller time step.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(double courant, int level)
      : std::runtime_error("CFL violation: courant " + std::to_string(courant) +
                           " on level " + std::to_string(level)),
        courant_(courant),
        level_(level) {}
  double courant() const { return courant_; }
  int level() const { return level_; }

 private:
  double courant_;
  int level_;
};

/// Emits a warning line on stderr unless warnings are muted.
void warn(const std::string& message);
void set_warnings_muted(bool muted);

}  // namespace surge
