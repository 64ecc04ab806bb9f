#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace gouysim {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA 2018 (exact).
inline constexpr double hbar = 1.054571817e-34;  // J s

/// Wraps an angle to (-pi, pi].
inline double wrap_phase(double angle) {
  const double r = std::remainder(angle, two_pi);
  return r <= -pi ? r + two_pi : r;
}

/// Raised when an input violates a documented precondition or a numerical
/// guard. The message names the violated guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Focal time of an atomic lens in seconds; nullopt is the "no lens"
/// sentinel (infinite focal time).
using FocalTime = std::optional<double>;

/// Atomic species moving with a classical longitudinal velocity.
///
/// Level frequencies are angular (rad/s) and only their differences carry
/// physics; omega_i is the energy reference and may be zero.
struct AtomParams {
  double mass = 1.44e-25;  // kg, rubidium
  double v_z = 50.0;       // m/s
  double omega_i = 0.0;
  double omega_g = two_pi * 54.256e9;
  double omega_e = two_pi * (54.256e9 + 51.026e9);

  double omega_gi() const { return omega_g - omega_i; }
  double omega_eg() const { return omega_e - omega_g; }

  /// de Broglie wavenumber of the longitudinal motion, m v_z / hbar.
  double longitudinal_wavenumber() const { return mass * v_z / hbar; }

  void validate() const;
};

}  // namespace gouysim
