#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gouysim/physics.hpp"

namespace gouysim {

/// Internal state addressed by a dispersive lens.
enum class InternalState { i, g };

/// Levels and electric-dipole couplings entering the full linear
/// susceptibility sum.
struct LevelSystem {
  struct Level {
    std::string label;
    double omega = 0.0;  // rad/s
  };
  struct Coupling {
    std::string label_a;
    std::string label_b;
    double dipole = 0.0;  // |<a|P|b>|, C m
  };

  std::vector<Level> levels;
  std::vector<Coupling> couplings;

  const Level& level(std::string_view label) const;
  void validate() const;
};

/// One dispersive lens cavity. Frequencies are angular; detunings signed,
/// Delta_g = (w_e - w_g) - w and Delta_i = (w_g - w_i) - w.
struct CavityLensParams {
  double wavelength = 5.8e-3;
  double photon_number = 3e6;
  double rabi_per_photon = two_pi * 47e3;
  double detuning_g = -two_pi * 30e6;
  double detuning_i = two_pi * 3.2e9;
  double interaction_time = 0.2e-3;
  double quality_factor = 4e6;

  double detuning(InternalState s) const {
    return s == InternalState::g ? detuning_g : detuning_i;
  }
  void validate() const;
};

/// Full two-term susceptibility of level `state` at probe frequency `probe`:
/// sum_m |<m|P|n>|^2/hbar [1/(w_mn + w) + 1/(w_mn - w)].
double susceptibility(const LevelSystem& system, std::string_view state, double probe);

/// Single near-resonant term |d|^2 / (hbar Delta).
double near_resonant_susceptibility(double dipole, double detuning);

/// Coefficient c of V(x) = c x^2 near the field node,
/// c = -hbar N Omega^2 / Delta (2 pi / lambda)^2. Positive c converges.
double potential_curvature(const CavityLensParams& cavity, InternalState state);

/// Harmonic frequency sqrt(2|c|/m) of the lens potential.
double lens_oscillation_frequency(const CavityLensParams& cavity, const AtomParams& atom,
                                  InternalState state);

/// Thin-lens focal time, 1/t_F = 2 c t_i / m. No lens when N = 0.
FocalTime focal_time(const CavityLensParams& cavity, const AtomParams& atom,
                     InternalState state);

/// v_z t_F; nullopt for the no-lens case.
std::optional<double> focal_distance(const CavityLensParams& cavity, const AtomParams& atom,
                                     InternalState state);

/// 4 pi^2 N Omega^2 x^2 / (Delta_g^2 lambda^2); must stay << 1 across the
/// beam for photon absorption to be negligible.
double absorption_parameter(const CavityLensParams& cavity, double x_scale);

/// Spurious phase N Omega^2 t_i / (Delta_g Q) from the nonzero intensity at
/// a real cavity node, per cavity traversal.
double q_residual_phase(const CavityLensParams& cavity);

/// Smallest Q keeping |n_cavities * q_residual_phase| below phase_bound.
double min_quality_factor(const CavityLensParams& cavity, double phase_bound,
                          int n_cavities);

/// Quality-factor bookkeeping for the spurious node phase.
struct QualityBound {
  double phase_bound = pi / 20.0;
  double q_min_per_cavity = 0.0;
  double q_min_two_cavities = 0.0;
  double configured_q = 0.0;
  bool satisfies_per_cavity = false;
  bool satisfies_two_cavities = false;
};

QualityBound quality_bound(const CavityLensParams& cavity, double phase_bound = pi / 20.0);

struct DesignGeometry {
  double cavity_separation = 0.21;  // d, C1 to C2
  double apparatus_length = 0.3;
};

struct DesignCheck {
  std::string name;
  double value = 0.0;
  std::string unit;
  std::string bound;
  bool pass = false;
};

struct DesignReport {
  std::vector<DesignCheck> checks;

  bool all_pass() const;
  const DesignCheck& check(std::string_view name) const;
  /// One line per check: `name: value unit (bound) PASS|FAIL`.
  std::string render() const;
};

/// Feasibility checks for a lens design; failures are entries, not errors.
DesignReport design_report(const AtomParams& atom, double slit_w0,
                           const CavityLensParams& cavity, const DesignGeometry& geometry);

}  // namespace gouysim
