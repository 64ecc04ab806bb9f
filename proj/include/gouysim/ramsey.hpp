#pragma once

#include <complex>
#include <vector>

#include "gouysim/lens_design.hpp"
#include "gouysim/wavepacket.hpp"

namespace gouysim {

/// Transverse wavefunctions paired with the internal states |i> and |g>.
/// Internal weights are folded into the amplitudes.
struct HybridState {
  Wavefunction amp_i;
  Wavefunction amp_g;

  /// Both components must share one grid.
  HybridState(Wavefunction i, Wavefunction g);
  double norm() const;
  /// Weight of the |g> component, sum |amp_g|^2 dx.
  double population_g() const;
};

struct RamseyConfig {
  double ramsey_time = 6e-3;  // R1 to R2, s
  double omega_r = 0.0;       // Ramsey field, rad/s
  double omega_gi = 0.0;      // reference transition frequency, rad/s
  double pulse_phase = 0.0;   // convention offset common to both pulses
};

/// pi/2 pulse U = 1/sqrt2 [[1, -i e^{i phi}], [-i e^{-i phi}, 1]] acting on
/// (amp_i, amp_g) at every grid point.
HybridState pi_half_pulse(const HybridState& state, double pulse_phase);

/// cos^2((omega_r - omega_gi) t - extra_phase).
double fringe_probability_analytic(double omega_r, double omega_gi, double t,
                                   double extra_phase);

struct InterferometerGeometry {
  double cavity_separation = 0.21;  // d, between cavity centres
  double drift_pre = 0.02;          // R1 to C1
  double drift_post = 0.02;         // C2 to R2
};

struct InterferometerSetup {
  AtomParams atom;
  double slit_w0 = 10e-6;
  CavityLensParams cavity_1;
  CavityLensParams cavity_2;
  InterferometerGeometry geometry;
  RamseyConfig ramsey;
  Grid grid = Grid::standard();
  int cavity_steps = default_cavity_steps;
  bool lenses_on = true;
  /// Split-operator evolution through each cavity instead of a thin imprint.
  bool exact_mode = true;
  /// Treat the |i> component as untouched by the lens cavities.
  bool suppress_i_lens = false;
  /// Test hook: extra phase chi imprinted on the |g> arm as e^{-i chi}.
  double extra_g_phase = 0.0;

  /// Time spent in transverse flight from R1 to R2.
  double transit_time() const;
};

struct InterferometerResult {
  double p_g = 0.0;
  /// overlap(psi_g, psi_i) of the two arms just before R2: the argument is
  /// the accumulated differential phase, the modulus the fringe contrast.
  cplx component_overlap;
  /// On-axis phase difference of the arms, -[arg psi_g(0) - arg psi_i(0)].
  double on_axis_phase = 0.0;
};

InterferometerResult run_interferometer(const InterferometerSetup& setup);
/// Same with the Ramsey field frequency replaced by omega_r.
InterferometerResult run_interferometer(const InterferometerSetup& setup, double omega_r);

struct FringeSample {
  double omega_r = 0.0;
  double p_g = 0.0;
};

/// Least-squares fit p_g = B + A cos^2((tau (omega_r - omega_gi) - phi)/2).
/// phi is the interferometric phase, tau the fringe period parameter.
struct FringePattern {
  std::vector<FringeSample> samples;
  double contrast = 0.0;      // A / (A + 2B)
  double fitted_phase = 0.0;  // phi wrapped to (-pi, pi]
  double fitted_tau = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  double residual_norm = 0.0;
};

/// Fits the fringe model to samples. tau_seed seeds the period; the phase
/// seed is the argmax of the cross-correlation with the zero-phase pattern.
FringePattern fit_fringes(std::vector<FringeSample> samples, double omega_gi, double tau_seed);

/// Runs the interferometer at n_points equally spaced omega_r in
/// [omega_lo, omega_hi] (in parallel) and fits the pattern.
FringePattern fringe_scan(const InterferometerSetup& setup, double omega_lo, double omega_hi,
                          int n_points);

struct ShiftMeasurement {
  double shift = 0.0;  // phase(lenses on) - phase(lenses off)
  FringePattern lenses_on;
  FringePattern lenses_off;
  InterferometerResult on_result;  // at the scan centre
};

ShiftMeasurement gouy_shift_measurement(const InterferometerSetup& setup, double omega_lo,
                                        double omega_hi, int n_points);

}  // namespace gouysim
