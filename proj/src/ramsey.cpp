#include "gouysim/ramsey.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gouysim {
namespace {

// Phase omega * t reduced mod 2 pi in extended precision; omega t reaches
// ~1e9 rad for microwave transitions over milliseconds.
double reduced_phase(double omega, double t) {
  const long double v = static_cast<long double>(omega) * static_cast<long double>(t);
  return static_cast<double>(std::fmod(v, 2.0L * std::numbers::pi_v<long double>));
}

Wavefunction cavity_pass(const Wavefunction& psi, const InterferometerSetup& setup,
                         const CavityLensParams& cavity, InternalState state, bool active) {
  const AtomParams& atom = setup.atom;
  if (setup.exact_mode) {
    QuadraticPotential pot{active ? potential_curvature(cavity, state) : 0.0,
                           cavity.interaction_time};
    if (pot.curvature == 0.0) return propagate_free(psi, atom, pot.duration);
    return propagate_quadratic(psi, atom, pot, setup.cavity_steps);
  }
  if (!active) return psi;
  return apply_lens_phase(psi, atom, focal_time(cavity, atom, state));
}

// Transverse evolution of one arm from R1 to R2. The cavities sit at the
// centres of their flight segments; in exact mode they occupy t_i each.
Wavefunction propagate_arm(const Wavefunction& psi, const InterferometerSetup& setup,
                           InternalState state) {
  const AtomParams& atom = setup.atom;
  const auto& geo = setup.geometry;
  const bool active =
      setup.lenses_on && !(state == InternalState::i && setup.suppress_i_lens);
  const double half_1 = setup.exact_mode ? 0.5 * setup.cavity_1.interaction_time : 0.0;
  const double half_2 = setup.exact_mode ? 0.5 * setup.cavity_2.interaction_time : 0.0;

  const double t_pre = geo.drift_pre / atom.v_z - half_1;
  const double t_mid = geo.cavity_separation / atom.v_z - half_1 - half_2;
  const double t_post = geo.drift_post / atom.v_z - half_2;
  if (t_pre < 0.0 || t_mid < 0.0 || t_post < 0.0)
    throw GuardError("interferometer geometry: cavities overlap each other or the Ramsey zones");

  Wavefunction out = propagate_free(psi, atom, t_pre);
  out = cavity_pass(out, setup, setup.cavity_1, state, active);
  out = propagate_free(out, atom, t_mid);
  out = cavity_pass(out, setup, setup.cavity_2, state, active);
  return propagate_free(out, atom, t_post);
}

}  // namespace

HybridState::HybridState(Wavefunction i, Wavefunction g)
    : amp_i(std::move(i)), amp_g(std::move(g)) {
  if (!(amp_i.grid() == amp_g.grid()))
    throw GuardError("hybrid state components must share one grid");
}

double HybridState::norm() const { return gouysim::norm(amp_i) + gouysim::norm(amp_g); }

double HybridState::population_g() const { return gouysim::norm(amp_g); }

HybridState pi_half_pulse(const HybridState& state, double pulse_phase) {
  const double s = 1.0 / std::sqrt(2.0);
  const cplx u_ig = cplx(0.0, -s) * std::polar(1.0, pulse_phase);
  const cplx u_gi = cplx(0.0, -s) * std::polar(1.0, -pulse_phase);
  HybridState out = state;
  for (std::size_t j = 0; j < state.amp_i.grid().size(); ++j) {
    const cplx a = state.amp_i[j];
    const cplx b = state.amp_g[j];
    out.amp_i[j] = s * a + u_ig * b;
    out.amp_g[j] = u_gi * a + s * b;
  }
  return out;
}

double fringe_probability_analytic(double omega_r, double omega_gi, double t,
                                   double extra_phase) {
  if (!(t > 0.0)) throw GuardError("fringe_probability_analytic needs t > 0");
  const double c = std::cos((omega_r - omega_gi) * t - extra_phase);
  return c * c;
}

double InterferometerSetup::transit_time() const {
  return (geometry.drift_pre + geometry.cavity_separation + geometry.drift_post) / atom.v_z;
}

namespace {

// Both arms just before R2, with the quantities that do not depend on the
// Ramsey field frequency.
struct ArmsAtR2 {
  HybridState state;
  cplx component_overlap;
  double on_axis_phase = 0.0;
};

ArmsAtR2 transport(const InterferometerSetup& setup) {
  setup.atom.validate();
  const double ramsey_time = setup.ramsey.ramsey_time;
  if (!(ramsey_time > 0.0)) throw GuardError("ramsey_time must be > 0");
  if (ramsey_time < setup.transit_time() * (1.0 - 1e-12))
    throw GuardError("ramsey_time is shorter than the R1-R2 transit time");

  // Waist of the slit beam placed at C1.
  const Wavefunction psi0 = make_gaussian_beam(setup.grid, setup.atom, setup.slit_w0,
                                               setup.geometry.drift_pre / setup.atom.v_z);
  const HybridState prepared(psi0, psi0.scaled(0.0));

  const HybridState after_r1 = pi_half_pulse(prepared, setup.ramsey.pulse_phase);
  const cplx overlap_r1 = overlap(after_r1.amp_g, after_r1.amp_i);
  const std::size_t c = setup.grid.center_index();
  const cplx axis_ratio_r1 = after_r1.amp_g[c] / after_r1.amp_i[c];

  HybridState state(propagate_arm(after_r1.amp_i, setup, InternalState::i),
                    propagate_arm(after_r1.amp_g, setup, InternalState::g));
  if (setup.extra_g_phase != 0.0)
    state.amp_g = state.amp_g.scaled(std::polar(1.0, -setup.extra_g_phase));

  // Differential overlap of the arms relative to the state right after R1,
  // which strips the pulse amplitudes.
  const cplx o = overlap(state.amp_g, state.amp_i) / overlap_r1;
  const double axis = -std::arg((state.amp_g[c] / state.amp_i[c]) / axis_ratio_r1);

  const AtomParams& atom = setup.atom;
  state.amp_i = state.amp_i.scaled(std::polar(1.0, -reduced_phase(atom.omega_i, ramsey_time)));
  state.amp_g = state.amp_g.scaled(std::polar(1.0, -reduced_phase(atom.omega_g, ramsey_time)));
  return {std::move(state), o, axis};
}

double close_with_r2(const ArmsAtR2& arms, const InterferometerSetup& setup, double omega_r) {
  const double phase_r2 =
      setup.ramsey.pulse_phase + reduced_phase(omega_r, setup.ramsey.ramsey_time);
  return std::clamp(pi_half_pulse(arms.state, phase_r2).population_g(), 0.0, 1.0);
}

}  // namespace

InterferometerResult run_interferometer(const InterferometerSetup& setup) {
  return run_interferometer(setup, setup.ramsey.omega_r);
}

InterferometerResult run_interferometer(const InterferometerSetup& setup, double omega_r) {
  const ArmsAtR2 arms = transport(setup);
  InterferometerResult result;
  result.component_overlap = arms.component_overlap;
  result.on_axis_phase = arms.on_axis_phase;
  result.p_g = close_with_r2(arms, setup, omega_r);
  return result;
}

FringePattern fit_fringes(std::vector<FringeSample> samples, double omega_gi, double tau_seed) {
  if (samples.size() < 8) throw GuardError("fringe fit needs at least 8 samples");
  const std::size_t n = samples.size();
  std::vector<double> delta(n), p(n);
  for (std::size_t j = 0; j < n; ++j) {
    delta[j] = samples[j].omega_r - omega_gi;
    p[j] = samples[j].p_g;
  }

  // Seed phi from the discrete argmax of the cross-correlation with the
  // zero-phase pattern; this avoids the pi ambiguity of least squares.
  double mean = 0.0;
  for (double v : p) mean += v;
  mean /= static_cast<double>(n);
  double best_phi = 0.0, best_corr = -std::numeric_limits<double>::infinity();
  constexpr int trial_count = 720;
  for (int k = 0; k < trial_count; ++k) {
    const double phi = two_pi * k / trial_count - pi;
    double corr = 0.0;
    for (std::size_t j = 0; j < n; ++j) corr += (p[j] - mean) * std::cos(tau_seed * delta[j] - phi);
    if (corr > best_corr) {
      best_corr = corr;
      best_phi = phi;
    }
  }
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());

  Eigen::Vector4d theta(*hi - *lo, *lo, tau_seed, best_phi);  // A, B, tau, phi
  auto residuals = [&](const Eigen::Vector4d& th, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.resize(static_cast<Eigen::Index>(n));
    if (jac) jac->resize(static_cast<Eigen::Index>(n), 4);
    for (std::size_t j = 0; j < n; ++j) {
      const double arg = th[2] * delta[j] - th[3];
      const double c2 = 0.5 * (1.0 + std::cos(arg));
      const auto row = static_cast<Eigen::Index>(j);
      r[row] = th[1] + th[0] * c2 - p[j];
      if (jac) {
        const double ds = -0.5 * th[0] * std::sin(arg);
        (*jac)(row, 0) = c2;
        (*jac)(row, 1) = 1.0;
        (*jac)(row, 2) = ds * delta[j];
        (*jac)(row, 3) = -ds;
      }
    }
  };

  Eigen::VectorXd r, r_trial;
  Eigen::MatrixXd jac;
  residuals(theta, r, &jac);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  bool converged = false;
  for (int iter = 0; iter < 500 && !converged; ++iter) {
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d grad = jac.transpose() * r;
    Eigen::Matrix4d damped = jtj;
    for (int k = 0; k < 4; ++k) damped(k, k) += lambda * std::max(jtj(k, k), 1e-300);
    const Eigen::Vector4d step = damped.ldlt().solve(-grad);
    const Eigen::Vector4d trial = theta + step;
    residuals(trial, r_trial, nullptr);
    const double trial_cost = r_trial.squaredNorm();
    if (trial_cost <= cost) {
      const bool small_step = (step.array().abs() <=
                               1e-13 * (theta.array().abs() + 1e-12)).all();
      const bool flat = cost - trial_cost <= 1e-15 * cost;
      theta = trial;
      cost = trial_cost;
      residuals(theta, r, &jac);
      lambda = std::max(lambda * 0.3, 1e-12);
      converged = small_step || flat || cost < 1e-28;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) converged = true;
    }
  }
  const double residual_norm = std::sqrt(cost);
  if (!converged || !theta.allFinite())
    throw GuardError("fringe fit did not converge; residual norm " + std::to_string(residual_norm));

  double amp = theta[0], off = theta[1], phi = theta[3];
  if (amp < 0.0) {
    off += amp;
    amp = -amp;
    phi += pi;
  }

  FringePattern pattern;
  pattern.samples = std::move(samples);
  pattern.amplitude = amp;
  pattern.offset = off;
  pattern.fitted_tau = theta[2];
  pattern.fitted_phase = wrap_phase(phi);
  const double denom = amp + 2.0 * off;
  pattern.contrast = denom > 0.0 ? std::clamp(amp / denom, 0.0, 1.0) : 0.0;
  pattern.residual_norm = residual_norm;
  return pattern;
}

FringePattern fringe_scan(const InterferometerSetup& setup, double omega_lo, double omega_hi,
                          int n_points) {
  if (n_points < 8) throw GuardError("fringe_scan needs n_points >= 8");
  if (!(omega_hi > omega_lo)) throw GuardError("fringe_scan needs omega_hi > omega_lo");
  const auto n = static_cast<std::size_t>(n_points);
  std::vector<FringeSample> samples(n);
  const double step = (omega_hi - omega_lo) / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j)
    samples[j].omega_r = omega_lo + step * static_cast<double>(j);

  // The transverse evolution does not depend on omega_r; only R2 is redone.
  const ArmsAtR2 arms = transport(setup);
  for (auto& smp : samples) smp.p_g = close_with_r2(arms, setup, smp.omega_r);

  return fit_fringes(std::move(samples), setup.ramsey.omega_gi, setup.ramsey.ramsey_time);
}

ShiftMeasurement gouy_shift_measurement(const InterferometerSetup& setup, double omega_lo,
                                        double omega_hi, int n_points) {
  InterferometerSetup on = setup;
  on.lenses_on = true;
  InterferometerSetup off = setup;
  off.lenses_on = false;

  ShiftMeasurement m;
  m.lenses_on = fringe_scan(on, omega_lo, omega_hi, n_points);
  m.lenses_off = fringe_scan(off, omega_lo, omega_hi, n_points);
  m.shift = wrap_phase(m.lenses_on.fitted_phase - m.lenses_off.fitted_phase);
  m.on_result = run_interferometer(on, 0.5 * (omega_lo + omega_hi));
  return m;
}

}  // namespace gouysim
