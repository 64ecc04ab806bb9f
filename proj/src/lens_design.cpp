#include "gouysim/lens_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gouysim/beam_optics.hpp"
#include "gouysim/format.hpp"

namespace gouysim {

const LevelSystem::Level& LevelSystem::level(std::string_view label) const {
  auto it = std::find_if(levels.begin(), levels.end(),
                         [&](const Level& l) { return l.label == label; });
  if (it == levels.end()) throw GuardError("unknown level '" + std::string(label) + "'");
  return *it;
}

void LevelSystem::validate() const {
  for (const auto& c : couplings) {
    level(c.label_a);
    level(c.label_b);
    if (!(c.dipole >= 0.0))
      throw GuardError("dipole magnitude for " + c.label_a + "-" + c.label_b + " must be >= 0");
  }
}

void CavityLensParams::validate() const {
  if (!(wavelength > 0.0)) throw GuardError("cavity wavelength must be > 0");
  if (!(photon_number > 0.0)) throw GuardError("cavity photon_number must be > 0");
  if (!(interaction_time > 0.0)) throw GuardError("cavity interaction_time must be > 0");
  if (!(quality_factor > 0.0)) throw GuardError("cavity quality_factor must be > 0");
  if (detuning_g == 0.0 || detuning_i == 0.0) throw GuardError("cavity detunings must be nonzero");
}

double susceptibility(const LevelSystem& system, std::string_view state, double probe) {
  system.validate();
  const double omega_n = system.level(state).omega;
  double alpha = 0.0;
  for (const auto& c : system.couplings) {
    std::string_view other;
    if (c.label_a == state)
      other = c.label_b;
    else if (c.label_b == state)
      other = c.label_a;
    else
      continue;
    const double omega_mn = system.level(other).omega - omega_n;
    if (std::abs(std::abs(probe) - std::abs(omega_mn)) <= 1e-9 * std::abs(omega_mn))
      throw GuardError("susceptibility pole: probe is resonant with " + std::string(state) +
                       "-" + std::string(other));
    alpha += c.dipole * c.dipole / hbar * (1.0 / (omega_mn + probe) + 1.0 / (omega_mn - probe));
  }
  return alpha;
}

double near_resonant_susceptibility(double dipole, double detuning) {
  if (detuning == 0.0) throw GuardError("near_resonant_susceptibility needs nonzero detuning");
  return dipole * dipole / (hbar * detuning);
}

double potential_curvature(const CavityLensParams& cavity, InternalState state) {
  const double kc = two_pi / cavity.wavelength;
  const double omega = cavity.rabi_per_photon;
  return -hbar * cavity.photon_number * omega * omega / cavity.detuning(state) * kc * kc;
}

double lens_oscillation_frequency(const CavityLensParams& cavity, const AtomParams& atom,
                                  InternalState state) {
  return std::sqrt(2.0 * std::abs(potential_curvature(cavity, state)) / atom.mass);
}

FocalTime focal_time(const CavityLensParams& cavity, const AtomParams& atom,
                     InternalState state) {
  const double c = potential_curvature(cavity, state);
  if (c == 0.0) return std::nullopt;
  return atom.mass / (2.0 * c * cavity.interaction_time);
}

std::optional<double> focal_distance(const CavityLensParams& cavity, const AtomParams& atom,
                                     InternalState state) {
  const auto tf = focal_time(cavity, atom, state);
  if (!tf) return std::nullopt;
  return atom.v_z * *tf;
}

double absorption_parameter(const CavityLensParams& cavity, double x_scale) {
  const double omega = cavity.rabi_per_photon;
  const double ratio = x_scale / (cavity.detuning_g * cavity.wavelength);
  return 4.0 * pi * pi * cavity.photon_number * omega * omega * ratio * ratio;
}

double q_residual_phase(const CavityLensParams& cavity) {
  if (!(cavity.quality_factor > 0.0)) throw GuardError("quality_factor must be > 0");
  const double omega = cavity.rabi_per_photon;
  return cavity.photon_number * omega * omega * cavity.interaction_time /
         (cavity.detuning_g * cavity.quality_factor);
}

double min_quality_factor(const CavityLensParams& cavity, double phase_bound, int n_cavities) {
  if (!(phase_bound > 0.0) || n_cavities < 1)
    throw GuardError("min_quality_factor needs phase_bound > 0 and n_cavities >= 1");
  const double omega = cavity.rabi_per_photon;
  const double per_unit_q =
      std::abs(cavity.photon_number * omega * omega * cavity.interaction_time / cavity.detuning_g);
  return per_unit_q * n_cavities / phase_bound;
}

QualityBound quality_bound(const CavityLensParams& cavity, double phase_bound) {
  QualityBound b;
  b.phase_bound = phase_bound;
  b.q_min_per_cavity = min_quality_factor(cavity, phase_bound, 1);
  b.q_min_two_cavities = min_quality_factor(cavity, phase_bound, 2);
  b.configured_q = cavity.quality_factor;
  b.satisfies_per_cavity = cavity.quality_factor > b.q_min_per_cavity;
  b.satisfies_two_cavities = cavity.quality_factor > b.q_min_two_cavities;
  return b;
}

bool DesignReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const DesignCheck& c) { return c.pass; });
}

const DesignCheck& DesignReport::check(std::string_view name) const {
  auto it = std::find_if(checks.begin(), checks.end(),
                         [&](const DesignCheck& c) { return c.name == name; });
  if (it == checks.end()) throw GuardError("no design check named '" + std::string(name) + "'");
  return *it;
}

std::string DesignReport::render() const {
  std::string out;
  for (const auto& c : checks) {
    out += c.name + ": " + format_shortest(c.value);
    if (!c.unit.empty()) out += " " + c.unit;
    out += " (" + c.bound + ") " + (c.pass ? "PASS" : "FAIL") + "\n";
  }
  return out;
}

DesignReport design_report(const AtomParams& atom, double slit_w0,
                           const CavityLensParams& cavity, const DesignGeometry& geometry) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double d = geometry.cavity_separation;
  const double z_r = matter_rayleigh_range(atom, slit_w0);
  const auto zf_g = focal_distance(cavity, atom, InternalState::g);
  const auto zf_i = focal_distance(cavity, atom, InternalState::i);

  DesignReport r;
  const double plane_ratio = z_r / geometry.apparatus_length;
  r.checks.push_back({"plane_wave_ratio", plane_ratio, "", "z_r / apparatus_length > 10",
                      plane_ratio > 10.0});

  const double zf_value = zf_g.value_or(inf);
  r.checks.push_back({"focal_distance_g", zf_value, "m",
                      "d/2 = " + format_shortest(0.5 * d) + " m within 1%",
                      std::abs(zf_value - 0.5 * d) <= 0.01 * 0.5 * d});

  const auto beam = GaussianBeamParams::from_waist(slit_w0, 0.0, atom.longitudinal_wavenumber());
  const auto focused =
      apply_thin_lens(beam, zf_g ? LensSpec::thin(*zf_g, 0.0) : LensSpec::none());
  const double focus_ratio = d / focused.rayleigh_range;
  r.checks.push_back({"focus_ratio", focus_ratio, "", "d / z_r' > 10", focus_ratio > 10.0});

  const double absorption = absorption_parameter(cavity, slit_w0);
  r.checks.push_back({"absorption", absorption, "", "< 1e-2", absorption < 1e-2});

  const double q_phase = 2.0 * std::abs(q_residual_phase(cavity));
  r.checks.push_back({"q_residual_two_cavities", q_phase, "rad", "< pi/20", q_phase < pi / 20.0});

  const double thin = lens_oscillation_frequency(cavity, atom, InternalState::g) *
                      cavity.interaction_time;
  r.checks.push_back({"thin_lens_validity", thin, "", "omega_ho t_i < 0.5", thin < 0.5});

  double selectivity = std::numeric_limits<double>::quiet_NaN();
  if (zf_g && zf_i)
    selectivity = std::abs(*zf_i / *zf_g);
  else if (zf_g)
    selectivity = inf;
  r.checks.push_back({"lens_selectivity", selectivity, "", "|z_F(i) / z_F(g)| > 20",
                      selectivity > 20.0});
  return r;
}

}  // namespace gouysim
