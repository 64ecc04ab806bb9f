#include "gouysim/beam_optics.hpp"

#include <cmath>
#include <limits>

namespace gouysim {

GaussianBeamParams GaussianBeamParams::from_waist(double waist_radius, double waist_position,
                                                  double wavenumber) {
  GaussianBeamParams b{waist_radius, waist_position,
                       0.5 * wavenumber * waist_radius * waist_radius, wavenumber};
  b.validate();
  return b;
}

GaussianBeamParams GaussianBeamParams::from_q(std::complex<double> q, double z,
                                              double wavenumber) {
  if (!(q.imag() > 0.0)) throw GuardError("beam parameter q must have Im q > 0");
  const double z0 = q.imag();
  GaussianBeamParams b{std::sqrt(2.0 * z0 / wavenumber), z - q.real(), z0, wavenumber};
  b.validate();
  return b;
}

void GaussianBeamParams::validate() const {
  if (!(waist_radius > 0.0)) throw GuardError("beam waist_radius must be > 0");
  if (!(wavenumber > 0.0)) throw GuardError("beam wavenumber must be > 0");
  const double expected = 0.5 * wavenumber * waist_radius * waist_radius;
  if (std::abs(rayleigh_range - expected) > 1e-12 * expected)
    throw GuardError("beam rayleigh_range must equal k w0^2 / 2");
}

double CurvatureRadius::value() const {
  if (!radius_) throw GuardError("flat wavefront has no finite curvature radius");
  return *radius_;
}

LensSpec LensSpec::thin(double focal_length, double position) {
  if (focal_length == 0.0 || !std::isfinite(focal_length))
    throw GuardError("lens focal_length must be finite and nonzero; use LensSpec::none()");
  return LensSpec{focal_length, position};
}

double LensSpec::focal_length() const {
  if (!focal_length_) throw GuardError("no-lens sentinel has no focal length");
  return *focal_length_;
}

double beam_width(const GaussianBeamParams& beam, double z) {
  const double u = (z - beam.waist_position) / beam.rayleigh_range;
  return beam.waist_radius * std::sqrt(1.0 + u * u);
}

CurvatureRadius curvature_radius(const GaussianBeamParams& beam, double z) {
  const double dz = z - beam.waist_position;
  if (dz == 0.0) return CurvatureRadius::flat();
  const double r = beam.rayleigh_range / dz;
  return CurvatureRadius::finite(dz * (1.0 + r * r));
}

double gouy_phase(const GaussianBeamParams& beam, double z) {
  return 0.5 * std::atan((z - beam.waist_position) / beam.rayleigh_range);
}

double matter_rayleigh_range(const AtomParams& atom, double w0) {
  if (!(atom.mass > 0.0 && atom.v_z > 0.0 && w0 > 0.0))
    throw GuardError("matter_rayleigh_range needs mass, v_z, w0 > 0");
  return 0.5 * atom.longitudinal_wavenumber() * w0 * w0;
}

GaussianBeamParams apply_thin_lens(const GaussianBeamParams& beam, const LensSpec& lens) {
  if (lens.is_none()) return beam;
  const double z = lens.position();
  const double f = lens.focal_length();
  // 1/q' = 1/q - 1/f at the lens plane.
  const std::complex<double> q_out = 1.0 / (1.0 / beam.q(z) - 1.0 / f);
  return GaussianBeamParams::from_q(q_out, z, beam.wavenumber);
}

double gouy_accumulated(const GaussianBeamParams& beam, double z_start, double z_end) {
  if (!(z_start < z_end)) throw GuardError("gouy_accumulated needs z_start < z_end");
  auto xi = [&](double z) {
    if (std::isinf(z)) return z > 0 ? pi / 4.0 : -pi / 4.0;
    return gouy_phase(beam, z);
  };
  return xi(z_end) - xi(z_start);
}

}  // namespace gouysim
