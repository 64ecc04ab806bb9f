#pragma once

#include <complex>
#include <optional>

#include "gouysim/physics.hpp"

namespace gouysim {

/// Gaussian beam in one transverse dimension, described by its waist.
///
/// The same algebra serves light (k = 2 pi / lambda) and matter waves
/// (k = m v_z / hbar with z = v_z t). Internally everything goes through the
/// complex beam parameter q(z) = (z - waist_position) + i rayleigh_range.
struct GaussianBeamParams {
  double waist_radius = 0.0;
  double waist_position = 0.0;
  double rayleigh_range = 0.0;
  double wavenumber = 0.0;

  /// Builds a beam from its waist, deriving z0 = k w0^2 / 2.
  static GaussianBeamParams from_waist(double waist_radius, double waist_position,
                                       double wavenumber);
  /// Builds a beam from the complex parameter q evaluated at plane z.
  static GaussianBeamParams from_q(std::complex<double> q, double z, double wavenumber);

  std::complex<double> q(double z) const {
    return {z - waist_position, rayleigh_range};
  }

  void validate() const;
};

/// Wavefront curvature radius; the flat wavefront at the waist is a tagged
/// value rather than an infinite float.
class CurvatureRadius {
 public:
  static CurvatureRadius flat() { return CurvatureRadius{}; }
  static CurvatureRadius finite(double radius) { return CurvatureRadius{radius}; }

  bool is_flat() const { return !radius_.has_value(); }
  /// Radius in metres. Throws GuardError for a flat wavefront.
  double value() const;
  /// 1/R, zero for a flat wavefront.
  double curvature() const { return radius_ ? 1.0 / *radius_ : 0.0; }

 private:
  CurvatureRadius() = default;
  explicit CurvatureRadius(double r) : radius_(r) {}
  std::optional<double> radius_;
};

/// Ideal thin cylindrical lens. Positive focal length converges.
class LensSpec {
 public:
  /// The "no lens" sentinel: infinite focal length, acts as the identity.
  static LensSpec none(double position = 0.0) { return LensSpec{std::nullopt, position}; }
  static LensSpec thin(double focal_length, double position);

  bool is_none() const { return !focal_length_.has_value(); }
  /// Throws GuardError for the sentinel.
  double focal_length() const;
  double position() const { return position_; }

 private:
  LensSpec(std::optional<double> f, double pos) : focal_length_(f), position_(pos) {}
  std::optional<double> focal_length_;
  double position_ = 0.0;
};

double beam_width(const GaussianBeamParams& beam, double z);
CurvatureRadius curvature_radius(const GaussianBeamParams& beam, double z);
/// xi(z) = 1/2 arctan((z - z_waist)/z0); enters the amplitude as e^{-i xi}.
double gouy_phase(const GaussianBeamParams& beam, double z);

double matter_rayleigh_range(const AtomParams& atom, double w0);

GaussianBeamParams apply_thin_lens(const GaussianBeamParams& beam, const LensSpec& lens);

/// Gouy phase accumulated between two planes, xi(z_end) - xi(z_start).
/// Infinite bounds are accepted and give the +-pi/4 asymptotes.
double gouy_accumulated(const GaussianBeamParams& beam, double z_start, double z_end);

}  // namespace gouysim
