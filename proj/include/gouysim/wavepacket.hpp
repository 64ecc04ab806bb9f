#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gouysim/physics.hpp"

namespace gouysim {

using cplx = std::complex<double>;

/// Uniform periodic grid x_j = -half_extent + j * spacing, j = 0..n-1.
/// x = 0 is sampled exactly at index n/2.
class Grid {
 public:
  Grid(std::size_t num_points, double half_extent);

  /// 8192 points over +-80 um: resolves the 0.3 um focus and the lens chirp.
  static Grid standard() { return Grid(8192, 80e-6); }

  std::size_t size() const { return num_points_; }
  double half_extent() const { return half_extent_; }
  double spacing() const { return spacing_; }
  std::size_t center_index() const { return num_points_ / 2; }

  double position(std::size_t j) const {
    return -half_extent_ + static_cast<double>(j) * spacing_;
  }
  /// Angular wavenumber of FFT bin j (standard FFT ordering).
  double wavenumber(std::size_t j) const;
  /// Largest resolvable wavenumber, pi / spacing.
  double nyquist_wavenumber() const { return pi / spacing_; }

  bool operator==(const Grid& other) const = default;

 private:
  std::size_t num_points_;
  double half_extent_;
  double spacing_;
};

/// Transverse wavefunction psi(x) sampled on a Grid, normalized so that
/// sum |psi_j|^2 dx = 1.
class Wavefunction {
 public:
  Wavefunction(Grid grid, std::vector<cplx> amplitudes);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  std::span<cplx> amplitudes() { return amplitudes_; }
  const cplx& operator[](std::size_t j) const { return amplitudes_[j]; }
  cplx& operator[](std::size_t j) { return amplitudes_[j]; }
  cplx on_axis() const { return amplitudes_[grid_.center_index()]; }

  /// psi * factor, pointwise.
  Wavefunction scaled(cplx factor) const;

 private:
  Grid grid_;
  std::vector<cplx> amplitudes_;
};

/// V(x) = curvature * x^2 acting for `duration` seconds.
struct QuadraticPotential {
  double curvature = 0.0;  // J/m^2
  double duration = 0.0;   // s
};

inline constexpr int default_cavity_steps = 64;

/// Normalized psi ~ exp(-(x-center)^2/w0^2 + i kick x). Guards: w0 >= 8 dx and
/// |center| + 3 w0 < half_extent.
Wavefunction make_gaussian(const Grid& grid, double w0, double center = 0.0,
                           double kick = 0.0);

/// Centered Gaussian whose waist w0 is reached after `time_to_waist`
/// seconds of free flight (negative: the waist lies in the past). Built from
/// the closed-form free solution, so it equals propagating the waist state.
Wavefunction make_gaussian_beam(const Grid& grid, const AtomParams& atom, double w0,
                                double time_to_waist);

/// Exact spectral evolution under p^2/2m for time t >= 0.
Wavefunction propagate_free(const Wavefunction& psi, const AtomParams& atom, double t);

/// Thin-lens imprint exp(-i m x^2 / (2 hbar t_F)). The no-lens sentinel is
/// the identity.
Wavefunction apply_lens_phase(const Wavefunction& psi, const AtomParams& atom,
                              FocalTime t_focal);

/// Symmetric split-operator (half kinetic, potential, half kinetic) evolution
/// in V = c x^2 for pot.duration, in `steps` equal steps.
Wavefunction propagate_quadratic(const Wavefunction& psi, const AtomParams& atom,
                                 const QuadraticPotential& pot,
                                 int steps = default_cavity_steps);

double norm(const Wavefunction& psi);
double mean_position(const Wavefunction& psi);
double position_variance(const Wavefunction& psi);
/// Beam-width convention w = 2 sigma_x, so |psi|^2 ~ exp(-2 x^2 / w^2).
double width(const Wavefunction& psi);
/// <p^2> - <p>^2 from the spectral representation, in (kg m/s)^2.
double momentum_variance(const Wavefunction& psi);
double mean_momentum(const Wavefunction& psi);
/// Symmetrized covariance <xp + px>/2 - <x><p>, in J s.
double covariance_xp(const Wavefunction& psi);

/// sum conj(a) b dx. Grids must match.
cplx overlap(const Wavefunction& a, const Wavefunction& b);

/// On-axis phase anomaly -[arg psi(0) - arg reference(0)], wrapped to
/// (-pi, pi]. Both states must be centered.
double gouy_numeric(const Wavefunction& psi, const Wavefunction& reference);

/// Samples gouy_numeric along free flight from `start` at the given
/// ascending times and unwraps it. Extra intermediate samples are inserted
/// wherever consecutive phases would differ by more than pi/4.
std::vector<double> trace_gouy(const Wavefunction& start, const AtomParams& atom,
                               const Wavefunction& reference, std::span<const double> times);

/// Time of minimum width under free flight, found by golden-section search
/// over [0, t_max] with repeated exact propagation.
double find_waist_time(const Wavefunction& psi, const AtomParams& atom, double t_max);

/// Same quantity from the moments: Var_x(t) is quadratic in t with minimum at
/// -m Cov_xp / Var_p.
double waist_time_from_moments(const Wavefunction& psi, const AtomParams& atom);

/// Throws GuardError when |psi| over the outer 10% of the grid exceeds 1e-6
/// of its peak.
void check_boundary(const Wavefunction& psi, const char* context);

}  // namespace gouysim
