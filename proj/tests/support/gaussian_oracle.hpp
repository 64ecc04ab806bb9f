#pragma once

// Closed-form Gaussian wave packets propagated with 2x2 ray matrices.
//
// psi(x) = amp * exp(i m x^2 / (2 hbar q)) with a complex time parameter q
// (Im q < 0). A matrix [[A, B], [C, D]] acting on (x, p/m) maps
// q -> (A q + B) / (C q + D) and multiplies the on-axis amplitude by
// (A + B/q)^{-1/2}. Nothing here calls the library's propagators.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline constexpr double hbar = 1.054571817e-34;
inline constexpr double pi = 3.14159265358979323846;

struct Matrix {
  double a, b, c, d;
};

inline Matrix free_flight(double t) { return {1.0, t, 0.0, 1.0}; }

inline Matrix thin_lens(double t_focal) { return {1.0, 0.0, -1.0 / t_focal, 1.0}; }

// Evolution for tau in V = k x^2.
inline Matrix quadratic(double k, double mass, double tau) {
  if (k == 0.0) return free_flight(tau);
  const double w = std::sqrt(2.0 * std::abs(k) / mass);
  if (k > 0.0)
    return {std::cos(w * tau), std::sin(w * tau) / w, -w * std::sin(w * tau), std::cos(w * tau)};
  return {std::cosh(w * tau), std::sinh(w * tau) / w, w * std::sinh(w * tau), std::cosh(w * tau)};
}

struct Packet {
  double mass;
  cplx q;
  cplx amp = 1.0;

  // Waist w0 reached after time_to_waist of free flight.
  static Packet at(double mass, double w0, double time_to_waist) {
    const double t0 = mass * w0 * w0 / (2.0 * hbar);
    return {mass, cplx(-time_to_waist, -t0), 1.0};
  }

  Packet then(const Matrix& m) const {
    const cplx factor = std::sqrt(m.a + m.b / q);
    return {mass, (m.a * q + m.b) / (m.c * q + m.d), amp / factor};
  }

  cplx operator()(double x) const {
    return amp * std::exp(cplx(0.0, mass / (2.0 * hbar)) * x * x / q);
  }

  // Intensity 1/e^2 half width.
  double width() const {
    const double im = (1.0 / q).imag();
    return std::sqrt(2.0 * hbar / (mass * im));
  }

  // Time of flight until the next waist (negative if already past it).
  double time_to_waist() const { return -q.real(); }

  double rayleigh_time() const { return -q.imag(); }

  double norm() const {
    const double s = mass / hbar * (1.0 / q).imag();
    return std::norm(amp) * std::sqrt(pi / s);
  }
};

// sum conj(a) b dx over the real line, normalized by both norms.
inline cplx normalized_overlap(const Packet& a, const Packet& b) {
  const cplx s = cplx(0.0, -a.mass / (2.0 * hbar)) * (1.0 / b.q - 1.0 / std::conj(a.q));
  const cplx raw = std::conj(a.amp) * b.amp * std::sqrt(pi / s);
  return raw / std::sqrt(a.norm() * b.norm());
}

// <xp + px>/2 = m Re(1/q) <x^2> with <x^2> = hbar / (2 m Im(1/q)).
inline double covariance_xp(const Packet& p) {
  const cplx inv = 1.0 / p.q;
  return 0.5 * hbar * inv.real() / inv.imag();
}

}  // namespace oracle
