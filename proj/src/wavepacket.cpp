#include "gouysim/wavepacket.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "fft.hpp"

namespace gouysim {
namespace {


void require_same_grid(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid() == b.grid())) throw GuardError("wavefunctions live on different grids");
}

double sum_abs2(std::span<const cplx> v) {
  return std::accumulate(v.begin(), v.end(), 0.0,
                         [](double acc, const cplx& z) { return acc + std::norm(z); });
}

std::vector<cplx> spectrum(const Wavefunction& psi) {
  std::vector<cplx> phi(psi.amplitudes().begin(), psi.amplitudes().end());
  detail::cached_plan(phi.size()).forward(phi);
  return phi;
}

struct Moments {
  double var_x;
  double cov_xp;
  double var_p;
};

// Second moments of psi from a single spectrum.
Moments second_moments(const Wavefunction& psi) {
  const Grid& g = psi.grid();
  auto phi = spectrum(psi);
  double p1 = 0.0, p2 = 0.0, total_k = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double k = g.wavenumber(j);
    const double w = std::norm(phi[j]);
    total_k += w;
    p1 += k * w;
    p2 += k * k * w;
    phi[j] *= hbar * k;
  }
  p1 /= total_k;
  p2 /= total_k;
  detail::cached_plan(phi.size()).inverse(phi);

  double total_x = 0.0, x1 = 0.0, x2 = 0.0, xp = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.position(j);
    const double w = std::norm(psi[j]);
    total_x += w;
    x1 += x * w;
    x2 += x * x * w;
    // Re <x p> equals <xp + px>/2 because <xp> - <px> = i hbar.
    xp += (std::conj(psi[j]) * x * phi[j]).real();
  }
  x1 /= total_x;
  x2 /= total_x;
  xp /= total_x;
  return {x2 - x1 * x1, xp - x1 * hbar * p1, hbar * hbar * (p2 - p1 * p1)};
}

// Predicted variance of x after free flight t, from the current moments.
double free_variance_at(const Wavefunction& psi, const AtomParams& atom, double t) {
  const double m = atom.mass;
  const Moments mo = second_moments(psi);
  return mo.var_x + 2.0 * t * mo.cov_xp / m + t * t * mo.var_p / (m * m);
}

}  // namespace

Grid::Grid(std::size_t num_points, double half_extent)
    : num_points_(num_points), half_extent_(half_extent) {
  if (num_points < 2 || !std::has_single_bit(num_points))
    throw GuardError("grid num_points must be a power of two >= 2, got " +
                     std::to_string(num_points));
  if (!(half_extent > 0.0) || !std::isfinite(half_extent))
    throw GuardError("grid half_extent must be > 0");
  spacing_ = 2.0 * half_extent / static_cast<double>(num_points);
}

double Grid::wavenumber(std::size_t j) const {
  const auto n = static_cast<std::ptrdiff_t>(num_points_);
  auto s = static_cast<std::ptrdiff_t>(j);
  if (s >= n / 2) s -= n;
  return two_pi * static_cast<double>(s) / (static_cast<double>(n) * spacing_);
}

Wavefunction::Wavefunction(Grid grid, std::vector<cplx> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_.size())
    throw GuardError("amplitude count does not match grid size");
  for (const auto& a : amplitudes_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw GuardError("wavefunction amplitudes must be finite");
}

Wavefunction Wavefunction::scaled(cplx factor) const {
  Wavefunction out = *this;
  for (auto& a : out.amplitudes_) a *= factor;
  return out;
}

Wavefunction make_gaussian(const Grid& grid, double w0, double center, double kick) {
  if (!(w0 >= 8.0 * grid.spacing()))
    throw GuardError("make_gaussian resolution guard: w0 must be >= 8 grid spacings (" +
                     std::to_string(8.0 * grid.spacing()) + " m)");
  if (!(std::abs(center) + 3.0 * w0 < grid.half_extent()))
    throw GuardError("make_gaussian containment guard: |center| + 3 w0 must be < half_extent");
  std::vector<cplx> amps(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.position(j);
    const double u = (x - center) / w0;
    amps[j] = std::exp(cplx(-u * u, kick * x));
  }
  const double scale = 1.0 / std::sqrt(sum_abs2(amps) * grid.spacing());
  for (auto& a : amps) a *= scale;
  return Wavefunction(grid, std::move(amps));
}

Wavefunction make_gaussian_beam(const Grid& grid, const AtomParams& atom, double w0,
                                double time_to_waist) {
  if (!(w0 >= 8.0 * grid.spacing()))
    throw GuardError("make_gaussian_beam resolution guard: w0 must be >= 8 grid spacings");
  const double t0 = atom.mass * w0 * w0 / (2.0 * hbar);
  const double t = -time_to_waist;
  const double w = w0 * std::hypot(1.0, t / t0);
  if (!(3.0 * w < grid.half_extent()))
    throw GuardError("make_gaussian_beam containment guard: 3 w(t) must be < half_extent");
  // Free solution q^{-1/2} exp(i m x^2 / (2 hbar q)) with q = t - i t0.
  const cplx q(t, -t0);
  const double chirp = atom.mass * grid.half_extent() * std::abs(t) / (hbar * std::norm(q));
  if (!(chirp < grid.nyquist_wavenumber()))
    throw GuardError("make_gaussian_beam Nyquist guard: wavefront chirp exceeds pi/dx");
  const cplx prefactor = 1.0 / std::sqrt(q);
  const cplx coeff = cplx(0.0, atom.mass / (2.0 * hbar)) / q;
  std::vector<cplx> amps(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.position(j);
    amps[j] = prefactor * std::exp(coeff * x * x);
  }
  const double scale = 1.0 / std::sqrt(sum_abs2(amps) * grid.spacing());
  for (auto& a : amps) a *= scale;
  return Wavefunction(grid, std::move(amps));
}

Wavefunction propagate_free(const Wavefunction& psi, const AtomParams& atom, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw GuardError("propagate_free needs t >= 0");
  if (t == 0.0 || norm(psi) == 0.0) return psi;
  const Grid& grid = psi.grid();
  const double var = free_variance_at(psi, atom, t);
  const double w = 2.0 * std::sqrt(std::max(var, 0.0));
  if (!(4.0 * w < 2.0 * grid.half_extent()))
    throw GuardError("propagate_free containment guard: predicted width " + std::to_string(w) +
                     " m is too large for the grid; use a larger half_extent");

  std::vector<cplx> data(psi.amplitudes().begin(), psi.amplitudes().end());
  detail::FftPlan& plan = detail::cached_plan(data.size());
  plan.forward(data);
  const double a = hbar * t / (2.0 * atom.mass);
  for (std::size_t j = 0; j < data.size(); ++j) {
    const double k = grid.wavenumber(j);
    data[j] *= std::polar(1.0, -a * k * k);
  }
  plan.inverse(data);
  Wavefunction out(grid, std::move(data));
  check_boundary(out, "propagate_free");
  return out;
}

Wavefunction apply_lens_phase(const Wavefunction& psi, const AtomParams& atom,
                              FocalTime t_focal) {
  if (!t_focal) return psi;
  const Grid& grid = psi.grid();
  const double tf = *t_focal;
  if (tf == 0.0 || !std::isfinite(tf)) throw GuardError("focal time must be finite and nonzero");
  const double k_edge = atom.mass * grid.half_extent() / (hbar * std::abs(tf));
  if (!(k_edge < grid.nyquist_wavenumber()))
    throw GuardError("apply_lens_phase Nyquist guard: lens chirp " + std::to_string(k_edge) +
                     " rad/m at the grid edge exceeds pi/dx; use a finer grid");
  Wavefunction out = psi;
  const double a = atom.mass / (2.0 * hbar * tf);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.position(j);
    out[j] *= std::polar(1.0, -a * x * x);
  }
  return out;
}

Wavefunction propagate_quadratic(const Wavefunction& psi, const AtomParams& atom,
                                 const QuadraticPotential& pot, int steps) {
  if (steps < 1) throw GuardError("propagate_quadratic needs steps >= 1");
  if (!(pot.duration > 0.0)) throw GuardError("quadratic potential duration must be > 0");
  const double omega = std::sqrt(2.0 * std::abs(pot.curvature) / atom.mass);
  const double dt = pot.duration / steps;
  if (!(dt * omega < 0.1)) {
    const auto suggested = static_cast<long>(std::ceil(10.0 * omega * pot.duration)) + 1;
    throw GuardError("propagate_quadratic unresolved-period guard: step " + std::to_string(dt) +
                     " s is not < 1/(10 omega_ho); use at least " +
                     std::to_string(suggested) + " steps");
  }
  const Grid& grid = psi.grid();
  const std::size_t n = grid.size();

  std::vector<cplx> half_kin(n), full_kin(n), pot_phase(n);
  const double a = hbar * dt / (2.0 * atom.mass);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = grid.wavenumber(j);
    half_kin[j] = std::polar(1.0, -0.5 * a * k * k);
    full_kin[j] = std::polar(1.0, -a * k * k);
    const double x = grid.position(j);
    pot_phase[j] = std::polar(1.0, -pot.curvature * x * x * dt / hbar);
  }

  // K/2 V K V ... K V K/2: adjacent half kinetic steps merged.
  std::vector<cplx> data(psi.amplitudes().begin(), psi.amplitudes().end());
  detail::FftPlan& plan = detail::cached_plan(n);
  plan.forward(data);
  for (std::size_t j = 0; j < n; ++j) data[j] *= half_kin[j];
  for (int s = 0; s < steps; ++s) {
    plan.inverse(data);
    for (std::size_t j = 0; j < n; ++j) data[j] *= pot_phase[j];
    plan.forward(data);
    const auto& kin = (s + 1 == steps) ? half_kin : full_kin;
    for (std::size_t j = 0; j < n; ++j) data[j] *= kin[j];
  }
  plan.inverse(data);
  Wavefunction out(grid, std::move(data));
  check_boundary(out, "propagate_quadratic");
  return out;
}

double norm(const Wavefunction& psi) { return sum_abs2(psi.amplitudes()) * psi.grid().spacing(); }

double mean_position(const Wavefunction& psi) {
  const Grid& g = psi.grid();
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) s += g.position(j) * std::norm(psi[j]);
  return s * g.spacing() / norm(psi);
}

double position_variance(const Wavefunction& psi) {
  const Grid& g = psi.grid();
  const double mu = mean_position(psi);
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double dx = g.position(j) - mu;
    s += dx * dx * std::norm(psi[j]);
  }
  return s * g.spacing() / norm(psi);
}

double width(const Wavefunction& psi) { return 2.0 * std::sqrt(position_variance(psi)); }

double mean_momentum(const Wavefunction& psi) {
  const auto phi = spectrum(psi);
  const Grid& g = psi.grid();
  double num = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) num += g.wavenumber(j) * std::norm(phi[j]);
  return hbar * num / sum_abs2(phi);
}

double momentum_variance(const Wavefunction& psi) { return second_moments(psi).var_p; }

double covariance_xp(const Wavefunction& psi) { return second_moments(psi).cov_xp; }

cplx overlap(const Wavefunction& a, const Wavefunction& b) {
  require_same_grid(a, b);
  cplx s = 0.0;
  for (std::size_t j = 0; j < a.grid().size(); ++j) s += std::conj(a[j]) * b[j];
  return s * a.grid().spacing();
}

double gouy_numeric(const Wavefunction& psi, const Wavefunction& reference) {
  require_same_grid(psi, reference);
  const double tol = 0.5 * psi.grid().spacing();
  if (std::abs(mean_position(psi)) > tol || std::abs(mean_position(reference)) > tol)
    throw GuardError("gouy_numeric needs centered states (<x> = 0)");
  const double d = std::arg(psi.on_axis()) - std::arg(reference.on_axis());
  return wrap_phase(-d) + 0.0;  // no negative zero
}

std::vector<double> trace_gouy(const Wavefunction& start, const AtomParams& atom,
                               const Wavefunction& reference, std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  double t_prev = 0.0;
  double raw_prev = gouy_numeric(start, reference);
  double unwrapped = raw_prev;
  for (double target : times) {
    if (target < t_prev) throw GuardError("trace_gouy needs ascending non-negative times");
    // Walk toward target, halving the stride while the phase jump is too big.
    double t = t_prev;
    while (t < target) {
      double stride = target - t;
      for (;;) {
        const double raw = gouy_numeric(propagate_free(start, atom, t + stride), reference);
        const double delta = std::remainder(raw - raw_prev, two_pi);
        if (std::abs(delta) <= pi / 4.0 || stride < 1e-12 * std::max(target, 1e-300)) {
          unwrapped += delta;
          raw_prev = raw;
          t += stride;
          break;
        }
        stride *= 0.5;
      }
    }
    t_prev = target;
    out.push_back(unwrapped);
  }
  return out;
}

double find_waist_time(const Wavefunction& psi, const AtomParams& atom, double t_max) {
  if (!(t_max > 0.0)) throw GuardError("find_waist_time needs t_max > 0");
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double t) { return width(propagate_free(psi, atom, t)); };
  double a = 0.0, b = t_max;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10 * t_max) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double waist_time_from_moments(const Wavefunction& psi, const AtomParams& atom) {
  return -atom.mass * covariance_xp(psi) / momentum_variance(psi);
}

void check_boundary(const Wavefunction& psi, const char* context) {
  const auto amps = psi.amplitudes();
  const std::size_t n = amps.size();
  const std::size_t edge = std::max<std::size_t>(1, n / 10);
  // Compared in |psi|^2 to avoid a square root per point.
  double peak = 0.0, outer = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::norm(amps[j]);
    peak = std::max(peak, a);
    if (j < edge || j >= n - edge) outer = std::max(outer, a);
  }
  if (peak > 0.0 && outer >= 1e-12 * peak)
    throw GuardError(std::string(context) +
                     " boundary guard: wavefunction reaches the outer 10% of the grid "
                     "(|psi| ratio " + std::to_string(std::sqrt(outer / peak)) +
                     "); use a larger grid");
}

}  // namespace gouysim
