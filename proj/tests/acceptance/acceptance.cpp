// Acceptance checks at default parameters. One PASS/FAIL line per criterion.
//
// Usage: acceptance [--properties PATH] [--expect-red N]...
// Without --expect-red the exit status is the number of failing criteria.
// With it, the run succeeds only when exactly the listed criteria fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gouysim/beam_optics.hpp"
#include "gouysim/lens_design.hpp"
#include "gouysim/ramsey.hpp"
#include "gouysim/wavepacket.hpp"

using namespace gouysim;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records one sub-check; the criterion passes only if all of them do.
  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    if (detail.tellp() > 0) detail << "; ";
    detail << what << (ok ? "" : " [FAIL]");
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool within_rel(double v, double target, double tol) {
  return std::abs(v / target - 1.0) <= tol;
}

const AtomParams atom;
const CavityLensParams cavity;
constexpr double slit_w0 = 10e-6;

GaussianBeamParams slit_beam() {
  return GaussianBeamParams::from_waist(slit_w0, 0.0, atom.longitudinal_wavenumber());
}

GaussianBeamParams focused_beam() {
  return apply_thin_lens(slit_beam(),
                         LensSpec::thin(*focal_distance(cavity, atom, InternalState::g), 0.0));
}

double t0_of(double w0) { return atom.mass * w0 * w0 / (2.0 * hbar); }

InterferometerSetup default_setup() {
  InterferometerSetup s;
  s.ramsey.omega_gi = s.atom.omega_gi();
  s.ramsey.omega_r = s.atom.omega_gi();
  return s;
}

ShiftMeasurement scan(const InterferometerSetup& s) {
  const double half_span = two_pi * 250.0;
  return gouy_shift_measurement(s, s.ramsey.omega_gi - half_span,
                                s.ramsey.omega_gi + half_span, 16);
}

void rayleigh_range(Outcome& o) {
  const double zr = matter_rayleigh_range(atom, slit_w0);
  o.expect(std::abs(zr - 3.42) <= 0.01, "z_r = " + fmt(zr) + " m (3.42 +- 0.01)");
  o.expect(within_rel(3.5, zr, 0.03), "3.5 m rounding off by " +
                                          fmt(100.0 * (3.5 / zr - 1.0)) + "% (< 3%)");
}

void focal_distances(Outcome& o) {
  const double zg = *focal_distance(cavity, atom, InternalState::g);
  const double zi = *focal_distance(cavity, atom, InternalState::i);
  o.expect(within_rel(zg, 0.105, 0.01), "z_F(g) = " + fmt(zg) + " m (0.105 +- 1%)");
  o.expect(within_rel(zi, -11.2, 0.05), "z_F(i) = " + fmt(zi) + " m (-11.2 +- 5%)");
}

void focused_beam_check(Outcome& o) {
  const auto f = focused_beam();
  o.expect(within_rel(f.rayleigh_range, 3.15e-3, 0.02),
           "z_r' = " + fmt(f.rayleigh_range * 1e3) + " mm (3.15 +- 2%)");
  o.expect(within_rel(f.waist_radius, 0.30e-6, 0.02),
           "w0' = " + fmt(f.waist_radius * 1e6) + " um (0.30 +- 2%)");

  const Grid grid = Grid::standard();
  const auto tf = focal_time(cavity, atom, InternalState::g);
  const auto lensed = apply_lens_phase(make_gaussian(grid, slit_w0), atom, tf);
  const double t_min = find_waist_time(lensed, atom, 2.0 * *tf);
  const double w_min = width(propagate_free(lensed, atom, t_min));
  const double z_min = atom.v_z * t_min;
  o.expect(within_rel(z_min, f.waist_position, 0.005) && within_rel(w_min, f.waist_radius, 0.005),
           "numeric waist " + fmt(w_min * 1e6) + " um at " + fmt(z_min) +
               " m (thin-lens formula within 0.5%)");
}

void absorption(Outcome& o) {
  const double a = absorption_parameter(cavity, slit_w0);
  o.expect(within_rel(a, 8.7e-4, 0.01), "absorption = " + fmt(a) + " (8.7e-4 +- 1%)");
  o.expect(std::abs(a - 8e-4) < 1e-4, "within 1e-4 of 8e-4");
}

void thin_vs_exact(Outcome& o) {
  const Grid grid = Grid::standard();
  const double c = potential_curvature(cavity, InternalState::g);
  const double tau = cavity.interaction_time;
  const auto tf = focal_time(cavity, atom, InternalState::g);
  const auto psi = make_gaussian(grid, slit_w0);
  // Both focal times measured from the cavity centre.
  const auto thin = apply_lens_phase(propagate_free(psi, atom, 0.5 * tau), atom, tf);
  const auto thick = propagate_quadratic(psi, atom, {c, tau}, default_cavity_steps);
  const double t_thin = waist_time_from_moments(thin, atom);
  const double t_thick = waist_time_from_moments(thick, atom) + 0.5 * tau;
  const double pct = 100.0 * (t_thick / t_thin - 1.0);
  o.expect(std::abs(pct - 1.6) <= 0.3, "discrepancy " + fmt(pct) + "% (1.6 +- 0.3)");
  o.expect(std::abs(pct) < 2.0, "below 2%");
}

void gouy_trajectory(Outcome& o) {
  const Grid wide(16384, 400e-6);
  const double t0 = t0_of(slit_w0);
  const auto psi = make_gaussian(wide, slit_w0);
  double worst = 0.0;
  for (int j = 1; j <= 20; ++j) {
    const double t = 3.0 * t0 * j / 20.0;
    const double xi = gouy_numeric(propagate_free(psi, atom, t), psi);
    worst = std::max(worst, std::abs(xi - 0.5 * std::atan(t / t0)));
  }
  o.expect(worst < 1e-5, "free-flight law max error " + fmt(worst) + " rad at 20 times (< 1e-5)");

  const Grid grid = Grid::standard();
  const auto tf = focal_time(cavity, atom, InternalState::g);
  const auto start = apply_lens_phase(make_gaussian(grid, slit_w0), atom, tf);
  const DesignGeometry geometry;
  std::vector<double> times;
  for (int j = 1; j <= 20; ++j) times.push_back(geometry.cavity_separation / atom.v_z * j / 20.0);
  const double numeric = trace_gouy(start, atom, start, times).back();
  const double analytic = gouy_accumulated(focused_beam(), 0.0, geometry.cavity_separation);
  o.expect(within_rel(numeric, 1.541, 0.005),
           "C1->C2 numeric " + fmt(numeric) + " rad (1.541 +- 0.5%)");
  o.expect(within_rel(numeric, analytic, 0.005), "analytic " + fmt(analytic) + " rad");
}

void headline_shift(Outcome& o) {
  const auto s = default_setup();
  const auto m = scan(s);
  o.expect(m.shift >= 1.45 && m.shift <= 1.57, "shift " + fmt(m.shift) + " rad in [1.45, 1.57]");
  o.expect(m.lenses_on.contrast > 0.95, "contrast " + fmt(m.lenses_on.contrast) + " (> 0.95)");

  // Forced limit: 100x photons shrink z_r' by 1e4; C2 at the mirror image
  // of C1 about the focus recollimates the g beam.
  auto lim = s;
  lim.cavity_1.photon_number *= 100.0;
  lim.cavity_2.photon_number *= 100.0;
  lim.exact_mode = false;
  lim.suppress_i_lens = true;
  lim.grid = Grid(262144, 60e-6);
  const double zf = *focal_distance(lim.cavity_1, lim.atom, InternalState::g);
  lim.geometry.cavity_separation =
      2.0 * apply_thin_lens(slit_beam(), LensSpec::thin(zf, 0.0)).waist_position;
  const auto ml = scan(lim);
  o.expect(std::abs(ml.shift - pi / 2.0) < 1e-3,
           "forced limit " + fmt(ml.shift) + " rad, pi/2 - shift = " + fmt(pi / 2.0 - ml.shift) +
               " (< 1e-3)");
}

void covariance_law(Outcome& o) {
  const Grid wide(16384, 400e-6);
  const double t0 = t0_of(slit_w0);
  const auto psi = make_gaussian(wide, slit_w0);
  double worst = 0.0;
  for (double f : {0.1, 1.0, 3.0}) {
    const double xi = 0.5 * std::atan(f);
    const double expected = 0.5 * hbar * std::tan(2.0 * xi);
    const double cov = covariance_xp(propagate_free(psi, atom, f * t0));
    worst = std::max(worst, std::abs(cov / expected - 1.0));
  }
  o.expect(worst < 1e-6, "max relative error " + fmt(worst) + " at 0.1, 1, 3 t0 (< 1e-6)");
}

void property_suites(Outcome& o, const std::string& binary) {
  if (binary.empty()) {
    o.expect(false, "property binary not given (--properties PATH)");
    return;
  }
  const std::string cmd = "\"" + binary + "\" --minimal";
  const int status = std::system(cmd.c_str());
  o.expect(status == 0, "property suites (100 draws each) exit status " + std::to_string(status));
}

void q_bound(Outcome& o) {
  const auto qb = quality_bound(cavity);
  o.expect(qb.q_min_per_cavity >= 1.7e6 && qb.q_min_per_cavity <= 1.9e6,
           "Q_min per cavity " + fmt(qb.q_min_per_cavity) + " in [1.7e6, 1.9e6]");
  o.expect(qb.q_min_two_cavities >= 3.4e6 && qb.q_min_two_cavities <= 3.6e6,
           "two cavities " + fmt(qb.q_min_two_cavities) + " in [3.4e6, 3.6e6]");
  o.expect(qb.configured_q == 4e6 && qb.satisfies_per_cavity && qb.satisfies_two_cavities,
           "Q = 4e6 satisfies both");
  const auto report = design_report(atom, slit_w0, cavity, {});
  o.expect(report.check("q_residual_two_cavities").pass, "design report flags Q = 4e6 as PASS");
}

void thin_mode_info() {
  auto s = default_setup();
  s.exact_mode = false;
  const auto m = scan(s);
  std::printf("INFO thin-lens mode at defaults: shift %s rad, contrast %s\n", fmt(m.shift).c_str(),
              fmt(m.lenses_on.contrast).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string properties;
  std::set<int> expect_red;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--properties" && a + 1 < argc) {
      properties = argv[++a];
    } else if (arg == "--expect-red" && a + 1 < argc) {
      expect_red.insert(std::atoi(argv[++a]));
    } else {
      std::fprintf(stderr, "usage: %s [--properties PATH] [--expect-red N]...\n", argv[0]);
      return 64;
    }
  }

  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"rayleigh range", rayleigh_range},
      {"focal distances", focal_distances},
      {"focused beam", focused_beam_check},
      {"absorption parameter", absorption},
      {"thin lens vs exact cavity", thin_vs_exact},
      {"gouy trajectory", gouy_trajectory},
      {"headline fringe shift", headline_shift},
      {"covariance law", covariance_law},
      {"property suites", [&](Outcome& o) { property_suites(o, properties); }},
      {"Q bound bookkeeping", q_bound},
  };

  std::set<int> failed;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs < 10.0, "took " + fmt(secs) + " s");
    if (!o.pass) failed.insert(id);
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  thin_mode_info();

  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (expect_red.empty()) return static_cast<int>(failed.size());
  if (failed != expect_red) {
    std::printf("failing set differs from the expected red set\n");
    return 1;
  }
  std::printf("only the expected red criteria fail\n");
  return 0;
}
