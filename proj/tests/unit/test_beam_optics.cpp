#include <doctest.h>

#include <cmath>
#include <limits>

#include "gaussian_oracle.hpp"
#include "gouysim/beam_optics.hpp"
#include "gouysim/lens_design.hpp"

using namespace gouysim;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Beam with w0 = 10 um and z0 = 3.42 m.
GaussianBeamParams slit_beam() {
  const double w0 = 10e-6;
  return GaussianBeamParams::from_waist(w0, 0.0, 2.0 * 3.42 / (w0 * w0));
}

GaussianBeamParams matter_beam(const AtomParams& atom, double w0) {
  return GaussianBeamParams::from_waist(w0, 0.0, atom.longitudinal_wavenumber());
}

}  // namespace

TEST_CASE("rayleigh range follows k w0^2 / 2") {
  const auto b = GaussianBeamParams::from_waist(2e-6, 1.0, 3e6);
  CHECK(b.rayleigh_range == doctest::Approx(0.5 * 3e6 * 4e-12).epsilon(1e-14));
  CHECK_NOTHROW(b.validate());
  auto broken = b;
  broken.rayleigh_range *= 1.0 + 1e-9;
  CHECK_THROWS_AS(broken.validate(), GuardError);
  CHECK_THROWS_AS(GaussianBeamParams::from_waist(0.0, 0.0, 1.0), GuardError);
  CHECK_THROWS_AS(GaussianBeamParams::from_waist(1e-6, 0.0, -1.0), GuardError);
}

TEST_CASE("beam width") {
  const auto b = slit_beam();
  CHECK(beam_width(b, 0.0) == 10e-6);
  CHECK(beam_width(b, b.rayleigh_range) == doctest::Approx(10e-6 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(beam_width(b, 0.21) == doctest::Approx(10.0189e-6).epsilon(1e-5));
  CHECK(beam_width(b, -0.21) == beam_width(b, 0.21));
}

TEST_CASE("curvature radius") {
  const auto b = slit_beam();
  const double z0 = b.rayleigh_range;
  CHECK(curvature_radius(b, z0).value() == doctest::Approx(2.0 * z0).epsilon(1e-14));
  const double far = 100.0 * z0;
  CHECK(rel(curvature_radius(b, far).value(), far) < 1e-4);
  const auto flat = curvature_radius(b, 0.0);
  CHECK(flat.is_flat());
  CHECK(flat.curvature() == 0.0);
  CHECK_THROWS_AS(flat.value(), GuardError);
  CHECK(curvature_radius(b, -z0).value() == doctest::Approx(-2.0 * z0));
}

TEST_CASE("gouy phase") {
  const auto b = slit_beam();
  CHECK(gouy_phase(b, 0.0) == 0.0);
  CHECK(gouy_phase(b, b.rayleigh_range) == doctest::Approx(pi / 8.0).epsilon(1e-15));
  CHECK(gouy_accumulated(b, -inf, inf) == doctest::Approx(pi / 2.0).epsilon(1e-15));
  CHECK(gouy_phase(b, 1e12 * b.rayleigh_range) - gouy_phase(b, -1e12 * b.rayleigh_range) ==
        doctest::Approx(pi / 2.0).epsilon(1e-11));
}

TEST_CASE("matter-wave rayleigh range") {
  const AtomParams atom;
  const double zr = matter_rayleigh_range(atom, 10e-6);
  CHECK(zr == doctest::Approx(3.42).epsilon(0.01 / 3.42));
  // The quoted round figure 3.5 m is within 3 %.
  CHECK(rel(3.5, zr) < 0.03);
  CHECK(matter_rayleigh_range(atom, 20e-6) == doctest::Approx(4.0 * zr).epsilon(1e-15));
  AtomParams light = atom;
  light.mass *= 0.5;
  CHECK(matter_rayleigh_range(light, 10e-6) == doctest::Approx(1.71).epsilon(0.01 / 1.71));
  // Independent route: z_r = v_z t0 with t0 = m w0^2 / (2 hbar).
  CHECK(rel(zr, atom.v_z * atom.mass * 1e-10 / (2.0 * oracle::hbar)) < 1e-14);
  AtomParams bad = atom;
  bad.v_z = 0.0;
  CHECK_THROWS_AS(matter_rayleigh_range(bad, 10e-6), GuardError);
}

TEST_CASE("thin lens: no-lens sentinel is the identity") {
  const auto b = slit_beam();
  const auto out = apply_thin_lens(b, LensSpec::none(0.3));
  CHECK(out.waist_radius == b.waist_radius);
  CHECK(out.waist_position == b.waist_position);
  CHECK(out.rayleigh_range == b.rayleigh_range);
  CHECK(out.wavenumber == b.wavenumber);
  CHECK(LensSpec::none().is_none());
  CHECK_THROWS_AS(LensSpec::none().focal_length(), GuardError);
  CHECK_THROWS_AS(LensSpec::thin(0.0, 0.0), GuardError);
  CHECK_THROWS_AS(LensSpec::thin(inf, 0.0), GuardError);
}

TEST_CASE("thin lens: waist-at-lens formulas") {
  const auto b = slit_beam();
  const double zr = b.rayleigh_range;
  const double f = 0.105;
  const double s = (zr / f) * (zr / f);
  const auto out = apply_thin_lens(b, LensSpec::thin(f, 0.0));
  CHECK(rel(out.rayleigh_range, zr / (1.0 + s)) < 1e-12);
  CHECK(rel(out.waist_radius, b.waist_radius / std::sqrt(1.0 + s)) < 1e-12);
  CHECK(rel(out.waist_position, f * s / (1.0 + s)) < 1e-12);
  CHECK(out.rayleigh_range == doctest::Approx(3.2e-3).epsilon(0.01));
  CHECK(out.waist_radius == doctest::Approx(0.30e-6).epsilon(0.03));
}

TEST_CASE("thin lens: diverging i-state lens barely changes the beam") {
  const auto b = slit_beam();
  const auto out = apply_thin_lens(b, LensSpec::thin(-11.2, 0.0));
  CHECK(out.rayleigh_range == doctest::Approx(3.13).epsilon(0.01));
  CHECK(out.waist_radius == doctest::Approx(9.6e-6).epsilon(0.01));
  CHECK(out.waist_position < 0.0);
}

TEST_CASE("thin lens agrees with the ray-matrix oracle for an off-waist lens") {
  const AtomParams atom;
  const double w0 = 10e-6;
  const auto b = GaussianBeamParams::from_waist(w0, 0.7, atom.longitudinal_wavenumber());
  const double lens_z = 0.2, f = 0.15;
  const auto out = apply_thin_lens(b, LensSpec::thin(f, lens_z));

  const auto p = oracle::Packet::at(atom.mass, w0, (0.7 - lens_z) / atom.v_z)
                     .then(oracle::thin_lens(f / atom.v_z));
  CHECK(rel(out.waist_position, lens_z + atom.v_z * p.time_to_waist()) < 1e-10);
  CHECK(rel(out.rayleigh_range, atom.v_z * p.rayleigh_time()) < 1e-10);
  const auto at_waist = p.then(oracle::free_flight(p.time_to_waist()));
  CHECK(rel(out.waist_radius, at_waist.width()) < 1e-10);
}

TEST_CASE("default lens focuses the slit beam to z_F") {
  const AtomParams atom;
  const CavityLensParams cavity;
  const auto zf = focal_distance(cavity, atom, InternalState::g);
  REQUIRE(zf.has_value());
  const auto out = apply_thin_lens(matter_beam(atom, 10e-6), LensSpec::thin(*zf, 0.0));
  CHECK(rel(out.waist_position, *zf) < 1e-3);
  CHECK(out.rayleigh_range < 0.21 / 10.0);
}

TEST_CASE("accumulated gouy phase") {
  const auto b = slit_beam();
  const double z = 0.4;
  CHECK(gouy_accumulated(b, -z, z) ==
        doctest::Approx(std::atan(z / b.rayleigh_range)).epsilon(1e-15));
  const double k = 2.0 * 3.15e-3 / (0.3e-6 * 0.3e-6);
  const auto focused = GaussianBeamParams::from_waist(0.3e-6, 0.0, k);
  CHECK(gouy_accumulated(focused, -0.105, 0.105) == doctest::Approx(1.541).epsilon(5e-4));
  CHECK(gouy_accumulated(focused, -inf, inf) == doctest::Approx(pi / 2.0));
  CHECK(gouy_accumulated(focused, 0.0, inf) == doctest::Approx(pi / 4.0));
  CHECK_THROWS_AS(gouy_accumulated(b, 1.0, 1.0), GuardError);
  CHECK_THROWS_AS(gouy_accumulated(b, 1.0, 0.0), GuardError);
}

TEST_CASE("from_q recovers the beam") {
  const auto b = GaussianBeamParams::from_waist(3e-6, -0.4, 7e6);
  const double z = 1.3;
  const auto back = GaussianBeamParams::from_q(b.q(z), z, b.wavenumber);
  CHECK(rel(back.waist_radius, b.waist_radius) < 1e-14);
  CHECK(rel(back.waist_position, b.waist_position) < 1e-14);
  CHECK(rel(back.rayleigh_range, b.rayleigh_range) < 1e-14);
  CHECK_THROWS_AS(GaussianBeamParams::from_q({1.0, -1.0}, 0.0, 1.0), GuardError);
}
