#include "gouysim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "gouysim/format.hpp"

namespace gouysim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string at_line(int line) { return "line " + std::to_string(line) + ": "; }

double parse_number(std::string_view text, int line, std::string_view key) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != end || !std::isfinite(v))
    throw ConfigError(at_line(line) + "malformed number '" + std::string(text) + "' for " +
                      std::string(key));
  return v;
}

long long parse_integer(std::string_view text, int line, std::string_view key) {
  const double v = parse_number(text, line, key);
  if (v != std::floor(v) || std::abs(v) > 9.0e15)
    throw ConfigError(at_line(line) + std::string(key) + " must be an integer, got '" +
                      std::string(text) + "'");
  return static_cast<long long>(v);
}

bool parse_bool(std::string_view text, int line, std::string_view key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(at_line(line) + "malformed boolean '" + std::string(text) + "' for " +
                    std::string(key));
}

struct RawExtras {
  std::optional<double> omega_gi;
  std::optional<double> scan_center;
};

using Setter = std::function<void(ExperimentConfig&, RawExtras&, std::string_view, int,
                                  std::string_view)>;

Setter real(double ExperimentConfig::*field, double scale = 1.0) {
  return [=](ExperimentConfig& c, RawExtras&, std::string_view v, int line, std::string_view k) {
    c.*field = scale * parse_number(v, line, k);
  };
}

template <typename Member>
Setter nested(Member ExperimentConfig::*outer, double Member::*field, double scale = 1.0) {
  return [=](ExperimentConfig& c, RawExtras&, std::string_view v, int line, std::string_view k) {
    (c.*outer).*field = scale * parse_number(v, line, k);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"atom.mass_kg", nested(&ExperimentConfig::atom, &AtomParams::mass)},
      {"atom.vz_mps", nested(&ExperimentConfig::atom, &AtomParams::v_z)},
      {"atom.omega_i_hz", nested(&ExperimentConfig::atom, &AtomParams::omega_i, two_pi)},
      {"atom.omega_g_hz", nested(&ExperimentConfig::atom, &AtomParams::omega_g, two_pi)},
      {"atom.omega_e_hz", nested(&ExperimentConfig::atom, &AtomParams::omega_e, two_pi)},
      {"slit.w0_m", real(&ExperimentConfig::slit_w0)},
      {"cavity.lambda_m", nested(&ExperimentConfig::cavity, &CavityLensParams::wavelength)},
      {"cavity.n_photons", nested(&ExperimentConfig::cavity, &CavityLensParams::photon_number)},
      {"cavity.rabi_hz",
       nested(&ExperimentConfig::cavity, &CavityLensParams::rabi_per_photon, two_pi)},
      {"cavity.detuning_g_hz",
       nested(&ExperimentConfig::cavity, &CavityLensParams::detuning_g, two_pi)},
      {"cavity.detuning_i_hz",
       nested(&ExperimentConfig::cavity, &CavityLensParams::detuning_i, two_pi)},
      {"cavity.t_i_s", nested(&ExperimentConfig::cavity, &CavityLensParams::interaction_time)},
      {"cavity.q_factor", nested(&ExperimentConfig::cavity, &CavityLensParams::quality_factor)},
      {"geometry.d_m", real(&ExperimentConfig::cavity_separation)},
      {"geometry.apparatus_length_m", real(&ExperimentConfig::apparatus_length)},
      {"geometry.drift_pre_m", real(&ExperimentConfig::drift_pre)},
      {"geometry.drift_post_m", real(&ExperimentConfig::drift_post)},
      {"ramsey.ramsey_time_s", real(&ExperimentConfig::ramsey_time)},
      {"ramsey.omega_gi_hz",
       [](ExperimentConfig&, RawExtras& x, std::string_view v, int line, std::string_view k) {
         x.omega_gi = two_pi * parse_number(v, line, k);
       }},
      {"ramsey.scan_center_hz",
       [](ExperimentConfig&, RawExtras& x, std::string_view v, int line, std::string_view k) {
         x.scan_center = two_pi * parse_number(v, line, k);
       }},
      {"ramsey.scan_span_hz", real(&ExperimentConfig::scan_span, two_pi)},
      {"ramsey.scan_points",
       [](ExperimentConfig& c, RawExtras&, std::string_view v, int line, std::string_view k) {
         const auto n = parse_integer(v, line, k);
         c.scan_points = static_cast<int>(std::clamp<long long>(n, -1, 1 << 30));
       }},
      {"ramsey.pulse_phase_rad", real(&ExperimentConfig::pulse_phase)},
      {"ramsey.suppress_i_lens",
       [](ExperimentConfig& c, RawExtras&, std::string_view v, int line, std::string_view k) {
         c.suppress_i_lens = parse_bool(v, line, k);
       }},
      {"numerics.grid_points",
       [](ExperimentConfig& c, RawExtras&, std::string_view v, int line, std::string_view k) {
         const auto n = parse_integer(v, line, k);
         if (n < 0) throw ConfigError(at_line(line) + "numerics.grid_points must be >= 2");
         c.grid_points = static_cast<std::size_t>(n);
       }},
      {"numerics.grid_half_extent_m", real(&ExperimentConfig::grid_half_extent)},
      {"numerics.cavity_steps",
       [](ExperimentConfig& c, RawExtras&, std::string_view v, int line, std::string_view k) {
         const auto n = parse_integer(v, line, k);
         c.cavity_steps = static_cast<int>(std::clamp<long long>(n, -1, 1 << 30));
       }},
      {"numerics.exact_mode",
       [](ExperimentConfig& c, RawExtras&, std::string_view v, int line, std::string_view k) {
         c.exact_mode = parse_bool(v, line, k);
       }},
  };
  return table;
}

void require(bool ok, const std::string& field, const std::string& bound, double value) {
  if (!ok)
    throw ConfigError(field + " must be " + bound + " (got " + format_shortest(value) + ")");
}

}  // namespace

void ExperimentConfig::validate() const {
  require(atom.mass > 0, "atom.mass_kg", "> 0", atom.mass);
  require(atom.v_z > 0, "atom.vz_mps", "> 0", atom.v_z);
  require(atom.omega_i >= 0, "atom.omega_i_hz", ">= 0", atom.omega_i / two_pi);
  require(atom.omega_g > atom.omega_i, "atom.omega_g_hz", "> atom.omega_i_hz",
          atom.omega_g / two_pi);
  require(atom.omega_e > atom.omega_g, "atom.omega_e_hz", "> atom.omega_g_hz",
          atom.omega_e / two_pi);
  require(slit_w0 > 0, "slit.w0_m", "> 0", slit_w0);
  require(cavity.wavelength > 0, "cavity.lambda_m", "> 0", cavity.wavelength);
  require(cavity.photon_number > 0, "cavity.n_photons", "> 0", cavity.photon_number);
  require(cavity.rabi_per_photon > 0, "cavity.rabi_hz", "> 0", cavity.rabi_per_photon / two_pi);
  require(cavity.detuning_g != 0, "cavity.detuning_g_hz", "nonzero", 0.0);
  require(cavity.detuning_i != 0, "cavity.detuning_i_hz", "nonzero", 0.0);
  require(cavity.interaction_time > 0, "cavity.t_i_s", "> 0", cavity.interaction_time);
  require(cavity.quality_factor > 0, "cavity.q_factor", "> 0", cavity.quality_factor);
  require(cavity_separation > 0, "geometry.d_m", "> 0", cavity_separation);
  require(apparatus_length > 0, "geometry.apparatus_length_m", "> 0", apparatus_length);
  require(drift_pre >= 0, "geometry.drift_pre_m", ">= 0", drift_pre);
  require(drift_post >= 0, "geometry.drift_post_m", ">= 0", drift_post);
  require(ramsey_time > 0, "ramsey.ramsey_time_s", "> 0", ramsey_time);
  const double transit = (drift_pre + cavity_separation + drift_post) / atom.v_z;
  require(ramsey_time >= transit * (1.0 - 1e-12), "ramsey.ramsey_time_s",
          ">= R1-R2 transit time " + format_shortest(transit) + " s", ramsey_time);
  require(omega_gi > 0, "ramsey.omega_gi_hz", "> 0", omega_gi / two_pi);
  require(scan_span > 0, "ramsey.scan_span_hz", "> 0", scan_span / two_pi);
  require(scan_points >= 8, "ramsey.scan_points", ">= 8", scan_points);
  require(grid_points >= 2 && (grid_points & (grid_points - 1)) == 0, "numerics.grid_points",
          "a power of two >= 2", static_cast<double>(grid_points));
  require(grid_half_extent > 0, "numerics.grid_half_extent_m", "> 0", grid_half_extent);
  require(cavity_steps >= 1, "numerics.cavity_steps", ">= 1", cavity_steps);
}

InterferometerSetup ExperimentConfig::interferometer() const {
  InterferometerSetup s;
  s.atom = atom;
  s.slit_w0 = slit_w0;
  s.cavity_1 = cavity;
  s.cavity_2 = cavity;
  s.geometry = {cavity_separation, drift_pre, drift_post};
  s.ramsey = {ramsey_time, scan_center, omega_gi, pulse_phase};
  s.grid = Grid(grid_points, grid_half_extent);
  s.cavity_steps = cavity_steps;
  s.lenses_on = true;
  s.exact_mode = exact_mode;
  s.suppress_i_lens = suppress_i_lens;
  return s;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  RawExtras extras;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(at_line(line_no) + "expected 'section.key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError(at_line(line_no) + "unknown key '" + std::string(key) + "'");
    if (!seen.emplace(key).second)
      throw ConfigError(at_line(line_no) + "duplicate key '" + std::string(key) + "'");
    it->second(cfg, extras, value, line_no, key);
  }
  cfg.omega_gi = extras.omega_gi.value_or(cfg.atom.omega_gi());
  cfg.scan_center = extras.scan_center.value_or(cfg.omega_gi);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gouysim
