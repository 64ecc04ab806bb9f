#include "gouysim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "gouysim/beam_optics.hpp"

namespace gouysim {
namespace {

constexpr int beam_samples = 421;
constexpr int trace_samples = 43;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string render_summary(const ScenarioResult& r) {
  std::string s;
  for (const auto& [key, value] : r.summary) s += key + " = " + format_summary(value) + "\n";
  return s;
}

double radius_or_inf(const CurvatureRadius& r) {
  return r.is_flat() ? std::numeric_limits<double>::infinity() : r.value();
}

// Raw slit beam with its waist at C1 (z = 0) and the same beam after the
// g-state lens there.
struct BeamPair {
  GaussianBeamParams raw;
  GaussianBeamParams focused;
};

BeamPair beams(const ExperimentConfig& cfg) {
  const double k = cfg.atom.longitudinal_wavenumber();
  BeamPair b{GaussianBeamParams::from_waist(cfg.slit_w0, 0.0, k), {}};
  const auto f = focal_distance(cfg.cavity, cfg.atom, InternalState::g);
  b.focused = apply_thin_lens(b.raw, f ? LensSpec::thin(*f, 0.0) : LensSpec::none(0.0));
  return b;
}

ScenarioResult run_design_check(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult r;
  const DesignReport report =
      design_report(cfg.atom, cfg.slit_w0, cfg.cavity, cfg.design_geometry());
  const QualityBound qb = quality_bound(cfg.cavity);
  r.text = report.render();
  r.all_checks_pass = report.all_pass();
  int passed = 0;
  for (const auto& c : report.checks) {
    r.summary.emplace_back(c.name, c.value);
    passed += c.pass ? 1 : 0;
  }
  r.summary.emplace_back("q_min_per_cavity", qb.q_min_per_cavity);
  r.summary.emplace_back("q_min_two_cavities", qb.q_min_two_cavities);
  r.summary.emplace_back("checks_passed", passed);
  r.summary.emplace_back("checks_total", static_cast<double>(report.checks.size()));
  const auto path = dir / "design_check.txt";
  write_text(path, r.text);
  r.outputs.push_back(path);
  return r;
}

ScenarioResult run_beam(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult r;
  const BeamPair b = beams(cfg);
  CsvTable table{{"z_m", "w_raw_m", "r_raw_m", "xi_raw_rad", "w_focused_m", "r_focused_m",
                  "xi_focused_rad"},
                 {}};
  const double z_end = cfg.cavity_separation;
  for (int j = 0; j < beam_samples; ++j) {
    const double z = z_end * j / (beam_samples - 1);
    table.rows.push_back({z, beam_width(b.raw, z), radius_or_inf(curvature_radius(b.raw, z)),
                          gouy_phase(b.raw, z), beam_width(b.focused, z),
                          radius_or_inf(curvature_radius(b.focused, z)),
                          gouy_phase(b.focused, z)});
  }
  r.summary = {{"rayleigh_raw_m", b.raw.rayleigh_range},
               {"waist_focused_m", b.focused.waist_radius},
               {"waist_position_focused_m", b.focused.waist_position},
               {"rayleigh_focused_m", b.focused.rayleigh_range}};
  const auto path = dir / "beam.csv";
  write_csv(path, table);
  r.outputs.push_back(path);
  return r;
}

ScenarioResult run_gouy_trace(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult r;
  const BeamPair b = beams(cfg);
  const Grid grid(cfg.grid_points, cfg.grid_half_extent);
  const Wavefunction at_c1 = make_gaussian_beam(grid, cfg.atom, cfg.slit_w0, 0.0);
  const Wavefunction start =
      apply_lens_phase(at_c1, cfg.atom, focal_time(cfg.cavity, cfg.atom, InternalState::g));

  std::vector<double> z(trace_samples), t(trace_samples);
  for (int j = 0; j < trace_samples; ++j) {
    z[j] = cfg.cavity_separation * j / (trace_samples - 1);
    t[j] = z[j] / cfg.atom.v_z;
  }
  const std::vector<double> numeric = trace_gouy(start, cfg.atom, start, t);

  CsvTable table{{"z_m", "xi_analytic_rad", "xi_numeric_rad"}, {}};
  double max_diff = 0.0;
  for (int j = 0; j < trace_samples; ++j) {
    const double analytic = j == 0 ? 0.0 : gouy_accumulated(b.focused, 0.0, z[j]);
    max_diff = std::max(max_diff, std::abs(analytic - numeric[j]));
    table.rows.push_back({z[j], analytic, numeric[j]});
  }
  r.summary = {{"xi_analytic_total_rad", table.rows.back()[1]},
               {"xi_numeric_total_rad", table.rows.back()[2]},
               {"max_abs_difference_rad", max_diff}};
  const auto path = dir / "gouy_trace.csv";
  write_csv(path, table);
  r.outputs.push_back(path);
  return r;
}

ScenarioResult run_fringes(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult r;
  const ShiftMeasurement m =
      gouy_shift_measurement(cfg.interferometer(), cfg.scan_lo(), cfg.scan_hi(), cfg.scan_points);
  CsvTable table{{"omega_r_hz", "p_g_off", "p_g_on"}, {}};
  for (std::size_t j = 0; j < m.lenses_on.samples.size(); ++j)
    table.rows.push_back({m.lenses_on.samples[j].omega_r / two_pi, m.lenses_off.samples[j].p_g,
                          m.lenses_on.samples[j].p_g});
  r.summary = {{"phase_off_rad", m.lenses_off.fitted_phase},
               {"phase_on_rad", m.lenses_on.fitted_phase},
               {"contrast_off", m.lenses_off.contrast},
               {"contrast_on", m.lenses_on.contrast}};
  const auto path = dir / "fringes.csv";
  write_csv(path, table);
  r.outputs.push_back(path);
  return r;
}

ScenarioResult run_shift(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  ScenarioResult r;
  const ShiftMeasurement m =
      gouy_shift_measurement(cfg.interferometer(), cfg.scan_lo(), cfg.scan_hi(), cfg.scan_points);
  const cplx o = m.on_result.component_overlap;
  r.summary = {{"shift_rad", m.shift},
               {"contrast", m.lenses_on.contrast},
               {"contrast_lenses_off", m.lenses_off.contrast},
               {"overlap_arg_rad", std::arg(o)},
               {"overlap_abs", std::abs(o)},
               {"on_axis_phase_rad", m.on_result.on_axis_phase},
               {"pi_over_2_rad", pi / 2.0},
               {"shift_minus_pi_over_2_rad", m.shift - pi / 2.0},
               {"fitted_tau_s", m.lenses_on.fitted_tau}};
  const auto path = dir / "shift.txt";
  r.text = render_summary(r);
  write_text(path, r.text);
  r.outputs.push_back(path);
  return r;
}

}  // namespace

std::string render_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j) out += ',';
    out += table.header[j];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::invalid_argument("CSV row has " + std::to_string(row.size()) +
                                  " cells, header has " + std::to_string(table.header.size()));
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_shortest(row[j]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  write_text(path, render_csv(table));
}

double ScenarioResult::value(std::string_view key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return v;
  throw std::out_of_range("no summary key '" + std::string(key) + "' in " + name);
}

ScenarioResult run_scenario(std::string_view name, const ExperimentConfig& config,
                            const std::filesystem::path& out_dir) {
  config.validate();
  std::filesystem::create_directories(out_dir);
  ScenarioResult r;
  if (name == "design-check") r = run_design_check(config, out_dir);
  else if (name == "beam") r = run_beam(config, out_dir);
  else if (name == "gouy-trace") r = run_gouy_trace(config, out_dir);
  else if (name == "fringes") r = run_fringes(config, out_dir);
  else if (name == "shift") r = run_shift(config, out_dir);
  else throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
  r.name = std::string(name);
  return r;
}

}  // namespace gouysim
