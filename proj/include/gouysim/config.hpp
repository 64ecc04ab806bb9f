#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gouysim/lens_design.hpp"
#include "gouysim/ramsey.hpp"

namespace gouysim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment description. Frequencies here are angular (rad/s); the text
/// format carries ordinary frequencies in Hz and parse_config converts.
/// Defaults reproduce the proposal's parameter set.
struct ExperimentConfig {
  AtomParams atom;
  double slit_w0 = 10e-6;
  CavityLensParams cavity;

  double cavity_separation = 0.21;
  double apparatus_length = 0.3;
  double drift_pre = 0.02;
  double drift_post = 0.02;

  double ramsey_time = 6e-3;
  double omega_gi = two_pi * 54.256e9;
  double scan_center = two_pi * 54.256e9;
  double scan_span = two_pi * 500.0;
  int scan_points = 41;
  double pulse_phase = 0.0;
  bool suppress_i_lens = false;

  std::size_t grid_points = 8192;
  double grid_half_extent = 80e-6;
  int cavity_steps = default_cavity_steps;
  bool exact_mode = true;

  /// Throws ConfigError naming the first violated field and its bound.
  void validate() const;

  DesignGeometry design_geometry() const { return {cavity_separation, apparatus_length}; }
  /// Interferometer with both cavities set to `cavity`, lenses on.
  InterferometerSetup interferometer() const;
  double scan_lo() const { return scan_center - 0.5 * scan_span; }
  double scan_hi() const { return scan_center + 0.5 * scan_span; }
};

/// Parses flat `section.key = value` lines; `#` starts a comment. Unknown
/// keys, duplicates and malformed numbers are errors carrying the line
/// number. Missing keys keep their defaults.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a file.
ExperimentConfig load_config(const std::string& path);

}  // namespace gouysim
