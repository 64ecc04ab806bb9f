#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gouysim/config.hpp"
#include "gouysim/format.hpp"

namespace gouysim {

/// Rectangular table written as CSV: header row, LF endings, shortest
/// round-trip decimal floats.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string render_csv(const CsvTable& table);
/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const std::filesystem::path& path, const CsvTable& table);

struct ScenarioResult {
  std::string name;
  std::vector<std::filesystem::path> outputs;
  std::vector<std::pair<std::string, double>> summary;
  /// Human-readable text (the rendered report for design-check).
  std::string text;
  bool all_checks_pass = true;

  double value(std::string_view key) const;
};

inline constexpr std::string_view scenario_names[] = {"design-check", "beam", "gouy-trace",
                                                      "fringes", "shift"};

/// Runs one named scenario, writing its files into out_dir.
ScenarioResult run_scenario(std::string_view name, const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);

}  // namespace gouysim
