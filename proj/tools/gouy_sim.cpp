#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "gouysim/config.hpp"
#include "gouysim/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ramsey interferometer simulator for the matter-wave Gouy phase"};
  std::string scenario;
  std::string config_path;
  std::string out_dir = ".";
  bool strict = false;
  const std::vector<std::string> names(std::begin(gouysim::scenario_names),
                                       std::end(gouysim::scenario_names));
  app.add_option("scenario", scenario, "Scenario to run")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "Config file of section.key = value lines");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--strict", strict, "Exit with status 2 when a design check fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  gouysim::ExperimentConfig config;
  try {
    config = config_path.empty() ? gouysim::parse_config("") : gouysim::load_config(config_path);
  } catch (const gouysim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  gouysim::ScenarioResult result;
  try {
    result = gouysim::run_scenario(scenario, config, out_dir);
  } catch (const gouysim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const gouysim::GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (!result.text.empty() && scenario == "design-check") std::cout << result.text;
  for (const auto& [key, value] : result.summary)
    std::cout << key << " = " << gouysim::format_summary(value) << "\n";
  for (const auto& path : result.outputs) std::cout << "wrote " << path.string() << "\n";
  return (strict && !result.all_checks_pass) ? 2 : 0;
}
