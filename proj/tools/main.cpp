#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "ergoquench/app/experiments.hpp"
#include "ergoquench/errors.hpp"

namespace app = ergoquench::app;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

int list_experiments() {
  for (const auto& e : app::experiment_registry())
    std::printf("%-14s %-8s %s\n", e.name.c_str(), e.figure.c_str(), e.description.c_str());
  return 0;
}

int run(const std::string& experiment, const std::string& config_path, const std::string& out_dir, bool svg) {
  try {
    auto config = config_path.empty() ? app::validate_config("") : app::load_config_file(config_path);
    config.experiment = experiment;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (svg) config.emit_svg = true;

    const auto report = app::run_experiment(config);
    for (const auto& line : report.summary) std::cout << line << '\n';
    for (const auto& f : report.files) std::cout << "wrote " << f.string() << '\n';
    return 0;
  } catch (const app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ergoquench::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Ergotropy dynamics of quenched spin chains"};
  cli.require_subcommand(1);

  std::string experiment, config_path, out_dir;
  bool svg = false;
  auto* run_cmd = cli.add_subcommand("run", "Run one experiment and write its CSV");
  run_cmd->add_option("--experiment", experiment, "Experiment name (see `list`)")->required();
  run_cmd->add_option("--config", config_path, "key=value config file");
  run_cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run_cmd->add_flag("--svg", svg, "Also write an SVG line plot");

  auto* list_cmd = cli.add_subcommand("list", "List experiments and the figures they reproduce");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list_cmd->parsed()) return list_experiments();
  return run(experiment, config_path, out_dir, svg);
}
