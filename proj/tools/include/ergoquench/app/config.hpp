#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ergoquench::app {

/// Bad user input (unknown key, out-of-range value, unknown experiment). Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value experiment configuration. Unset optionals take the defaults of
/// the chosen experiment (see experiments.hpp).
struct ExperimentConfig {
  std::string experiment;
  std::optional<int> n_qubits;
  double h = 0.1;
  double gamma = 0.05;
  double j = 1.0;
  std::vector<double> beta_list = {0.2, 0.5, 1.0, 2.0, 5.0};
  bool beta_list_set = false;
  std::optional<double> alpha;
  std::optional<double> alpha_minus;
  std::optional<double> alpha_z;
  std::optional<double> t_max;
  std::optional<double> dt;
  std::string output_dir = ".";
  bool emit_svg = false;
};

/// Parses `key = value` lines ('#' starts a comment; blank lines ignored) and
/// range-checks every value. Throws ConfigError with a descriptive message.
ExperimentConfig validate_config(std::string_view raw);

/// Re-checks ranges after command-line overrides.
void check_ranges(const ExperimentConfig& config);

ExperimentConfig load_config_file(const std::string& path);

}  // namespace ergoquench::app
