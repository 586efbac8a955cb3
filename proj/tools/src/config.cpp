#include "ergoquench/app/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ergoquench::app {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(std::string(key) + ": expected true/false, got '" + std::string(text) + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.push_back(parse_double(key, item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void unit_interval(const char* name, const std::optional<double>& v) {
  if (v && !(*v >= 0.0 && *v <= 1.0)) throw ConfigError(std::string(name) + " out of [0,1]");
}

}  // namespace

void check_ranges(const ExperimentConfig& c) {
  if (c.n_qubits && (*c.n_qubits < 1 || *c.n_qubits > 6)) throw ConfigError("n_qubits out of [1,6]");
  if (c.h < 0.0) throw ConfigError("h must be >= 0");
  if (c.gamma < 0.0) throw ConfigError("gamma must be >= 0");
  if (c.j != 1.0) throw ConfigError("j must be 1 (analytic oracles assume J = 1)");
  if (c.beta_list.empty()) throw ConfigError("beta_list must not be empty");
  for (double b : c.beta_list)
    if (b < 0.0) throw ConfigError("beta_list entries must be >= 0");
  unit_interval("alpha", c.alpha);
  unit_interval("alpha_minus", c.alpha_minus);
  unit_interval("alpha_z", c.alpha_z);
  if (c.dt && !(*c.dt > 0.0 && *c.dt <= 1.0)) throw ConfigError("dt out of (0,1]");
  if (c.t_max && !(*c.t_max > 0.0)) throw ConfigError("t_max must be > 0");
  if (c.t_max) {
    const double ratio = *c.t_max / c.dt.value_or(0.5);
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
      throw ConfigError("t_max must be an integer multiple of dt");
  }
}

ExperimentConfig validate_config(std::string_view raw) {
  ExperimentConfig c;
  std::size_t line_no = 0;
  while (!raw.empty()) {
    const auto nl = raw.find('\n');
    std::string_view line = raw.substr(0, nl);
    raw.remove_prefix(nl == std::string_view::npos ? raw.size() : nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (key == "experiment") {
      c.experiment = std::string(value);
    } else if (key == "n_qubits") {
      c.n_qubits = parse_int(key, value);
    } else if (key == "h") {
      c.h = parse_double(key, value);
    } else if (key == "gamma") {
      c.gamma = parse_double(key, value);
    } else if (key == "j") {
      c.j = parse_double(key, value);
    } else if (key == "beta_list") {
      c.beta_list = parse_list(key, value);
      c.beta_list_set = true;
    } else if (key == "alpha") {
      c.alpha = parse_double(key, value);
    } else if (key == "alpha_minus") {
      c.alpha_minus = parse_double(key, value);
    } else if (key == "alpha_z") {
      c.alpha_z = parse_double(key, value);
    } else if (key == "t_max") {
      c.t_max = parse_double(key, value);
    } else if (key == "dt") {
      c.dt = parse_double(key, value);
    } else if (key == "output_dir") {
      c.output_dir = std::string(value);
    } else if (key == "emit_svg") {
      c.emit_svg = parse_bool(key, value);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  check_ranges(c);
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return validate_config(buf.str());
}

}  // namespace ergoquench::app
