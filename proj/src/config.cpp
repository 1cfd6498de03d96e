#include "backflow/config.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "backflow/error.hpp"

namespace backflow {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_plain(std::string_view text, std::string_view original) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("not a real number: '" + std::string(original) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::string_view key) {
  text = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

double parse_finite(std::string_view text, std::string_view key) {
  try {
    const double value = parse_real(text);
    if (!std::isfinite(value)) throw ConfigError("value is not finite");
    return value;
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    values.push_back(parse_finite(item, key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace

Experiment parse_experiment(std::string_view name) {
  name = trim(name);
  if (name == "trajectory") return Experiment::Trajectory;
  if (name == "bound-slice") return Experiment::BoundSlice;
  if (name == "bound-surface") return Experiment::BoundSurface;
  if (name == "verify") return Experiment::Verify;
  throw ConfigError("unknown experiment '" + std::string(name) +
                    "' (expected trajectory, bound-slice, bound-surface or verify)");
}

std::string_view experiment_name(Experiment experiment) {
  switch (experiment) {
    case Experiment::Trajectory:
      return "trajectory";
    case Experiment::BoundSlice:
      return "bound-slice";
    case Experiment::BoundSurface:
      return "bound-surface";
    case Experiment::Verify:
      return "verify";
  }
  return "unknown";
}

double parse_real(std::string_view text) {
  const std::string_view original = text;
  text = trim(text);
  if (text.starts_with("exp(") && text.ends_with(")")) {
    return std::exp(parse_plain(text.substr(4, text.size() - 5), original));
  }
  if (text == "pi") return std::numbers::pi;
  if (text.starts_with("pi/")) return std::numbers::pi / parse_plain(text.substr(3), original);
  if (text.ends_with("*pi")) return parse_plain(text.substr(0, text.size() - 3), original) * std::numbers::pi;
  return parse_plain(text, original);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "model.kind",         "model.omega_s", "model.omega_e",      "model.g",
      "model.n_trunc",      "model.pauli_convention", "scenario.theta", "scenario.phi",
      "scenario.beta_omega", "scenario.T",   "grid",               "mu_list",
      "t_ref",              "experiment"};
  return keys;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "model.kind") {
    if (value == "jc") {
      cfg.model_kind = ModelKind::JaynesCummings;
    } else if (value == "two-qubit") {
      cfg.model_kind = ModelKind::TwoQubitExchange;
    } else {
      throw ConfigError("model.kind: expected jc or two-qubit, got '" + std::string(value) + "'");
    }
  } else if (key == "model.omega_s") {
    cfg.omega_s = parse_finite(value, key);
  } else if (key == "model.omega_e") {
    cfg.omega_e = parse_finite(value, key);
  } else if (key == "model.g") {
    cfg.g = parse_finite(value, key);
  } else if (key == "model.n_trunc") {
    cfg.n_trunc = parse_count(value, key);
  } else if (key == "model.pauli_convention") {
    if (value == "paper") {
      cfg.pauli_convention = PauliConvention::PaperUnnormalized;
    } else if (value == "halved") {
      cfg.pauli_convention = PauliConvention::StandardHalved;
    } else {
      throw ConfigError("model.pauli_convention: expected paper or halved, got '" +
                        std::string(value) + "'");
    }
  } else if (key == "scenario.theta") {
    cfg.theta = parse_finite(value, key);
  } else if (key == "scenario.phi") {
    cfg.phi = parse_finite(value, key);
  } else if (key == "scenario.beta_omega") {
    cfg.beta_omega = parse_finite(value, key);
  } else if (key == "scenario.T") {
    cfg.horizon = parse_finite(value, key);
  } else if (key == "grid") {
    cfg.grid = parse_count(value, key);
  } else if (key == "mu_list") {
    cfg.mu_list = parse_list(value, key);
    for (double mu : cfg.mu_list) {
      if (!(mu > 0.0 && mu < 1.0)) {
        throw ConfigError("mu_list: every entry must lie in (0, 1), got " + format_number(mu));
      }
    }
  } else if (key == "t_ref") {
    cfg.t_ref = parse_finite(value, key);
  } else if (key == "experiment") {
    cfg.experiment = parse_experiment(value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_override(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_override(cfg, line);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_number) + ": " + e.what());
    }
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    apply_config_text(cfg, buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ModelSpec ExperimentConfig::model() const {
  ModelSpec spec = ModelSpec::defaults(model_kind);
  if (omega_s) spec.omega_s = *omega_s;
  if (omega_e) spec.omega_e = *omega_e;
  spec.g = g;
  spec.n_trunc = n_trunc;
  spec.pauli_convention = pauli_convention;
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

ScenarioSpec ExperimentConfig::scenario() const {
  const bool jc = model_kind == ModelKind::JaynesCummings;
  if (jc && (theta || phi)) {
    throw ConfigError("scenario.theta and scenario.phi apply to the two-qubit model only");
  }
  if (!jc && beta_omega) throw ConfigError("scenario.beta_omega applies to the jc model only");
  if (grid < 2) throw ConfigError("grid: need at least 2 points");
  if (horizon && !(*horizon > 0.0)) throw ConfigError("scenario.T must be positive");
  if (beta_omega && !(*beta_omega > 0.0)) throw ConfigError("scenario.beta_omega must be positive");

  ScenarioOverrides overrides;
  overrides.model = model();
  overrides.theta = theta;
  overrides.phi = phi;
  overrides.beta_omega = beta_omega;
  overrides.horizon = horizon;
  overrides.grid_points = grid;
  try {
    return default_scenario(model_kind, overrides);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const DimensionError& e) {
    throw ConfigError(e.what());
  }
}

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error("format_number: buffer too small");
  return std::string(buffer, ptr);
}

}  // namespace backflow
