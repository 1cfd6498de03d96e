#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "backflow/models.hpp"

namespace backflow {

enum class Experiment { Trajectory, BoundSlice, BoundSurface, Verify };

Experiment parse_experiment(std::string_view name);
std::string_view experiment_name(Experiment experiment);

// Flat experiment configuration. Unset optionals fall back to the defaults
// of the selected model kind.
struct ExperimentConfig {
  Experiment experiment = Experiment::Trajectory;
  ModelKind model_kind = ModelKind::JaynesCummings;
  std::optional<double> omega_s;
  std::optional<double> omega_e;
  double g = 1.0;
  std::size_t n_trunc = 30;
  PauliConvention pauli_convention = PauliConvention::PaperUnnormalized;
  std::optional<double> theta;       // two-qubit only
  std::optional<double> phi;         // two-qubit only
  std::optional<double> beta_omega;  // Jaynes-Cummings only
  std::optional<double> horizon;
  std::size_t grid = 200;
  std::vector<double> mu_list{std::exp(-1.5)};
  std::optional<double> t_ref;
  std::uint64_t seed = 1;

  ModelSpec model() const;
  ScenarioSpec scenario() const;
};

// model.kind model.omega_s model.omega_e model.g model.n_trunc
// model.pauli_convention scenario.theta scenario.phi scenario.beta_omega
// scenario.T grid mu_list t_ref experiment
const std::vector<std::string>& config_keys();

// Throws ConfigError for unknown keys and unparsable values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// "key=value" lines; '#' starts a comment; blank lines ignored.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

// "key=value" as given to --set.
void apply_override(ExperimentConfig& cfg, std::string_view assignment);

// Real literal, "exp(x)", "pi", "pi/x" or "x*pi".
double parse_real(std::string_view text);

// 17 significant digits, '.' separator, independent of the locale.
std::string format_number(double value);

}  // namespace backflow
