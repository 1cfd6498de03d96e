#pragma once

#include <optional>

#include "backflow/states.hpp"

namespace backflow {

enum class ModelKind { JaynesCummings, TwoQubitExchange };

// PaperUnnormalized: sigma_pm = sigma_x +- i sigma_y.
// StandardHalved:    sigma_pm = (sigma_x +- i sigma_y) / 2.
enum class PauliConvention { PaperUnnormalized, StandardHalved };

// Frequencies in units of the coupling g; times in units of 1/g.
struct ModelSpec {
  ModelKind kind = ModelKind::JaynesCummings;
  double omega_s = 1.0;
  double omega_e = 1.0;
  double g = 1.0;
  std::size_t n_trunc = 30;  // Fock truncation, Jaynes-Cummings only
  PauliConvention pauli_convention = PauliConvention::PaperUnnormalized;

  // Resonant JC (omega = 1), or the two-qubit model without local terms.
  static ModelSpec defaults(ModelKind kind);

  std::size_t environment_dim() const { return kind == ModelKind::JaynesCummings ? n_trunc : 2; }
  std::size_t system_dim() const { return 2; }
  // Throws DomainError.
  void validate() const;
};

// Two system states that share one environmental initial state.
struct ScenarioSpec {
  ModelSpec model;
  DensityMatrix rho_s0;
  DensityMatrix sigma_s0;
  DensityMatrix env0;
  double horizon = 1.0;
  std::size_t grid_points = 200;

  void validate() const;
};

struct ScenarioOverrides {
  std::optional<ModelSpec> model;
  // Two-qubit: system pair at Bloch +-(0, sin theta, cos theta).
  std::optional<double> theta;
  // Two-qubit: environment at Bloch (sin phi, 0, cos phi).
  std::optional<double> phi;
  // JC: thermal environment parameter.
  std::optional<double> beta_omega;
  std::optional<double> horizon;
  std::optional<std::size_t> grid_points;
};

// H = w_s sz(x)I + g (s+ (x) b + s- (x) b^dag) + w_e I(x)b^dag b  (JC), or
// H = w_s sz(x)I + w_e I(x)sz + g (s+ (x) s- + s- (x) s+)           (two qubits).
// Qubit basis: index 0 = up (sz = +1). Truncated <n|b|n+1> = sqrt(n+1).
HermitianMatrix build_hamiltonian(const ModelSpec& spec);

// Total excitation number: (sz + I)/2 (x) I + I (x) b^dag b, or the sum of
// both qubits' (sz + I)/2.
HermitianMatrix excitation_operator(const ModelSpec& spec);

// Jaynes-Cummings: rho_S = |up><up|, sigma_S = |+><+|, thermal environment
// (beta_omega = 1), T = 8.9/g.
// Two qubits: rho_S, sigma_S at Bloch +-(0, sin theta, cos theta) with
// theta = pi/2, environment at (sin phi, 0, cos phi) with phi = pi/4, T = pi/g.
ScenarioSpec default_scenario(ModelKind kind, const ScenarioOverrides& overrides = {});

}  // namespace backflow
