#include "backflow/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "backflow/error.hpp"

namespace backflow {
namespace {

struct QubitOperators {
  ComplexMatrix sz;
  ComplexMatrix raise;
  ComplexMatrix lower;
  ComplexMatrix excitation;  // (sz + I)/2 = |up><up|
};

QubitOperators qubit_operators(PauliConvention convention) {
  const double scale = convention == PauliConvention::PaperUnnormalized ? 2.0 : 1.0;
  return {
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
      ComplexMatrix{{0.0, scale}, {0.0, 0.0}},
      ComplexMatrix{{0.0, 0.0}, {scale, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}},
  };
}

ComplexMatrix annihilation(std::size_t n_trunc) {
  ComplexMatrix b(n_trunc, n_trunc);
  for (std::size_t n = 0; n + 1 < n_trunc; ++n) b(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  return b;
}

ComplexMatrix number_operator(std::size_t n_trunc) {
  ComplexMatrix m(n_trunc, n_trunc);
  for (std::size_t n = 0; n < n_trunc; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

}  // namespace

ModelSpec ModelSpec::defaults(ModelKind kind) {
  ModelSpec spec;
  spec.kind = kind;
  if (kind == ModelKind::TwoQubitExchange) {
    spec.omega_s = 0.0;
    spec.omega_e = 0.0;
  }
  return spec;
}

void ModelSpec::validate() const {
  if (!(g > 0.0)) throw DomainError("ModelSpec: coupling g must be positive");
  if (kind == ModelKind::JaynesCummings && n_trunc < 2) {
    throw DomainError("ModelSpec: n_trunc must be at least 2");
  }
  if (!std::isfinite(omega_s) || !std::isfinite(omega_e)) {
    throw DomainError("ModelSpec: frequencies must be finite");
  }
}

void ScenarioSpec::validate() const {
  model.validate();
  if (rho_s0.dim() != model.system_dim() || sigma_s0.dim() != model.system_dim()) {
    throw DimensionError("ScenarioSpec: system states must be qubits");
  }
  if (env0.dim() != model.environment_dim()) {
    throw DimensionError("ScenarioSpec: environment state has dimension " +
                         std::to_string(env0.dim()) + ", model expects " +
                         std::to_string(model.environment_dim()));
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("ScenarioSpec: horizon must be positive");
  }
  if (grid_points < 2) throw DomainError("ScenarioSpec: need at least 2 grid points");
}

HermitianMatrix build_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  const QubitOperators q = qubit_operators(spec.pauli_convention);
  if (spec.kind == ModelKind::JaynesCummings) {
    const std::size_t n = spec.n_trunc;
    const ComplexMatrix b = annihilation(n);
    const ComplexMatrix bdag = b.adjoint();
    ComplexMatrix h = spec.omega_s * kron(q.sz, ComplexMatrix::identity(n));
    h += spec.g * (kron(q.raise, b) + kron(q.lower, bdag));
    h += spec.omega_e * kron(ComplexMatrix::identity(2), number_operator(n));
    return HermitianMatrix(std::move(h));
  }
  const ComplexMatrix id = ComplexMatrix::identity(2);
  ComplexMatrix h = spec.omega_s * kron(q.sz, id) + spec.omega_e * kron(id, q.sz);
  h += spec.g * (kron(q.raise, q.lower) + kron(q.lower, q.raise));
  return HermitianMatrix(std::move(h));
}

HermitianMatrix excitation_operator(const ModelSpec& spec) {
  spec.validate();
  const QubitOperators q = qubit_operators(spec.pauli_convention);
  if (spec.kind == ModelKind::JaynesCummings) {
    const std::size_t n = spec.n_trunc;
    return HermitianMatrix(kron(q.excitation, ComplexMatrix::identity(n)) +
                           kron(ComplexMatrix::identity(2), number_operator(n)));
  }
  const ComplexMatrix id = ComplexMatrix::identity(2);
  return HermitianMatrix(kron(q.excitation, id) + kron(id, q.excitation));
}

ScenarioSpec default_scenario(ModelKind kind, const ScenarioOverrides& overrides) {
  const ModelSpec model = overrides.model.value_or(ModelSpec::defaults(kind));
  if (model.kind != kind) throw DomainError("default_scenario: model kind does not match");
  model.validate();
  const std::size_t grid = overrides.grid_points.value_or(200);

  if (kind == ModelKind::JaynesCummings) {
    const double beta_omega = overrides.beta_omega.value_or(1.0);
    const Complex up[] = {1.0, 0.0};
    const Complex plus[] = {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
    ScenarioSpec spec{model,
                      pure_state(up),
                      pure_state(plus),
                      thermal_oscillator(beta_omega, model.n_trunc),
                      overrides.horizon.value_or(8.9 / model.g),
                      grid};
    spec.validate();
    return spec;
  }

  const double theta = overrides.theta.value_or(std::numbers::pi / 2.0);
  const double phi = overrides.phi.value_or(std::numbers::pi / 4.0);
  ScenarioSpec spec{model,
                    qubit_from_bloch({0.0, std::sin(theta), std::cos(theta)}),
                    qubit_from_bloch({0.0, -std::sin(theta), -std::cos(theta)}),
                    qubit_from_bloch({std::sin(phi), 0.0, std::cos(phi)}),
                    overrides.horizon.value_or(std::numbers::pi / model.g),
                    grid};
  spec.validate();
  return spec;
}

}  // namespace backflow
