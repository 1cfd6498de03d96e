#include <cmath>
#include <numbers>

#include "backflow/divergences.hpp"
#include "backflow/error.hpp"
#include "backflow/models.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace backflow;

namespace {

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return oracle::product(a, b) - oracle::product(b, a);
}

}  // namespace

TEST_CASE("two-qubit exchange Hamiltonian") {
  for (auto [convention, weight] : {std::pair{PauliConvention::PaperUnnormalized, 4.0},
                                    std::pair{PauliConvention::StandardHalved, 1.0}}) {
    ModelSpec spec = ModelSpec::defaults(ModelKind::TwoQubitExchange);
    spec.g = 0.7;
    spec.pauli_convention = convention;
    const ComplexMatrix h = build_hamiltonian(spec);
    ComplexMatrix expected(4, 4);
    expected(1, 2) = expected(2, 1) = weight * spec.g;  // |up,down> <-> |down,up>
    CHECK(oracle::max_abs_diff(h, expected) == 0.0);
  }
}

TEST_CASE("decoupled Jaynes-Cummings Hamiltonian is diagonal") {
  ModelSpec spec;
  spec.g = 1.0;
  spec.omega_s = 0.8;
  spec.omega_e = 1.3;
  spec.n_trunc = 6;
  ComplexMatrix h = build_hamiltonian(spec);
  // remove the coupling by hand: g -> 0 is not a valid spec
  const ComplexMatrix coupling = build_hamiltonian([&] {
    ModelSpec c = spec;
    c.omega_s = c.omega_e = 0.0;
    return c;
  }());
  h -= coupling;
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t n = 0; n < 6; ++n) {
      const std::size_t i = s * 6 + n;
      const double sz = s == 0 ? 1.0 : -1.0;
      CHECK(std::abs(h(i, i) - Complex(spec.omega_s * sz + spec.omega_e * n)) < 1e-15);
    }
  CHECK(h.max_abs() == doctest::Approx(0.8 + 1.3 * 5));
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j)
      if (i != j) CHECK(h(i, j) == Complex(0.0));
}

TEST_CASE("Jaynes-Cummings ladder matrix elements") {
  ModelSpec spec;
  spec.omega_s = spec.omega_e = 0.0;
  spec.n_trunc = 5;
  const ComplexMatrix h = build_hamiltonian(spec);
  // sigma_+ (x) b couples |down, n+1> to |up, n| with 2 g sqrt(n+1)
  for (std::size_t n = 0; n + 1 < 5; ++n) {
    CHECK(std::abs(h(n, 5 + n + 1) - Complex(2.0 * std::sqrt(n + 1.0))) < 1e-15);
  }
  CHECK(hermiticity_error(h) == 0.0);
}

TEST_CASE("excitation number conservation") {
  const ModelSpec jc = ModelSpec::defaults(ModelKind::JaynesCummings);
  const ComplexMatrix c = commutator(build_hamiltonian(jc), excitation_operator(jc));
  const std::size_t d_e = jc.environment_dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (i % d_e != d_e - 1 && j % d_e != d_e - 1) worst = std::max(worst, std::abs(c(i, j)));
  CHECK(worst <= 1e-12);

  const ModelSpec two = ModelSpec::defaults(ModelKind::TwoQubitExchange);
  CHECK(commutator(build_hamiltonian(two), excitation_operator(two)).max_abs() == 0.0);
}

TEST_CASE("resonant local terms commute with the exchange term") {
  ModelSpec interaction = ModelSpec::defaults(ModelKind::TwoQubitExchange);
  ModelSpec full = interaction;
  full.omega_s = full.omega_e = 0.9;
  const ComplexMatrix h_int = build_hamiltonian(interaction);
  const ComplexMatrix local = build_hamiltonian(full) - h_int;
  CHECK(commutator(local, h_int).max_abs() == 0.0);
}

TEST_CASE("model validation") {
  ModelSpec bad;
  bad.g = 0.0;
  CHECK_THROWS_AS(build_hamiltonian(bad), DomainError);
  ModelSpec tiny;
  tiny.n_trunc = 1;
  CHECK_THROWS_AS(build_hamiltonian(tiny), DomainError);
}

TEST_CASE("default scenarios") {
  const ScenarioSpec jc = default_scenario(ModelKind::JaynesCummings);
  CHECK(jc.horizon == doctest::Approx(8.9));
  CHECK(jc.env0.dim() == 30);
  CHECK(trace_distance(jc.rho_s0, jc.sigma_s0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(jc.env0(0, 0).real() == doctest::Approx((1 - std::exp(-1.0)) / (1 - std::exp(-30.0))));

  const ScenarioSpec two = default_scenario(ModelKind::TwoQubitExchange);
  CHECK(two.horizon == doctest::Approx(std::numbers::pi));
  CHECK(trace_distance(two.rho_s0, two.sigma_s0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two.rho_s0.purity() == doctest::Approx(1.0));
  CHECK(two.env0.purity() == doctest::Approx(1.0));

  ScenarioOverrides overrides;
  overrides.theta = 0.3;
  overrides.horizon = 2.0;
  overrides.grid_points = 17;
  const ScenarioSpec custom = default_scenario(ModelKind::TwoQubitExchange, overrides);
  CHECK(custom.grid_points == 17);
  CHECK(custom.horizon == 2.0);
  // Bloch z component of rho_S is cos(theta)
  CHECK((custom.rho_s0(0, 0) - custom.rho_s0(1, 1)).real() == doctest::Approx(std::cos(0.3)));

  ModelSpec wrong = ModelSpec::defaults(ModelKind::JaynesCummings);
  ScenarioOverrides mismatch;
  mismatch.model = wrong;
  CHECK_THROWS_AS(default_scenario(ModelKind::TwoQubitExchange, mismatch), DomainError);
}
