#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "backflow/divergences.hpp"
#include "backflow/error.hpp"
#include "doctest.h"

using namespace backflow;

namespace {

using Bloch = std::array<double, 3>;

DensityMatrix diag2(double a, double b) {
  const double d[] = {a, b};
  return DensityMatrix(ComplexMatrix::diagonal(d));
}

// Tr(rho log sigma) for qubits from Bloch vectors:
// log sigma = 1/2 log((1-s^2)/4) I + 1/2 log((1+s)/(1-s)) s_hat . sigma
double qubit_cross_log(const Bloch& r, const Bloch& s) {
  const double len = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
  const double dot = r[0] * s[0] + r[1] * s[1] + r[2] * s[2];
  return 0.5 * std::log((1 - len * len) / 4) + 0.5 * std::log((1 + len) / (1 - len)) * dot / len;
}

double qubit_relative_entropy(const Bloch& r, const Bloch& s) {
  return qubit_cross_log(r, r) - qubit_cross_log(r, s);
}

Bloch random_bloch(CounterRng& rng, double max_len) {
  Bloch v{rng.normal(), rng.normal(), rng.normal()};
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  const double target = max_len * rng.uniform();
  for (double& x : v) x *= target / len;
  return v;
}

Bloch mix(double mu, const Bloch& a, const Bloch& b) {
  return {mu * a[0] + (1 - mu) * b[0], mu * a[1] + (1 - mu) * b[1], mu * a[2] + (1 - mu) * b[2]};
}

double golden_section_min(double (*f)(double), double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  while (b - a > 1e-10) {
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - ratio * (b - a);
    d = a + ratio * (b - a);
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("telescopic parameter domain") {
  CHECK_THROWS_AS(TelescopicParameter(0.0), DomainError);
  CHECK_THROWS_AS(TelescopicParameter(1.0), DomainError);
  CHECK_THROWS_AS(TelescopicParameter(-0.2), DomainError);
  CHECK(TelescopicParameter::optimal().value() == std::exp(-1.5));
  CHECK(TelescopicParameter::optimal_alt().value() == std::exp(-0.5));
}

TEST_CASE("trace distance") {
  const DensityMatrix rho = random_density(3, RngSeed{1});
  CHECK(trace_distance(rho, rho) == 0.0);
  CHECK(trace_distance(diag2(1, 0), diag2(0, 1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(trace_distance(qubit_from_bloch({0, 0, 1}), qubit_from_bloch({0, 0, 0})) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(trace_distance(rho, random_density(2, RngSeed{2})), DimensionError);
}

TEST_CASE("relative entropy") {
  const DensityMatrix rho = random_density(4, RngSeed{3});
  CHECK(relative_entropy(rho, rho) == 0.0);
  CHECK(relative_entropy(diag2(1, 0), diag2(0, 1)) == std::numeric_limits<double>::infinity());
  const double expected = 0.5 * std::log(2.0 / 3.0) + 0.5 * std::log(2.0);
  CHECK(relative_entropy(diag2(0.5, 0.5), diag2(0.75, 0.25)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.14384).epsilon(1e-4));
  // Pure rho inside the support of sigma stays finite.
  CHECK(std::isfinite(relative_entropy(diag2(1, 0), diag2(0.5, 0.5))));

  CounterRng rng(RngSeed{4});
  for (int trial = 0; trial < 200; ++trial) {
    const Bloch r = random_bloch(rng, 0.999);
    const Bloch s = random_bloch(rng, 0.999);
    CHECK(relative_entropy(qubit_from_bloch(r), qubit_from_bloch(s)) ==
          doctest::Approx(qubit_relative_entropy(r, s)).epsilon(1e-9));
  }
}

TEST_CASE("telescopic relative entropy") {
  const DensityMatrix rho = random_density(3, RngSeed{5});
  const TelescopicParameter opt = TelescopicParameter::optimal();
  CHECK(telescopic_re(rho, rho, opt) == 0.0);
  for (double mu : {0.05, 0.1, 0.5, 0.9, 0.99}) {
    CHECK(telescopic_re(diag2(1, 0), diag2(0, 1), TelescopicParameter(mu)) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }

  CounterRng rng(RngSeed{6});
  const double coefficient = pinsker_coefficient(opt);
  for (int trial = 0; trial < 200; ++trial) {
    const Bloch r = random_bloch(rng, 1.0);
    const Bloch s = random_bloch(rng, 1.0);
    const DensityMatrix a = qubit_from_bloch(r);
    const DensityMatrix b = qubit_from_bloch(s);
    const double tre = telescopic_re(a, b, opt);
    const double td = trace_distance(a, b);
    CHECK(coefficient * td * td <= tre + 1e-10);
    CHECK(tre <= td + 1e-10);

    // Against the Bloch-vector closed form (rho may be pure; the mixture is not).
    const Bloch m = mix(opt.value(), r, s);
    const double r_len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    const double entropy_term = r_len < 1 - 1e-9 ? qubit_cross_log(r, r) : 0.0;
    CHECK(tre == doctest::Approx((entropy_term - qubit_cross_log(r, m)) / opt.log_inverse()).epsilon(1e-8));
  }
}

TEST_CASE("symmetrized TRE and QJSD") {
  const DensityMatrix a = random_density(3, RngSeed{7});
  const DensityMatrix b = random_density(3, RngSeed{8});
  const TelescopicParameter mu(0.3);
  CHECK(symmetrized_tre(a, b, mu) == symmetrized_tre(b, a, mu));
  CHECK(symmetrized_tre(a, a, mu) == 0.0);
  CHECK(qjsd(a, a) == 0.0);
  CHECK(qjsd(diag2(1, 0), diag2(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sqrt_qjsd(a, b) == doctest::Approx(std::sqrt(qjsd(a, b))).epsilon(1e-15));

  CounterRng rng(RngSeed{9});
  const TelescopicParameter half(0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const DensityMatrix x = random_density(d, rng);
    const DensityMatrix y = random_density(d, rng);
    CHECK(std::abs(qjsd(x, y) - symmetrized_tre(x, y, half)) <= 1e-12);
  }
}

TEST_CASE("square-root QJSD triangle inequality on qubit triples") {
  CounterRng rng(RngSeed{10});
  double worst = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix a = qubit_from_bloch(random_bloch(rng, 1.0));
    const DensityMatrix b = qubit_from_bloch(random_bloch(rng, 1.0));
    const DensityMatrix c = qubit_from_bloch(random_bloch(rng, 1.0));
    worst = std::min(worst, sqrt_qjsd(a, b) + sqrt_qjsd(b, c) - sqrt_qjsd(a, c));
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("scalar TRE") {
  for (double mu : {0.1, 0.5, 0.8}) {
    const TelescopicParameter p(mu);
    CHECK(scalar_tre(1, 1, p) == 0.0);
    CHECK(scalar_tre(1, 0, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(scalar_tre(0, 0.7, p) == 0.0);
    const double d = 0.37;
    CHECK(scalar_tre(1, d, p) == doctest::Approx(std::log(1 / (mu + (1 - mu) * d)) / std::log(1 / mu)));
  }
  CHECK(scalar_tre(1, 0.5, TelescopicParameter(0.5)) == doctest::Approx(std::log(4.0 / 3.0) / std::log(2.0)));
  CHECK(scalar_tre(1, 0.5, TelescopicParameter(0.5)) == doctest::Approx(0.41504).epsilon(1e-4));
  CHECK_THROWS_AS(scalar_tre(-1, 1, TelescopicParameter(0.5)), DomainError);
}

TEST_CASE("prefactors") {
  const double pinsker_opt = pinsker_coefficient(TelescopicParameter::optimal());
  CHECK(pinsker_opt == doctest::Approx(2 * std::pow(1 - std::exp(-1.5), 2) / 1.5).epsilon(1e-15));
  CHECK(pinsker_opt == doctest::Approx(0.80470).epsilon(1e-4));
  CHECK(pinsker_coefficient(TelescopicParameter(0.5)) == doctest::Approx(0.72135).epsilon(1e-4));

  const double closed = std::pow(4 * std::exp(3.0) / 27, 0.25);
  CHECK(std::abs(kappa(TelescopicParameter::optimal()) - closed) <= 1e-12);
  CHECK(std::abs(kappa(TelescopicParameter::optimal()) - 1.31) <= 0.005);
  CHECK(std::abs(kappa_alt(TelescopicParameter::optimal_alt()) - std::sqrt(std::numbers::e)) <= 1e-12);

  const double argmin = golden_section_min(
      [](double mu) { return kappa(TelescopicParameter(mu)); }, 1e-6, 1 - 1e-6);
  CHECK(std::abs(argmin - std::exp(-1.5)) <= 1e-3);
  const double argmin_alt = golden_section_min(
      [](double mu) { return kappa_alt(TelescopicParameter(mu)); }, 1e-6, 1 - 1e-6);
  CHECK(std::abs(argmin_alt - std::exp(-0.5)) <= 1e-3);
}
