#include <cmath>
#include <numbers>

#include "backflow/error.hpp"
#include "backflow/linalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace backflow;

namespace {

const ComplexMatrix kSigmaX{{0.0, 1.0}, {1.0, 0.0}};
const ComplexMatrix kSigmaZ{{1.0, 0.0}, {0.0, -1.0}};

ComplexMatrix random_state(std::size_t dim, std::mt19937_64& gen) {
  const ComplexMatrix g = oracle::random_matrix(dim, dim, gen);
  ComplexMatrix rho = oracle::product(g, g.adjoint());
  rho *= 1.0 / rho.trace().real();
  return rho;
}

}  // namespace

TEST_CASE("kron small cases") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
  const double d[] = {1.0, 0.0};
  const double expected[] = {1.0, 0.0, 0.0, 0.0};
  CHECK(kron(ComplexMatrix::diagonal(d), ComplexMatrix::diagonal(d)) == ComplexMatrix::diagonal(expected));

  // sigma_x (x) sigma_x is an involution
  const ComplexMatrix xx = kron(kSigmaX, kSigmaX);
  CHECK(max_abs_diff(matmul(xx, xx), ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron matches the oracle and is associative") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_matrix(2, 3, gen);
    const auto b = oracle::random_matrix(3, 2, gen);
    const auto c = oracle::random_matrix(2, 2, gen);
    CHECK(max_abs_diff(kron(a, b), oracle::kron(a, b)) < 1e-15);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-13);
  }
}

TEST_CASE("partial trace") {
  SUBCASE("product state") {
    std::mt19937_64 gen(2);
    const auto rs = random_state(2, gen);
    const auto re = random_state(3, gen);
    const auto joint = kron(rs, re);
    CHECK(max_abs_diff(partial_trace(joint, 2, 3, Subsystem::System), rs) < 1e-15);
    CHECK(max_abs_diff(partial_trace(joint, 2, 3, Subsystem::Environment), re) < 1e-15);
  }
  SUBCASE("Bell state gives the maximally mixed marginal") {
    ComplexMatrix bell(4, 4);
    for (std::size_t i : {0u, 3u})
      for (std::size_t j : {0u, 3u}) bell(i, j) = 0.5;
    const double half[] = {0.5, 0.5};
    CHECK(max_abs_diff(partial_trace(bell, 2, 2, Subsystem::System), ComplexMatrix::diagonal(half)) == 0.0);
  }
  SUBCASE("random 2x3 state against index summation") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto rho = random_state(6, gen);
      for (bool keep_system : {true, false}) {
        const auto ours = partial_trace(rho, 2, 3, keep_system ? Subsystem::System : Subsystem::Environment);
        CHECK(max_abs_diff(ours, oracle::marginal(rho, 2, 3, keep_system)) < 1e-15);
        CHECK(std::abs(ours.trace() - Complex(1.0)) < 1e-13);
        CHECK(oracle::eigenvalues_by_bisection(ours).front() > -1e-12);
      }
    }
  }
  SUBCASE("Tr_E(A (x) B) = Tr(B) A") {
    std::mt19937_64 gen(4);
    const auto a = oracle::random_matrix(3, 3, gen);
    const auto b = oracle::random_matrix(2, 2, gen);
    auto expected = a;
    expected *= b.trace();
    CHECK(max_abs_diff(partial_trace(kron(a, b), 3, 2, Subsystem::System), expected) < 1e-12);
  }
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(5), 2, 3, Subsystem::System), DimensionError);
}

TEST_CASE("eigh") {
  const double d[] = {3.0, 1.0, 2.0};
  const auto diag = eigh(HermitianMatrix(ComplexMatrix::diagonal(d)));
  CHECK(diag.eigenvalues == std::vector<double>{1.0, 2.0, 3.0});

  const auto x = eigvalsh(HermitianMatrix(kSigmaX));
  CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = oracle::random_hermitian(8, gen);
    const auto spectrum = eigh(HermitianMatrix(h));
    const auto reference = oracle::eigenvalues_by_bisection(h);
    double scale = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
      CHECK(spectrum.eigenvalues[k] == doctest::Approx(reference[k]).epsilon(1e-10).scale(1.0));
      scale = std::max(scale, std::abs(spectrum.eigenvalues[k]));
    }
    CHECK(std::is_sorted(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end()));
    const auto& u = spectrum.eigenvectors;
    CHECK(max_abs_diff(oracle::product(u.adjoint(), u), ComplexMatrix::identity(8)) <= 1e-10);
    const auto rebuilt = reconstruct(spectrum, std::span<const double>(spectrum.eigenvalues));
    CHECK(max_abs_diff(rebuilt, h) <= 1e-10 * (1.0 + scale));
  }
}

TEST_CASE("Hermitian contract") {
  ComplexMatrix m{{1.0, Complex(0.0, 1.0)}, {Complex(0.0, 1.0), 1.0}};
  CHECK_THROWS_AS(HermitianMatrix{m}, DomainError);
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, 3)), DimensionError);
  ComplexMatrix nearly = kSigmaX;
  nearly(0, 1) += 1e-14;
  CHECK_NOTHROW(HermitianMatrix{nearly});
}

TEST_CASE("spectral functions") {
  const auto log_fn = [](double x) { return std::log(x); };
  CHECK(spectral_fn(HermitianMatrix(ComplexMatrix::identity(3)), log_fn).matrix().max_abs() < 1e-15);

  const double d[] = {std::numbers::e, std::exp(2.0)};
  const double expected[] = {1.0, 2.0};
  CHECK(max_abs_diff(spectral_fn(HermitianMatrix(ComplexMatrix::diagonal(d)), log_fn),
                     ComplexMatrix::diagonal(expected)) < 1e-14);

  // Out-of-domain eigenvalue.
  CHECK_THROWS_AS(spectral_fn(HermitianMatrix(kSigmaZ), log_fn), DomainError);
  // Null eigenvalues mapped by the caller's rule.
  const double p[] = {1.0, 0.0};
  CHECK_NOTHROW(spectral_fn(HermitianMatrix(ComplexMatrix::diagonal(p)), log_fn, 1e-12, 0.0));

  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = oracle::random_hermitian(4, gen);
    const auto ours = spectral_fn(HermitianMatrix(h), [](double x) { return std::exp(x); });
    CHECK(max_abs_diff(ours, oracle::taylor_exp(h)) <= 1e-9);
  }
}

TEST_CASE("trace norm") {
  CHECK(trace_norm(HermitianMatrix(ComplexMatrix(3, 3))) == 0.0);
  CHECK(trace_norm(HermitianMatrix(kSigmaZ)) == doctest::Approx(2.0).epsilon(1e-15));
  const double a[] = {1.0, 0.0};
  const double b[] = {0.5, 0.5};
  CHECK(trace_norm(HermitianMatrix(ComplexMatrix::diagonal(a) - ComplexMatrix::diagonal(b))) ==
        doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = oracle::random_hermitian(4, gen);
    const auto y = oracle::random_hermitian(4, gen);
    const double nx = trace_norm(HermitianMatrix(x));
    const double ny = trace_norm(HermitianMatrix(y));
    CHECK(trace_norm(HermitianMatrix(x + y)) <= nx + ny + 1e-10);
    CHECK(trace_norm(HermitianMatrix(-2.5 * HermitianMatrix(x))) == doctest::Approx(2.5 * nx).epsilon(1e-10));
  }
}

TEST_CASE("unitary evolution") {
  std::mt19937_64 gen(8);
  const auto h = oracle::random_hermitian(4, gen);
  const auto rho = random_state(4, gen);
  CHECK(evolve_unitary(HermitianMatrix(h), 0.0, rho) == rho);

  // h = sigma_z, t = pi: U = -I, so |+x> returns to itself.
  const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
  CHECK(max_abs_diff(evolve_unitary(HermitianMatrix(kSigmaZ), std::numbers::pi, plus), plus) < 1e-15);
  // and at t = pi/4 it is rotated to +y
  const ComplexMatrix plus_y{{0.5, Complex(0.0, -0.5)}, {Complex(0.0, 0.5), 0.5}};
  CHECK(max_abs_diff(evolve_unitary(HermitianMatrix(kSigmaZ), std::numbers::pi / 4, plus), plus_y) < 1e-15);

  const Propagator propagator{HermitianMatrix(h)};
  for (double t : {0.3, 1.7, 12.0}) {
    const auto u = propagator.unitary(t);
    CHECK(max_abs_diff(oracle::product(u.adjoint(), u), ComplexMatrix::identity(4)) <= 1e-10);
    auto generator = h;
    generator *= Complex(0.0, -t);
    CHECK(max_abs_diff(u, oracle::taylor_exp(generator)) <= 1e-9);

    const auto out = propagator.evolve(rho, t);
    CHECK(std::abs(out.trace() - rho.trace()) < 1e-12);
    CHECK(hermiticity_error(out) < 1e-12);
    const auto before = oracle::eigenvalues_by_bisection(rho);
    const auto after = oracle::eigenvalues_by_bisection(out);
    for (std::size_t k = 0; k < 4; ++k) CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-9).scale(1.0));
  }
  CHECK_THROWS_AS(propagator.evolve(ComplexMatrix::identity(3), 1.0), DimensionError);
}
