#pragma once

#include <functional>
#include <optional>

#include "backflow/matrix.hpp"

namespace backflow {

// Composite index convention: i = i_s * d_e + i_e (system is the slow index).
enum class Subsystem { System, Environment };

// Eigenvalues with |lambda| at or below this are treated as zero.
inline constexpr double kZeroThreshold = 1e-12;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Marginal of a (d_s*d_e) x (d_s*d_e) operator on the kept factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_s, std::size_t d_e,
                            Subsystem keep);

// Hermitian eigendecomposition. Throws ConvergenceError if the solver fails.
SpectralDecomposition eigh(const HermitianMatrix& m);

// Eigenvalues only, ascending.
std::vector<double> eigvalsh(const HermitianMatrix& m);

// U diag(values) U^dagger for the eigenbasis U of `spectrum`.
ComplexMatrix reconstruct(const SpectralDecomposition& spectrum, std::span<const Complex> values);
HermitianMatrix reconstruct(const SpectralDecomposition& spectrum, std::span<const double> values);

// U f(Lambda) U^dagger. Eigenvalues with |lambda| <= zero_threshold map to
// `null_value` when one is given, otherwise to f(lambda). Throws DomainError
// when f produces a non-finite value.
HermitianMatrix spectral_fn(const HermitianMatrix& m, const std::function<double(double)>& f,
                            double zero_threshold = kZeroThreshold,
                            std::optional<double> null_value = std::nullopt);

// Tr|m| = sum of |eigenvalues|.
double trace_norm(const HermitianMatrix& m);

// exp(-i h t) for a Hermitian generator, reusing one diagonalization.
class Propagator {
 public:
  explicit Propagator(const HermitianMatrix& h);

  std::size_t dim() const { return spectrum_.dim(); }
  const SpectralDecomposition& spectrum() const { return spectrum_; }

  ComplexMatrix unitary(double t) const;
  // U(t) state U(t)^dagger
  ComplexMatrix evolve(const ComplexMatrix& state, double t) const;

 private:
  SpectralDecomposition spectrum_;
};

// U(t) state U(t)^dagger with U(t) = exp(-i h t).
ComplexMatrix evolve_unitary(const HermitianMatrix& h, double t, const ComplexMatrix& state);

}  // namespace backflow
