#include "backflow/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "backflow/error.hpp"
#include "backflow/kernels.hpp"

namespace backflow {
namespace {

using RowMajorMatrixXcd = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXcd to_eigen(const HermitianMatrix& m) {
  const auto& raw = m.matrix();
  return Eigen::Map<const RowMajorMatrixXcd>(raw.data().data(), static_cast<Eigen::Index>(raw.rows()),
                                             static_cast<Eigen::Index>(raw.cols()));
}

// U * diag(values), U square.
ComplexMatrix scale_columns(const ComplexMatrix& u, std::span<const Complex> values) {
  ComplexMatrix out = u;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= values[j];
  return out;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  ComplexMatrix out(rows, cols);
  const auto& k = kernels::active_kernels();
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ib = 0; ib < b.rows(); ++ib) {
      Complex* dest = out.data().data() + (ia * b.rows() + ib) * cols;
      const Complex* brow = b.data().data() + ib * b.cols();
      for (std::size_t ja = 0; ja < a.cols(); ++ja) {
        k.axpy(a(ia, ja), brow, dest + ja * b.cols(), b.cols());
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_s, std::size_t d_e,
                            Subsystem keep) {
  const std::size_t dim = d_s * d_e;
  if (d_s == 0 || d_e == 0 || m.rows() != dim || m.cols() != dim) {
    throw DimensionError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(dim) + "x" +
                         std::to_string(dim));
  }
  const auto& k = kernels::active_kernels();
  if (keep == Subsystem::System) {
    ComplexMatrix out(d_s, d_s);
    for (std::size_t i = 0; i < d_s; ++i)
      for (std::size_t j = 0; j < d_s; ++j) {
        Complex acc{};
        for (std::size_t e = 0; e < d_e; ++e) acc += m(i * d_e + e, j * d_e + e);
        out(i, j) = acc;
      }
    return out;
  }
  // Environment: sum of the d_s diagonal blocks, each d_e x d_e.
  ComplexMatrix out(d_e, d_e);
  for (std::size_t s = 0; s < d_s; ++s)
    for (std::size_t e = 0; e < d_e; ++e) {
      const Complex* src = m.data().data() + (s * d_e + e) * dim + s * d_e;
      k.axpy(Complex(1.0), src, out.data().data() + e * d_e, d_e);
    }
  return out;
}

SpectralDecomposition eigh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigh: Hermitian eigensolver did not converge (dim " +
                           std::to_string(m.dim()) + ")");
  }
  SpectralDecomposition out;
  const auto& values = solver.eigenvalues();
  out.eigenvalues.assign(values.data(), values.data() + values.size());
  const RowMajorMatrixXcd vectors = solver.eigenvectors();
  out.eigenvectors = ComplexMatrix(m.dim(), m.dim(),
                                   std::vector<Complex>(vectors.data(), vectors.data() + vectors.size()));
  return out;
}

std::vector<double> eigvalsh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigvalsh: Hermitian eigensolver did not converge (dim " +
                           std::to_string(m.dim()) + ")");
  }
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

ComplexMatrix reconstruct(const SpectralDecomposition& spectrum, std::span<const Complex> values) {
  if (values.size() != spectrum.dim()) throw DimensionError("reconstruct: value count mismatch");
  const ComplexMatrix& u = spectrum.eigenvectors;
  return matmul_adjoint_right(scale_columns(u, values), u);
}

HermitianMatrix reconstruct(const SpectralDecomposition& spectrum, std::span<const double> values) {
  std::vector<Complex> as_complex(values.begin(), values.end());
  return HermitianMatrix::symmetrized(reconstruct(spectrum, std::span<const Complex>(as_complex)));
}

HermitianMatrix spectral_fn(const HermitianMatrix& m, const std::function<double(double)>& f,
                            double zero_threshold, std::optional<double> null_value) {
  const SpectralDecomposition spectrum = eigh(m);
  std::vector<double> mapped(spectrum.dim());
  for (std::size_t i = 0; i < spectrum.dim(); ++i) {
    const double lambda = spectrum.eigenvalues[i];
    if (null_value && std::abs(lambda) <= zero_threshold) {
      mapped[i] = *null_value;
      continue;
    }
    mapped[i] = f(lambda);
    if (!std::isfinite(mapped[i])) {
      throw DomainError("spectral_fn: function is not finite at eigenvalue " + std::to_string(lambda));
    }
  }
  return reconstruct(spectrum, std::span<const double>(mapped));
}

double trace_norm(const HermitianMatrix& m) {
  double sum = 0.0;
  for (double lambda : eigvalsh(m)) sum += std::abs(lambda);
  return sum;
}

Propagator::Propagator(const HermitianMatrix& h) : spectrum_(eigh(h)) {}

ComplexMatrix Propagator::unitary(double t) const {
  if (t == 0.0) return ComplexMatrix::identity(dim());
  std::vector<Complex> phases(spectrum_.dim());
  for (std::size_t i = 0; i < phases.size(); ++i)
    phases[i] = std::polar(1.0, -spectrum_.eigenvalues[i] * t);
  return reconstruct(spectrum_, std::span<const Complex>(phases));
}

ComplexMatrix Propagator::evolve(const ComplexMatrix& state, double t) const {
  if (state.rows() != dim() || state.cols() != dim()) {
    throw DimensionError("Propagator::evolve: state dimension does not match the generator");
  }
  const ComplexMatrix u = unitary(t);
  return matmul_adjoint_right(matmul(u, state), u);
}

ComplexMatrix evolve_unitary(const HermitianMatrix& h, double t, const ComplexMatrix& state) {
  return Propagator(h).evolve(state, t);
}

}  // namespace backflow
