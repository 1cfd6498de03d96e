#include "backflow/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "backflow/error.hpp"
#include "backflow/kernels.hpp"

namespace backflow {
namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("ComplexMatrix: " + std::to_string(data_.size()) + " entries for a " +
                         std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] += other.data_[q];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t q = 0; q < data_.size(); ++q) data_[q] -= other.data_[q];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex scale) { return a *= scale; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  kernels::active_kernels().gemm_nn(a.data().data(), b.data().data(), c.data().data(), a.rows(),
                                    a.cols(), b.cols());
  return c;
}

ComplexMatrix matmul_adjoint_right(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("matmul_adjoint_right: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.rows());
  kernels::active_kernels().gemm_nc(a.data().data(), b.data().data(), c.data().data(), a.rows(),
                                    a.cols(), b.rows());
  return c;
}

ComplexMatrix matmul_adjoint_left(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("matmul_adjoint_left: inner dimensions differ");
  ComplexMatrix c(a.cols(), b.cols());
  kernels::active_kernels().gemm_cn(a.data().data(), b.data().data(), c.data().data(), a.cols(),
                                    a.rows(), b.cols());
  return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t q = 0; q < a.data().size(); ++q)
    m = std::max(m, std::abs(a.data()[q] - b.data()[q]));
  return m;
}

double hermiticity_error(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermiticity_error: matrix is not square");
  double err = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
  return err;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw DimensionError("HermitianMatrix: matrix is not square");
  if (m_.rows() == 0) throw DimensionError("HermitianMatrix: empty matrix");
  const double scale = m_.max_abs();
  if (hermiticity_error(m_) > kHermiticityTolerance * scale) {
    throw DomainError("HermitianMatrix: matrix is not Hermitian");
  }
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("HermitianMatrix::symmetrized: matrix is not square");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix(std::move(out), Unchecked{});
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(a.matrix() - b.matrix());
}

HermitianMatrix operator*(double scale, const HermitianMatrix& a) {
  return HermitianMatrix::symmetrized(Complex(scale) * a.matrix());
}

}  // namespace backflow
