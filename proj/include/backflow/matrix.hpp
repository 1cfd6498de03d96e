#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace backflow {

using Complex = std::complex<double>;

// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  // Row-wise literal, for small hand-written operators.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  // max_ij |m_ij|
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);

// Matrix products, dispatched to the active kernel set.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
// a * b^dagger
ComplexMatrix matmul_adjoint_right(const ComplexMatrix& a, const ComplexMatrix& b);
// a^dagger * b
ComplexMatrix matmul_adjoint_left(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Hermitian operator. Construction checks
//   max |m_ij - conj(m_ji)| <= 1e-12 * max |m|.
class HermitianMatrix {
 public:
  static constexpr double kHermiticityTolerance = 1e-12;

  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix m);

  // (m + m^dagger)/2 without a check, for results that are Hermitian in
  // exact arithmetic (sandwich products, partial traces).
  static HermitianMatrix symmetrized(const ComplexMatrix& m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  operator const ComplexMatrix&() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

 private:
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double scale, const HermitianMatrix& a);

double hermiticity_error(const ComplexMatrix& m);

// Eigenvalues ascending; eigenvectors are the columns of a unitary matrix.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const { return eigenvalues.size(); }
};

}  // namespace backflow
