#pragma once

// Data-parallel inner loops of the dense complex linear algebra.
//
// Every kernel exists as a portable scalar reference and, where the build
// and the CPU allow it, as an AVX2+FMA variant. The variant used by the
// library is picked once at first use (see active_kernels()); tests call
// each variant directly and compare against the scalar reference.
//
// All matrices are dense, row-major and contiguous.

#include <complex>
#include <cstddef>
#include <string_view>

namespace backflow::kernels {

using Complex = std::complex<double>;

struct KernelSet {
  std::string_view name;

  // c (m x n) = a (m x k) * b (k x n)
  void (*gemm_nn)(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
                  std::size_t n);
  // c (m x n) = a (m x k) * b^dagger, where b is n x k
  void (*gemm_nc)(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
                  std::size_t n);
  // c (m x n) = a^dagger * b, where a is k x m and b is k x n
  void (*gemm_cn)(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
                  std::size_t n);
  // out[j] = sum_i weights[i] * |w[i][j]|^2, w is m x n
  void (*abs2_weighted_colsum)(const Complex* w, const double* weights, double* out, std::size_t m,
                               std::size_t n);
  // y += alpha * x
  void (*axpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
};

const KernelSet& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels();

// The variant used by the library. Defaults to the widest supported one;
// setting BACKFLOW_KERNELS=scalar in the environment forces the reference.
const KernelSet& active_kernels();

}  // namespace backflow::kernels
