#include "backflow/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <string_view>

namespace backflow::kernels {
namespace {

void gemm_nn(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
             std::size_t n) {
  std::fill(c, c + m * n, Complex{});
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a[i * k + p];
      const Complex* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void gemm_nc(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
             std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const Complex* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex* brow = b + j * k;
      Complex acc{};
      for (std::size_t p = 0; p < k; ++p) acc += arow[p] * std::conj(brow[p]);
      c[i * n + j] = acc;
    }
  }
}

void gemm_cn(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
             std::size_t n) {
  std::fill(c, c + m * n, Complex{});
  for (std::size_t p = 0; p < k; ++p) {
    const Complex* arow = a + p * m;
    const Complex* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const Complex api = std::conj(arow[i]);
      Complex* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += api * brow[j];
    }
  }
}

void abs2_weighted_colsum(const Complex* w, const double* weights, double* out, std::size_t m,
                          std::size_t n) {
  std::fill(out, out + n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double wi = weights[i];
    const Complex* row = w + i * n;
    for (std::size_t j = 0; j < n; ++j) out[j] += wi * std::norm(row[j]);
  }
}

void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += alpha * x[j];
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", &gemm_nn, &gemm_nc, &gemm_cn, &abs2_weighted_colsum, &axpy};
  return set;
}

const KernelSet& active_kernels() {
  static const KernelSet& chosen = [] () -> const KernelSet& {
    if (const char* env = std::getenv("BACKFLOW_KERNELS")) {
      if (std::string_view(env) == "scalar") return scalar_kernels();
    }
    if (const KernelSet* wide = avx2_kernels()) return *wide;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace backflow::kernels
