// AVX2+FMA variants of the complex kernels.
//
// Functions carry a target attribute instead of the whole file being built
// with -mavx2, so no AVX2 code can leak into inline functions shared with
// the scalar translation units. Only raw double pointers and intrinsics are
// used below for the same reason.

#include "backflow/kernels.hpp"

#if !defined(BACKFLOW_NO_AVX2) && (defined(__x86_64__) || defined(__i386__)) && \
    (defined(__GNUC__) || defined(__clang__))
#define BACKFLOW_AVX2_AVAILABLE 1
#include <immintrin.h>
#endif

namespace backflow::kernels {

#ifdef BACKFLOW_AVX2_AVAILABLE
namespace {

#define BACKFLOW_AVX2 __attribute__((target("avx2,fma")))

// y[0..n) += (ar + i ai) * x[0..n), complex interleaved
BACKFLOW_AVX2 inline void axpy_row(double ar, double ai, const double* x, double* y, std::size_t n) {
  const __m256d vr = _mm256_set1_pd(ar);
  const __m256d vi = _mm256_set1_pd(ai);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d b = _mm256_loadu_pd(x + 2 * j);
    const __m256d bswap = _mm256_permute_pd(b, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(vr, b, _mm256_mul_pd(vi, bswap));
    _mm256_storeu_pd(y + 2 * j, _mm256_add_pd(_mm256_loadu_pd(y + 2 * j), prod));
  }
  for (; j < n; ++j) {
    const double br = x[2 * j];
    const double bi = x[2 * j + 1];
    y[2 * j] += ar * br - ai * bi;
    y[2 * j + 1] += ar * bi + ai * br;
  }
}

BACKFLOW_AVX2 void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  axpy_row(alpha.real(), alpha.imag(), reinterpret_cast<const double*>(x),
           reinterpret_cast<double*>(y), n);
}

BACKFLOW_AVX2 void zero(double* p, std::size_t count) {
  for (std::size_t q = 0; q < count; ++q) p[q] = 0.0;
}

BACKFLOW_AVX2 void gemm_nn(const Complex* a, const Complex* b, Complex* c, std::size_t m,
                           std::size_t k, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  zero(cd, 2 * m * n);
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = cd + 2 * i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double* aip = ad + 2 * (i * k + p);
      axpy_row(aip[0], aip[1], bd + 2 * p * n, crow, n);
    }
  }
}

BACKFLOW_AVX2 void gemm_cn(const Complex* a, const Complex* b, Complex* c, std::size_t m,
                           std::size_t k, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  zero(cd, 2 * m * n);
  for (std::size_t p = 0; p < k; ++p) {
    const double* arow = ad + 2 * p * m;
    const double* brow = bd + 2 * p * n;
    for (std::size_t i = 0; i < m; ++i) {
      axpy_row(arow[2 * i], -arow[2 * i + 1], brow, cd + 2 * i * n, n);
    }
  }
}

// sum_p x[p] * conj(y[p])
BACKFLOW_AVX2 inline void dotc(const double* x, const double* y, std::size_t k, double* out) {
  __m256d same = _mm256_setzero_pd();     // (xr yr, xi yi, ...)
  __m256d crossed = _mm256_setzero_pd();  // (xr yi, xi yr, ...)
  std::size_t p = 0;
  for (; p + 2 <= k; p += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * p);
    const __m256d yv = _mm256_loadu_pd(y + 2 * p);
    same = _mm256_fmadd_pd(xv, yv, same);
    crossed = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), crossed);
  }
  alignas(32) double s[4];
  alignas(32) double x4[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(x4, crossed);
  double re = (s[0] + s[1]) + (s[2] + s[3]);
  double im = (x4[1] - x4[0]) + (x4[3] - x4[2]);
  for (; p < k; ++p) {
    const double xr = x[2 * p], xi = x[2 * p + 1];
    const double yr = y[2 * p], yi = y[2 * p + 1];
    re += xr * yr + xi * yi;
    im += xi * yr - xr * yi;
  }
  out[0] = re;
  out[1] = im;
}

BACKFLOW_AVX2 void gemm_nc(const Complex* a, const Complex* b, Complex* c, std::size_t m,
                           std::size_t k, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dotc(ad + 2 * i * k, bd + 2 * j * k, k, cd + 2 * (i * n + j));
    }
  }
}

BACKFLOW_AVX2 void abs2_weighted_colsum(const Complex* w, const double* weights, double* out,
                                        std::size_t m, std::size_t n) {
  const double* wd = reinterpret_cast<const double*>(w);
  zero(out, n);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = wd + 2 * i * n;
    const __m256d wi = _mm256_set1_pd(weights[i]);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d v0 = _mm256_loadu_pd(row + 2 * j);
      const __m256d v1 = _mm256_loadu_pd(row + 2 * j + 4);
      // hadd gives (|c0|^2, |c2|^2, |c1|^2, |c3|^2)
      const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
      const __m256d norms = _mm256_permute4x64_pd(h, 0b11011000);
      _mm256_storeu_pd(out + j, _mm256_fmadd_pd(wi, norms, _mm256_loadu_pd(out + j)));
    }
    for (; j < n; ++j) {
      const double re = row[2 * j], im = row[2 * j + 1];
      out[j] += weights[i] * (re * re + im * im);
    }
  }
}

#undef BACKFLOW_AVX2

}  // namespace

const KernelSet* avx2_kernels() {
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelSet set{"avx2", &gemm_nn, &gemm_nc, &gemm_cn, &abs2_weighted_colsum, &axpy};
  return supported ? &set : nullptr;
}

#else

const KernelSet* avx2_kernels() { return nullptr; }

#endif

}  // namespace backflow::kernels
