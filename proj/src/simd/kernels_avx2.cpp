// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include "rcmm/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace rcmm::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot_reversed(const double* a, const double* b, std::size_t n) noexcept {
  // b is walked backwards: lanes (b[n-1-i], ..., b[n-4-i]) are loaded from
  // b + n-4-i and lane-reversed.
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d r0 = _mm256_permute4x64_pd(_mm256_loadu_pd(b + n - 4 - i), 0x1B);
    __m256d r1 = _mm256_permute4x64_pd(_mm256_loadu_pd(b + n - 8 - i), 0x1B);
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), r0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), r1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d r0 = _mm256_permute4x64_pd(_mm256_loadu_pd(b + n - 4 - i), 0x1B);
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), r0, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[n - 1 - i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

}  // namespace rcmm::simd::avx2
