// AVX2 kernels. This translation unit is compiled with -mavx2 -mfma and is
// only ever entered after a runtime CPU check in simd_dispatch.cpp.

#include "graphdr/simd.hpp"

#include <immintrin.h>

#include <algorithm>

namespace graphdr::simd::avx2 {

double dot(const double* x, const double* y, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    i += 4;
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

// Separate multiply and add so results match the scalar reference bit for bit.
void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = a * x[i];
    y[i] = y[i] + prod;
  }
}

void relax_min_plus(std::int32_t* row, const std::int32_t* via_row, std::int32_t via_cost,
                    std::size_t n) noexcept {
  const __m256i cost = _mm256_set1_epi32(via_cost);
  const __m256i cap = _mm256_set1_epi32(kUnreachable);
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256i via = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(via_row + j));
    const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + j));
    const __m256i candidate = _mm256_min_epi32(_mm256_add_epi32(via, cost), cap);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(row + j), _mm256_min_epi32(cur, candidate));
  }
  for (; j < n; ++j) {
    const std::int32_t candidate = std::min(via_cost + via_row[j], kUnreachable);
    row[j] = std::min(row[j], candidate);
  }
}

}  // namespace graphdr::simd::avx2
