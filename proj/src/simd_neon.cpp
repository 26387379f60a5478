// NEON kernels for aarch64, where Advanced SIMD is part of the base ISA.

#include "graphdr/simd.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace graphdr::simd::neon {

double dot(const double* x, const double* y, std::size_t n) noexcept {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = a * x[i];
    y[i] = y[i] + prod;
  }
}

void relax_min_plus(std::int32_t* row, const std::int32_t* via_row, std::int32_t via_cost,
                    std::size_t n) noexcept {
  const int32x4_t cost = vdupq_n_s32(via_cost);
  const int32x4_t cap = vdupq_n_s32(kUnreachable);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const int32x4_t candidate = vminq_s32(vaddq_s32(vld1q_s32(via_row + j), cost), cap);
    vst1q_s32(row + j, vminq_s32(vld1q_s32(row + j), candidate));
  }
  for (; j < n; ++j) {
    const std::int32_t candidate = std::min(via_cost + via_row[j], kUnreachable);
    row[j] = std::min(row[j], candidate);
  }
}

}  // namespace graphdr::simd::neon
