// Scalar reference kernels. Every vector backend is tested against these.

#include "graphdr/simd.hpp"

#include <algorithm>

namespace graphdr::simd::scalar {

double dot(const double* x, const double* y, std::size_t n) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = a * x[i];
    y[i] = y[i] + prod;
  }
}

void relax_min_plus(std::int32_t* row, const std::int32_t* via_row, std::int32_t via_cost,
                    std::size_t n) noexcept {
  for (std::size_t j = 0; j < n; ++j) {
    const std::int32_t candidate = std::min(via_cost + via_row[j], kUnreachable);
    row[j] = std::min(row[j], candidate);
  }
}

}  // namespace graphdr::simd::scalar
