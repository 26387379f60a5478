#pragma once

// Data-parallel inner loops shared by the skipgram trainer, the pair-scoring
// MLP and all-pairs shortest paths. Every kernel has a scalar reference
// implementation; vector variants are selected once at startup from the
// CPU's capabilities and can be overridden with GRAPHDR_SIMD=scalar|avx2|neon.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace graphdr::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b) noexcept;

// True when the backend was compiled in and the running CPU supports it.
bool backend_supported(Backend b) noexcept;

Backend active_backend() noexcept;

// Throws graphdr::Error(InvalidArgument) for unsupported backends.
void set_backend(Backend b);

// Distance value used for "unreachable" by relax_min_plus. Chosen so that
// kUnreachable + kUnreachable does not overflow int32.
inline constexpr std::int32_t kUnreachable = 1 << 29;

/// Sum of x[i] * y[i]. Vector backends use several partial sums, so results
/// may differ from the scalar reference in the last few ulps.
double dot(std::span<const double> x, std::span<const double> y) noexcept;

/// y += a * x. Bit-identical across backends (no fused multiply-add).
void axpy(double a, std::span<const double> x, std::span<double> y) noexcept;

/// row[j] = min(row[j], via_cost + via_row[j]) with kUnreachable saturation.
/// Integer arithmetic, so every backend agrees exactly.
void relax_min_plus(std::span<std::int32_t> row, std::span<const std::int32_t> via_row,
                    std::int32_t via_cost) noexcept;

// Per-backend entry points, exposed for equivalence tests and benchmarks.
namespace scalar {
double dot(const double* x, const double* y, std::size_t n) noexcept;
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
void relax_min_plus(std::int32_t* row, const std::int32_t* via_row, std::int32_t via_cost,
                    std::size_t n) noexcept;
}  // namespace scalar

#if defined(GRAPHDR_HAVE_AVX2)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n) noexcept;
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
void relax_min_plus(std::int32_t* row, const std::int32_t* via_row, std::int32_t via_cost,
                    std::size_t n) noexcept;
}  // namespace avx2
#endif

#if defined(GRAPHDR_HAVE_NEON)
namespace neon {
double dot(const double* x, const double* y, std::size_t n) noexcept;
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
void relax_min_plus(std::int32_t* row, const std::int32_t* via_row, std::int32_t via_cost,
                    std::size_t n) noexcept;
}  // namespace neon
#endif

}  // namespace graphdr::simd
