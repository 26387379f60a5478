#include <cstdlib>
#include <string>

#include "graphdr/error.hpp"
#include "graphdr/simd.hpp"

namespace graphdr::simd {
namespace {

struct KernelTable {
  Backend backend;
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  void (*relax_min_plus)(std::int32_t*, const std::int32_t*, std::int32_t, std::size_t) noexcept;
};

constexpr KernelTable kScalarTable{Backend::Scalar, &scalar::dot, &scalar::axpy,
                                   &scalar::relax_min_plus};
#if defined(GRAPHDR_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Backend::Avx2, &avx2::dot, &avx2::axpy, &avx2::relax_min_plus};
#endif
#if defined(GRAPHDR_HAVE_NEON)
constexpr KernelTable kNeonTable{Backend::Neon, &neon::dot, &neon::axpy, &neon::relax_min_plus};
#endif

const KernelTable& table_for(Backend b) {
  switch (b) {
#if defined(GRAPHDR_HAVE_AVX2)
    case Backend::Avx2:
      return kAvx2Table;
#endif
#if defined(GRAPHDR_HAVE_NEON)
    case Backend::Neon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

Backend best_backend() {
  if (const char* env = std::getenv("GRAPHDR_SIMD")) {
    const std::string choice(env);
    if (choice == "scalar") return Backend::Scalar;
    if (choice == "avx2" && backend_supported(Backend::Avx2)) return Backend::Avx2;
    if (choice == "neon" && backend_supported(Backend::Neon)) return Backend::Neon;
  }
  if (backend_supported(Backend::Avx2)) return Backend::Avx2;
  if (backend_supported(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

// Not synchronized: set_backend is meant for tests and startup only.
const KernelTable* active = &table_for(best_backend());

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(GRAPHDR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(GRAPHDR_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() noexcept { return active->backend; }

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw Error(Errc::InvalidArgument,
                "SIMD backend '" + std::string(backend_name(b)) + "' is not available");
  }
  active = &table_for(b);
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  return active->dot(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
  active->axpy(a, x.data(), y.data(), x.size());
}

void relax_min_plus(std::span<std::int32_t> row, std::span<const std::int32_t> via_row,
                    std::int32_t via_cost) noexcept {
  active->relax_min_plus(row.data(), via_row.data(), via_cost, row.size());
}

}  // namespace graphdr::simd
