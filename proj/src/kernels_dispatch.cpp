#include "corrmap/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace corrmap::kernels {

bool cpu_supports_avx2() {
#if defined(CORRMAP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Backend& pick_backend() {
  const char* forced = std::getenv("CORRMAP_KERNELS");
  if (forced != nullptr && std::strlen(forced) > 0) {
    if (std::strcmp(forced, "scalar") == 0) return scalar_backend();
    if (std::strcmp(forced, "avx2") == 0) {
#if defined(CORRMAP_HAVE_AVX2)
      if (cpu_supports_avx2()) return avx2_backend();
#endif
      throw std::runtime_error("CORRMAP_KERNELS=avx2 requested but AVX2 is unavailable");
    }
    if (std::strcmp(forced, "auto") != 0)
      throw std::runtime_error("CORRMAP_KERNELS must be scalar, avx2 or auto");
  }
#if defined(CORRMAP_HAVE_AVX2)
  if (cpu_supports_avx2()) return avx2_backend();
#endif
  return scalar_backend();
}

}  // namespace

const Backend& active_backend() {
  static const Backend& backend = pick_backend();
  return backend;
}

}  // namespace corrmap::kernels
