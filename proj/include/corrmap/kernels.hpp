#pragma once

#include <complex>
#include <cstddef>

// Low-level dense complex-double kernels. A scalar reference backend is
// always available; on x86-64 an AVX2/FMA backend is compiled in and
// selected at runtime when the CPU supports it. Both backends compute the
// same quantities and are cross-checked against each other in the tests.
//
// All matrices are row-major, contiguous std::complex<double>. Output
// buffers must not alias inputs.
namespace corrmap::kernels {

using cplx = std::complex<double>;

struct Backend {
  const char* name;
  // c = a (m x k) * b (k x n)
  void (*matmul_nn)(const cplx* a, const cplx* b, cplx* c,
                    std::size_t m, std::size_t k, std::size_t n);
  // c = a (m x k) * b^H, where b is stored as (n x k) row-major
  void (*matmul_nc)(const cplx* a, const cplx* b, cplx* c,
                    std::size_t m, std::size_t k, std::size_t n);
  // y += s * x
  void (*axpy)(cplx s, const cplx* x, cplx* y, std::size_t count);
  // y = s * x
  void (*scale)(cplx s, const cplx* x, cplx* y, std::size_t count);
  // sum |x_i|^2
  double (*sqnorm)(const cplx* x, std::size_t count);
  // sum |x_i - y_i|^2
  double (*sqnorm_diff)(const cplx* x, const cplx* y, std::size_t count);
};

const Backend& scalar_backend();

#if defined(CORRMAP_HAVE_AVX2)
const Backend& avx2_backend();
#endif

// True when the running CPU can execute the AVX2 backend.
bool cpu_supports_avx2();

// Backend picked once at startup: AVX2 when compiled in and supported,
// scalar otherwise. Overridable with CORRMAP_KERNELS=scalar|avx2.
const Backend& active_backend();

}  // namespace corrmap::kernels
