// AVX2/FMA backend. Two complex doubles per 256-bit vector, interleaved
// re/im as laid out by std::complex<double>. Compiled with -mavx2 -mfma;
// callers must gate on cpu_supports_avx2().

#include "corrmap/kernels.hpp"

#if defined(CORRMAP_HAVE_AVX2)

#include <immintrin.h>

namespace corrmap::kernels {
namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// acc += s * v for a broadcast complex scalar s = (sr, si) and a vector v
// holding two complex values.
inline __m256d cmul_acc(__m256d acc, __m256d sr, __m256d si, __m256d v) {
  // even lanes: sr*re - si*im, odd lanes: sr*im + si*re
  const __m256d vswap = _mm256_permute_pd(v, 0x5);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(sr, v, _mm256_mul_pd(si, vswap)));
}

void matmul_nn_avx2(const cplx* a, const cplx* b, cplx* c,
                    std::size_t m, std::size_t k, std::size_t n) {
  const std::size_t nv = n & ~std::size_t(1);
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx s = a[i * k + l];
      const __m256d sr = _mm256_set1_pd(s.real());
      const __m256d si = _mm256_set1_pd(s.imag());
      const cplx* brow = b + l * n;
      std::size_t j = 0;
      for (; j < nv; j += 2) {
        const __m256d v = _mm256_loadu_pd(dp(brow + j));
        const __m256d acc = _mm256_loadu_pd(dp(crow + j));
        _mm256_storeu_pd(dp(crow + j), cmul_acc(acc, sr, si, v));
      }
      for (; j < n; ++j) crow[j] += s * brow[j];
    }
  }
}

void matmul_nc_avx2(const cplx* a, const cplx* b, cplx* c,
                    std::size_t m, std::size_t k, std::size_t n) {
  // conj(b) = b with odd (imaginary) lanes sign-flipped
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  const std::size_t kv = k & ~std::size_t(1);
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx* brow = b + j * k;
      __m256d acc = _mm256_setzero_pd();
      std::size_t l = 0;
      for (; l < kv; l += 2) {
        const __m256d av = _mm256_loadu_pd(dp(arow + l));
        const __m256d bv = _mm256_xor_pd(_mm256_loadu_pd(dp(brow + l)), conj_mask);
        // complex product av*bv accumulated pairwise
        const __m256d ar = _mm256_movedup_pd(av);                       // [a0r a0r a1r a1r]
        const __m256d ai = _mm256_permute_pd(av, 0xF);                  // [a0i a0i a1i a1i]
        const __m256d bswap = _mm256_permute_pd(bv, 0x5);
        acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, bv, _mm256_mul_pd(ai, bswap)));
      }
      // horizontal sum of the two complex partials
      const __m128d lo = _mm256_castpd256_pd128(acc);
      const __m128d hi = _mm256_extractf128_pd(acc, 1);
      const __m128d sum = _mm_add_pd(lo, hi);
      alignas(16) double out[2];
      _mm_store_pd(out, sum);
      cplx total(out[0], out[1]);
      for (; l < k; ++l) total += arow[l] * std::conj(brow[l]);
      c[i * n + j] = total;
    }
  }
}

void axpy_avx2(cplx s, const cplx* x, cplx* y, std::size_t count) {
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  const std::size_t cv = count & ~std::size_t(1);
  std::size_t i = 0;
  for (; i < cv; i += 2) {
    const __m256d v = _mm256_loadu_pd(dp(x + i));
    const __m256d acc = _mm256_loadu_pd(dp(y + i));
    _mm256_storeu_pd(dp(y + i), cmul_acc(acc, sr, si, v));
  }
  for (; i < count; ++i) y[i] += s * x[i];
}

void scale_avx2(cplx s, const cplx* x, cplx* y, std::size_t count) {
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  const std::size_t cv = count & ~std::size_t(1);
  std::size_t i = 0;
  for (; i < cv; i += 2) {
    const __m256d v = _mm256_loadu_pd(dp(x + i));
    const __m256d vswap = _mm256_permute_pd(v, 0x5);
    _mm256_storeu_pd(dp(y + i), _mm256_fmaddsub_pd(sr, v, _mm256_mul_pd(si, vswap)));
  }
  for (; i < count; ++i) y[i] = s * x[i];
}

double sqnorm_avx2(const cplx* x, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t cv = count & ~std::size_t(1);
  std::size_t i = 0;
  for (; i < cv; i += 2) {
    const __m256d v = _mm256_loadu_pd(dp(x + i));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d sum = _mm_add_pd(lo, hi);
  double total = _mm_cvtsd_f64(sum) + _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum));
  for (; i < count; ++i)
    total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return total;
}

double sqnorm_diff_avx2(const cplx* x, const cplx* y, std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t cv = count & ~std::size_t(1);
  std::size_t i = 0;
  for (; i < cv; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dp(x + i)), _mm256_loadu_pd(dp(y + i)));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d sum = _mm_add_pd(lo, hi);
  double total = _mm_cvtsd_f64(sum) + _mm_cvtsd_f64(_mm_unpackhi_pd(sum, sum));
  for (; i < count; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    total += dr * dr + di * di;
  }
  return total;
}

const Backend kAvx2 = {
    "avx2",     matmul_nn_avx2, matmul_nc_avx2, axpy_avx2,
    scale_avx2, sqnorm_avx2,    sqnorm_diff_avx2,
};

}  // namespace

const Backend& avx2_backend() { return kAvx2; }

}  // namespace corrmap::kernels

#endif  // CORRMAP_HAVE_AVX2
