#include "corrmap/kernels.hpp"

namespace corrmap::kernels {
namespace {

void matmul_nn_scalar(const cplx* a, const cplx* b, cplx* c,
                      std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const cplx s = a[i * k + l];
      const cplx* brow = b + l * n;
      cplx* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += s * brow[j];
    }
  }
}

void matmul_nc_scalar(const cplx* a, const cplx* b, cplx* c,
                      std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx* brow = b + j * k;
      cplx acc(0.0, 0.0);
      for (std::size_t l = 0; l < k; ++l) acc += arow[l] * std::conj(brow[l]);
      c[i * n + j] = acc;
    }
  }
}

void axpy_scalar(cplx s, const cplx* x, cplx* y, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) y[i] += s * x[i];
}

void scale_scalar(cplx s, const cplx* x, cplx* y, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) y[i] = s * x[i];
}

double sqnorm_scalar(const cplx* x, std::size_t count) {
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i)
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

double sqnorm_diff_scalar(const cplx* x, const cplx* y, std::size_t count) {
  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    acc += dr * dr + di * di;
  }
  return acc;
}

const Backend kScalar = {
    "scalar",     matmul_nn_scalar, matmul_nc_scalar, axpy_scalar,
    scale_scalar, sqnorm_scalar,    sqnorm_diff_scalar,
};

}  // namespace

const Backend& scalar_backend() { return kScalar; }

}  // namespace corrmap::kernels
