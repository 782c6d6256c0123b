#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "corrmap/complex_matrix.hpp"

// Deterministic random helpers shared by tests and the CLI. Doubles are
// derived straight from mt19937_64 words so identical seeds give identical
// streams regardless of the standard library's distribution internals.
namespace corrmap::rng {

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  cplx gaussian_cplx() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  std::vector<double> simplex(int count, double floor = 0.0) {
    std::vector<double> out(count);
    double sum = 0.0;
    for (double& x : out) {
      x = floor - std::log(1.0 - uniform());
      sum += x;
    }
    for (double& x : out) x /= sum;
    return out;
  }

  ComplexMatrix gaussian_matrix(int rows, int cols) {
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gaussian_cplx();
    return m;
  }

  // Columns orthonormalized by modified Gram-Schmidt.
  ComplexMatrix random_isometry(int rows, int cols) {
    ComplexMatrix m = gaussian_matrix(rows, cols);
    for (int j = 0; j < cols; ++j) {
      for (int k = 0; k < j; ++k) {
        cplx ov(0.0, 0.0);
        for (int r = 0; r < rows; ++r) ov += std::conj(m(r, k)) * m(r, j);
        for (int r = 0; r < rows; ++r) m(r, j) -= ov * m(r, k);
      }
      double nn = 0.0;
      for (int r = 0; r < rows; ++r) nn += std::norm(m(r, j));
      nn = std::sqrt(nn);
      for (int r = 0; r < rows; ++r) m(r, j) /= nn;
    }
    return m;
  }

  ComplexMatrix random_unitary(int n) { return random_isometry(n, n); }

  ComplexMatrix random_state_vector(int n) {
    ComplexMatrix v = gaussian_matrix(n, 1);
    double nn = v.frobenius_norm();
    v *= 1.0 / nn;
    return v;
  }

  // Full-rank random density matrix g g^H / tr.
  ComplexMatrix random_density(int n) {
    const ComplexMatrix g = gaussian_matrix(n, n);
    ComplexMatrix rho = ComplexMatrix::mul_dagger(g, g);
    rho *= 1.0 / rho.trace().real();
    return rho;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace corrmap::rng
