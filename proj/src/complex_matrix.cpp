#include "corrmap/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "corrmap/kernels.hpp"

namespace corrmap {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
  data_.assign(static_cast<std::size_t>(rows) * cols, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<cplx>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  ComplexMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c)
      throw std::invalid_argument("ragged initializer rows");
    int j = 0;
    for (const cplx& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::column(const std::vector<cplx>& entries) {
  ComplexMatrix m(static_cast<int>(entries.size()), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = std::conj(data_[i]);
  return out;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
  cplx t(0.0, 0.0);
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  return std::sqrt(kernels::active_backend().sqnorm(data_.data(), data_.size()));
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix addition dimension mismatch");
  kernels::active_backend().axpy(cplx(1.0, 0.0), other.data_.data(), data_.data(),
                                 data_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix subtraction dimension mismatch");
  kernels::active_backend().axpy(cplx(-1.0, 0.0), other.data_.data(), data_.data(),
                                 data_.size());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  kernels::active_backend().scale(s, data_.data(), data_.data(), data_.size());
  return *this;
}

void ComplexMatrix::add_scaled(cplx s, const ComplexMatrix& x) {
  if (rows_ != x.rows_ || cols_ != x.cols_)
    throw std::invalid_argument("add_scaled dimension mismatch");
  kernels::active_backend().axpy(s, x.data_.data(), data_.data(), data_.size());
}

ComplexMatrix ComplexMatrix::mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matmul dimension mismatch");
  ComplexMatrix c(a.rows_, b.cols_);
  kernels::active_backend().matmul_nn(a.data(), b.data(), c.data(), a.rows_, a.cols_,
                                      b.cols_);
  return c;
}

ComplexMatrix ComplexMatrix::mul_dagger(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("mul_dagger dimension mismatch");
  ComplexMatrix c(a.rows_, b.rows_);
  kernels::active_backend().matmul_nc(a.data(), b.data(), c.data(), a.rows_, a.cols_,
                                      b.rows_);
  return c;
}

cplx inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != 1 || b.cols() != 1 || a.rows() != b.rows())
    throw std::invalid_argument("inner product expects equal-length column vectors");
  cplx acc(0.0, 0.0);
  for (int i = 0; i < a.rows(); ++i) acc += std::conj(a(i, 0)) * b(i, 0);
  return acc;
}

ComplexMatrix outer(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != 1 || b.cols() != 1)
    throw std::invalid_argument("outer product expects column vectors");
  ComplexMatrix out(a.rows(), b.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.rows(); ++j) out(i, j) = a(i, 0) * std::conj(b(j, 0));
  return out;
}

ComplexMatrix projector(const ComplexMatrix& v) { return outer(v, v); }

ComplexMatrix basis_vector(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  ComplexMatrix v(dim, 1);
  v(index, 0) = 1.0;
  return v;
}

double vector_norm(const ComplexMatrix& v) { return v.frobenius_norm(); }

}  // namespace corrmap
