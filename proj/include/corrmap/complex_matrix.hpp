#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace corrmap {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Value type: cheap to copy at the sizes
// used here (system and composite dimensions stay well below one hundred).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);  // zero-filled

  static ComplexMatrix identity(int n);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
  static ComplexMatrix column(const std::vector<cplx>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_ && rows_ > 0; }

  cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix dagger() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  // this += s * x
  void add_scaled(cplx s, const ComplexMatrix& x);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return mul(a, b);
  }

  static ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
  // a * b^H
  static ComplexMatrix mul_dagger(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

// Column-vector helpers (n x 1 matrices).
cplx inner(const ComplexMatrix& a, const ComplexMatrix& b);                 // a^H b
ComplexMatrix outer(const ComplexMatrix& a, const ComplexMatrix& b);        // a b^H
ComplexMatrix projector(const ComplexMatrix& v);                            // v v^H
ComplexMatrix basis_vector(int dim, int index);
double vector_norm(const ComplexMatrix& v);

}  // namespace corrmap
