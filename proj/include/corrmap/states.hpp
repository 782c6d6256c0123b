#pragma once

#include <optional>
#include <vector>

#include "corrmap/complex_matrix.hpp"

namespace corrmap::states {

// Validated statistical operator: Hermitian, unit trace, positive
// semidefinite within tolerance.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat, double tol = 1e-10);

  const ComplexMatrix& mat() const { return mat_; }
  int dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

// Convex decomposition into orthonormal vectors with strictly positive
// weights summing to one.
struct OrthogonalDecomposition {
  std::vector<double> weights;
  std::vector<ComplexMatrix> vectors;  // column vectors, one per weight

  int size() const { return static_cast<int>(weights.size()); }
  int dim() const { return vectors.empty() ? 0 : vectors.front().rows(); }
  ComplexMatrix assemble() const;
  void validate(double tol = 1e-10) const;
};

// Convex decomposition into normalized but generally non-orthogonal
// vectors.
struct NonOrthogonalDecomposition {
  std::vector<double> weights;
  std::vector<ComplexMatrix> vectors;

  int size() const { return static_cast<int>(weights.size()); }
  int dim() const { return vectors.empty() ? 0 : vectors.front().rows(); }
  ComplexMatrix assemble() const;
  void validate(double tol = 1e-12) const;
};

// Isometry connecting an orthogonal and a non-orthogonal decomposition of
// the same operator: u(k,j) = sqrt(weights_nonortho_k / weights_ortho_j) *
// <ortho_j|nonortho_k>, columns orthonormal. lambda(k,j) = |u(k,j)|^2 and
// the mixing consistency weights_nonortho_k = sum_j lambda(k,j) *
// weights_ortho_j holds for every k.
struct GhjwLink {
  ComplexMatrix u;              // r x m
  std::vector<double> lambda;   // row-major r x m, |u|^2

  int r() const { return u.rows(); }
  int m() const { return u.cols(); }
  double lambda_at(int k, int j) const { return lambda[static_cast<std::size_t>(k) * m() + j]; }
};

// Full description of one correlated system-environment class. The first
// d-1 slots are pure system projectors paired with environment states
// rho_env; the d-th slot is the mixed block with its chosen orthogonal
// decomposition. When psi_block is present the mixed block is distributed
// over non-orthogonal vectors paired with varrho_env (class II); when
// absent the orthogonal components themselves carry environment states
// appended to rho_env (class I).
struct CorrelatedClassSpec {
  int n = 0;  // system dimension
  int d = 0;  // linear-hull dimension of the compatibility domain
  std::vector<double> p;                 // length d
  std::vector<ComplexMatrix> phi;        // d-1 orthonormal column vectors
  OrthogonalDecomposition w_block;       // on the complement of span(phi)
  std::optional<NonOrthogonalDecomposition> psi_block;
  std::vector<DensityMatrix> rho_env;    // class I: d-1+m entries, class II: d-1
  std::vector<DensityMatrix> varrho_env; // class II only: r entries

  bool is_class_two() const { return psi_block.has_value(); }
  int dim_e() const;
  void validate(double tol = 1e-10) const;
};

// Spectral resolution with eigenvalues below 1e-12 dropped.
OrthogonalDecomposition spectral_decompose(const DensityMatrix& w);

// Connect two decompositions of the same operator. Throws when they
// assemble to different operators or the orthogonal weights vanish.
GhjwLink ghjw_link(const OrthogonalDecomposition& ortho,
                   const NonOrthogonalDecomposition& nonortho, double tol = 1e-10);

DensityMatrix assemble_composite(const CorrelatedClassSpec& spec);

// System marginal of every class member built with the spec's own
// probabilities.
DensityMatrix marginal(const CorrelatedClassSpec& spec);

// Member of the compatibility domain for an arbitrary probability vector
// over the d generating slots.
DensityMatrix domain_member(const CorrelatedClassSpec& spec,
                            const std::vector<double>& probs);

}  // namespace corrmap::states
