#pragma once

#include <vector>

#include "corrmap/complex_matrix.hpp"

namespace corrmap::linalg {

// Spectral data of a Hermitian matrix. Eigenvalues sorted descending,
// eigenvectors the matching orthonormal columns with the largest-magnitude
// component of each column made real positive.
struct HermitianEigenResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out the second (environment) tensor factor of a square matrix on a
// dim_s * dim_e space.
ComplexMatrix partial_trace_env(const ComplexMatrix& m, int dim_s, int dim_e);

// Trace out the first tensor factor instead.
ComplexMatrix partial_trace_sys(const ComplexMatrix& m, int dim_s, int dim_e);

// Cyclic Jacobi diagonalization of a complex Hermitian matrix. Throws
// std::invalid_argument when the input is not Hermitian within
// herm_tol * max(1, ||h||_F), std::runtime_error if 100 sweeps do not reach
// off-diagonal mass <= 1e-14 * ||h||_F.
HermitianEigenResult hermitian_eig(const ComplexMatrix& h, double herm_tol = 1e-10);

double min_eigenvalue(const ComplexMatrix& h, double herm_tol = 1e-10);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double hermiticity_defect(const ComplexMatrix& h);   // ||h - h^H||_F
double unitarity_defect(const ComplexMatrix& u);     // ||u^H u - 1||_F
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace corrmap::linalg
