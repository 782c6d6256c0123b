#include "corrmap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "corrmap/kernels.hpp"

namespace corrmap::linalg {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const auto& k = kernels::active_backend();
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      for (int p = 0; p < b.rows(); ++p) {
        cplx* dst = out.data() +
                    static_cast<std::size_t>(i * b.rows() + p) * out.cols() +
                    static_cast<std::size_t>(j) * b.cols();
        k.scale(s, b.data() + static_cast<std::size_t>(p) * b.cols(), dst, b.cols());
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace_env(const ComplexMatrix& m, int dim_s, int dim_e) {
  if (dim_s < 1 || dim_e < 1 || !m.is_square() || m.rows() != dim_s * dim_e)
    throw std::invalid_argument("partial_trace_env: malformed composite operator");
  ComplexMatrix out(dim_s, dim_s);
  for (int i = 0; i < dim_s; ++i)
    for (int j = 0; j < dim_s; ++j) {
      cplx acc(0.0, 0.0);
      for (int e = 0; e < dim_e; ++e) acc += m(i * dim_e + e, j * dim_e + e);
      out(i, j) = acc;
    }
  return out;
}

ComplexMatrix partial_trace_sys(const ComplexMatrix& m, int dim_s, int dim_e) {
  if (dim_s < 1 || dim_e < 1 || !m.is_square() || m.rows() != dim_s * dim_e)
    throw std::invalid_argument("partial_trace_sys: malformed composite operator");
  ComplexMatrix out(dim_e, dim_e);
  for (int p = 0; p < dim_e; ++p)
    for (int q = 0; q < dim_e; ++q) {
      cplx acc(0.0, 0.0);
      for (int s = 0; s < dim_s; ++s) acc += m(s * dim_e + p, s * dim_e + q);
      out(p, q) = acc;
    }
  return out;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

// One complex Jacobi rotation zeroing a(p,q). The rotation J acts as
// identity outside the (p,q) plane with J(p,p)=c, J(q,q)=c, J(p,q)=s*u,
// J(q,p)=-s*conj(u), where u is the phase of a(p,q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const cplx g = a(p, q);
  const double absg = std::abs(g);
  if (absg < 1e-300) {
    a(p, q) = a(q, p) = 0.0;
    return;
  }
  const cplx u = g / absg;
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();
  const double tau = (beta - alpha) / (2.0 * absg);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::hypot(1.0, tau));
  else
    t = -1.0 / (-tau + std::hypot(1.0, tau));
  const double c = 1.0 / std::hypot(1.0, t);
  const double s = t * c;
  const int n = a.rows();

  // columns: A <- A*J, V <- V*J
  for (int r = 0; r < n; ++r) {
    const cplx ap = a(r, p), aq = a(r, q);
    a(r, p) = c * ap - s * std::conj(u) * aq;
    a(r, q) = s * u * ap + c * aq;
    const cplx vp = v(r, p), vq = v(r, q);
    v(r, p) = c * vp - s * std::conj(u) * vq;
    v(r, q) = s * u * vp + c * vq;
  }
  // rows: A <- J^H * A
  for (int col = 0; col < n; ++col) {
    const cplx rp = a(p, col), rq = a(q, col);
    a(p, col) = c * rp - s * u * rq;
    a(q, col) = s * std::conj(u) * rp + c * rq;
  }
  a(p, q) = a(q, p) = 0.0;
  a(p, p) = cplx(a(p, p).real(), 0.0);
  a(q, q) = cplx(a(q, q).real(), 0.0);
}

// Modified Gram-Schmidt on a contiguous range of eigenvector columns that
// share a (numerically) degenerate eigenvalue.
void reorthonormalize(ComplexMatrix& v, int first, int last) {
  const int n = v.rows();
  for (int j = first; j <= last; ++j) {
    for (int k = first; k < j; ++k) {
      cplx ov(0.0, 0.0);
      for (int r = 0; r < n; ++r) ov += std::conj(v(r, k)) * v(r, j);
      for (int r = 0; r < n; ++r) v(r, j) -= ov * v(r, k);
    }
    double nn = 0.0;
    for (int r = 0; r < n; ++r) nn += std::norm(v(r, j));
    nn = std::sqrt(nn);
    if (nn > 0.0)
      for (int r = 0; r < n; ++r) v(r, j) /= nn;
  }
}

void fix_column_phases(ComplexMatrix& v) {
  const int n = v.rows();
  for (int j = 0; j < v.cols(); ++j) {
    int imax = 0;
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
      const double mag = std::abs(v(r, j));
      if (mag > best) {
        best = mag;
        imax = r;
      }
    }
    if (best <= 0.0) continue;
    const cplx phase = std::conj(v(imax, j)) / best;
    for (int r = 0; r < n; ++r) v(r, j) *= phase;
  }
}

}  // namespace

HermitianEigenResult hermitian_eig(const ComplexMatrix& h, double herm_tol) {
  if (!h.is_square()) throw std::invalid_argument("hermitian_eig: matrix must be square");
  if (!h.all_finite()) throw std::invalid_argument("hermitian_eig: non-finite entries");
  const double hnorm = h.frobenius_norm();
  if (hermiticity_defect(h) > herm_tol * std::max(1.0, hnorm))
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within tolerance");

  const int n = h.rows();
  // Work on the Hermitized copy so roundoff asymmetry cannot bias rotations.
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double stop = 1e-14 * hnorm;
  bool converged = offdiag_norm(a) <= stop;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    converged = offdiag_norm(a) <= stop;
  }
  if (!converged)
    throw std::runtime_error("hermitian_eig: Jacobi failed to converge in 100 sweeps");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a(x, x).real() > a(y, y).real(); });

  HermitianEigenResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    result.eigenvalues[j] = a(order[j], order[j]).real();
    for (int r = 0; r < n; ++r) result.eigenvectors(r, j) = v(r, order[j]);
  }

  // Re-orthonormalize degenerate clusters, then pin phases for
  // reproducibility.
  const double degen = 1e-12 * std::max(1.0, hnorm);
  int first = 0;
  for (int j = 1; j <= n; ++j) {
    if (j == n || std::abs(result.eigenvalues[j] - result.eigenvalues[first]) > degen) {
      if (j - first > 1) reorthonormalize(result.eigenvectors, first, j - 1);
      first = j;
    }
  }
  fix_column_phases(result.eigenvectors);
  return result;
}

double min_eigenvalue(const ComplexMatrix& h, double herm_tol) {
  return hermitian_eig(h, herm_tol).eigenvalues.back();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("frobenius_distance: dimension mismatch");
  return std::sqrt(kernels::active_backend().sqnorm_diff(a.data(), b.data(), a.size()));
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (!h.is_square()) throw std::invalid_argument("hermiticity_defect: non-square matrix");
  double acc = 0.0;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) acc += std::norm(h(i, j) - std::conj(h(j, i)));
  return std::sqrt(acc);
}

double unitarity_defect(const ComplexMatrix& u) {
  // Column-isometry defect; zero for unitaries and isometry blocks alike.
  ComplexMatrix gram = ComplexMatrix::mul(u.dagger(), u);
  gram -= ComplexMatrix::identity(u.cols());
  return gram.frobenius_norm();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix::mul(a, b) - ComplexMatrix::mul(b, a);
}

}  // namespace corrmap::linalg
