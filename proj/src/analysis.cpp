#include "corrmap/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "corrmap/linalg.hpp"

namespace corrmap::analysis {

namespace {

ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return out;
}

}  // namespace

ComplexMatrix reshuffle(const ComplexMatrix& m, int dim) {
  if (!m.is_square() || m.rows() != dim * dim)
    throw std::invalid_argument("reshuffle: matrix must be dim^2 x dim^2");
  ComplexMatrix out(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          out(i * dim + k, j * dim + l) = m(i * dim + j, k * dim + l);
  return out;
}

ChannelRep rep_from_lambda(ComplexMatrix lambda, int dim) {
  ChannelRep rep;
  rep.choi = reshuffle(lambda, dim);
  rep.lambda = std::move(lambda);
  rep.dim = dim;
  return rep;
}

ChannelRep rep_from_map(int dim,
                        const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  ComplexMatrix lambda(dim * dim, dim * dim);
  for (int k = 0; k < dim; ++k)
    for (int l = 0; l < dim; ++l) {
      const ComplexMatrix image = map(outer(basis_vector(dim, k), basis_vector(dim, l)));
      if (!image.is_square() || image.rows() != dim)
        throw std::invalid_argument("rep_from_map: map changed the dimension");
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) lambda(i * dim + j, k * dim + l) = image(i, j);
    }
  return rep_from_lambda(std::move(lambda), dim);
}

ChannelRep rep_from_kraus(const channels::KrausSet& ks) {
  const int n = ks.dim;
  ComplexMatrix lambda(n * n, n * n);
  // Phi[|k><l|] = sum_M (column k of M)(column l of M)^H
  for (const auto& op : ks.operators) {
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            lambda(i * n + j, k * n + l) += op(i, k) * std::conj(op(j, l));
  }
  return rep_from_lambda(std::move(lambda), n);
}

CpReport cp_report(const ChannelRep& rep, double tol) {
  CpReport report;
  report.tol = tol;
  report.min_choi_eig = linalg::min_eigenvalue(hermitize(rep.choi));
  const ComplexMatrix reduced = linalg::partial_trace_sys(rep.choi, rep.dim, rep.dim);
  report.tp_defect =
      linalg::frobenius_distance(reduced, ComplexMatrix::identity(rep.dim));
  report.is_cp = report.min_choi_eig >= -tol;
  return report;
}

ComplexMatrix apply_rep(const ChannelRep& rep, const ComplexMatrix& x) {
  const int n = rep.dim;
  if (!x.is_square() || x.rows() != n)
    throw std::invalid_argument("apply_rep: input dimension mismatch");
  ComplexMatrix vec(n * n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vec(i * n + j, 0) = x(i, j);
  const ComplexMatrix mapped = ComplexMatrix::mul(rep.lambda, vec);
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = mapped(i * n + j, 0);
  return out;
}

double channel_distance(const ChannelRep& a, const ChannelRep& b) {
  if (a.dim != b.dim) throw std::invalid_argument("channel_distance: dimension mismatch");
  return linalg::frobenius_distance(a.lambda, b.lambda);
}

double channel_distance(const ChannelRep& a, const ChannelRep& b,
                        const std::vector<states::DensityMatrix>& domain) {
  if (a.dim != b.dim) throw std::invalid_argument("channel_distance: dimension mismatch");
  double worst = 0.0;
  for (const auto& rho : domain) {
    const double dist =
        linalg::frobenius_distance(apply_rep(a, rho.mat()), apply_rep(b, rho.mat()));
    worst = std::max(worst, dist);
  }
  return worst;
}

std::vector<BlochSample> bloch_image(const ChannelRep& rep, int samples) {
  if (rep.dim != 2)
    throw std::invalid_argument("bloch_image: only defined for qubit channels");
  if (samples < 1) throw std::invalid_argument("bloch_image: need at least one sample");

  const ComplexMatrix sx = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const ComplexMatrix sy =
      ComplexMatrix::from_rows({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}});
  const ComplexMatrix sz = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});

  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<BlochSample> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / samples;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    const double x = r * std::cos(phi);
    const double y = r * std::sin(phi);

    ComplexMatrix rho = ComplexMatrix::identity(2);
    rho.add_scaled(x, sx);
    rho.add_scaled(y, sy);
    rho.add_scaled(z, sz);
    rho *= 0.5;

    const ComplexMatrix mapped = apply_rep(rep, rho);
    BlochSample sample;
    sample.in = {x, y, z};
    sample.out = {ComplexMatrix::mul(sx, mapped).trace().real(),
                  ComplexMatrix::mul(sy, mapped).trace().real(),
                  ComplexMatrix::mul(sz, mapped).trace().real()};
    out.push_back(sample);
  }
  return out;
}

}  // namespace corrmap::analysis
