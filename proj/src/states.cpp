#include "corrmap/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "corrmap/linalg.hpp"

namespace corrmap::states {

namespace {

void check_probability_sum(const std::vector<double>& w, double tol, const char* what) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= -1e-15) || !std::isfinite(x))
      throw std::invalid_argument(std::string(what) + ": negative or non-finite weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::invalid_argument(std::string(what) + ": weights do not sum to one");
}

void check_vectors(const std::vector<ComplexMatrix>& vs, const char* what) {
  for (const auto& v : vs) {
    if (v.cols() != 1 || v.rows() < 1)
      throw std::invalid_argument(std::string(what) + ": expected column vectors");
    if (!v.all_finite())
      throw std::invalid_argument(std::string(what) + ": non-finite vector entries");
    if (v.rows() != vs.front().rows())
      throw std::invalid_argument(std::string(what) + ": inconsistent vector dimensions");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat, double tol) : mat_(std::move(mat)) {
  if (!mat_.is_square())
    throw std::invalid_argument("density matrix must be square");
  if (!mat_.all_finite())
    throw std::invalid_argument("density matrix has non-finite entries");
  const double norm = mat_.frobenius_norm();
  if (linalg::hermiticity_defect(mat_) > tol * std::max(1.0, norm))
    throw std::invalid_argument("density matrix is not Hermitian within tolerance");
  if (std::abs(mat_.trace() - cplx(1.0, 0.0)) > tol)
    throw std::invalid_argument("density matrix trace differs from one");
  if (linalg::min_eigenvalue(mat_, tol) < -tol)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

ComplexMatrix OrthogonalDecomposition::assemble() const {
  if (vectors.empty()) throw std::invalid_argument("empty decomposition");
  ComplexMatrix out(dim(), dim());
  for (int i = 0; i < size(); ++i) out.add_scaled(weights[i], projector(vectors[i]));
  return out;
}

void OrthogonalDecomposition::validate(double tol) const {
  if (weights.size() != vectors.size())
    throw std::invalid_argument("orthogonal decomposition: weight/vector count mismatch");
  if (weights.empty())
    throw std::invalid_argument("orthogonal decomposition: empty");
  check_vectors(vectors, "orthogonal decomposition");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument(
        "orthogonal decomposition: weights must be strictly positive");
  check_probability_sum(weights, 1e-12, "orthogonal decomposition");
  // Gram matrix must be the identity.
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) {
      const cplx g = inner(vectors[i], vectors[j]);
      const cplx expect = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      if (std::abs(g - expect) > tol)
        throw std::invalid_argument("orthogonal decomposition: vectors not orthonormal");
    }
}

ComplexMatrix NonOrthogonalDecomposition::assemble() const {
  if (vectors.empty()) throw std::invalid_argument("empty decomposition");
  ComplexMatrix out(dim(), dim());
  for (int i = 0; i < size(); ++i) out.add_scaled(weights[i], projector(vectors[i]));
  return out;
}

void NonOrthogonalDecomposition::validate(double tol) const {
  if (weights.size() != vectors.size())
    throw std::invalid_argument("non-orthogonal decomposition: count mismatch");
  if (weights.empty())
    throw std::invalid_argument("non-orthogonal decomposition: empty");
  check_vectors(vectors, "non-orthogonal decomposition");
  for (const auto& v : vectors)
    if (std::abs(vector_norm(v) - 1.0) > tol)
      throw std::invalid_argument("non-orthogonal decomposition: vector not normalized");
  check_probability_sum(weights, 1e-12, "non-orthogonal decomposition");
}

int CorrelatedClassSpec::dim_e() const {
  if (!rho_env.empty()) return rho_env.front().dim();
  if (!varrho_env.empty()) return varrho_env.front().dim();
  throw std::invalid_argument("class spec: no environment states");
}

void CorrelatedClassSpec::validate(double tol) const {
  if (n < 1) throw std::invalid_argument("class spec: system dimension must be >= 1");
  if (d < 1 || d > n) throw std::invalid_argument("class spec: d must satisfy 1 <= d <= n");
  if (static_cast<int>(p.size()) != d)
    throw std::invalid_argument("class spec: probability vector must have length d");
  check_probability_sum(p, 1e-12, "class spec probabilities");
  if (static_cast<int>(phi.size()) != d - 1)
    throw std::invalid_argument("class spec: expected d-1 projector vectors");
  check_vectors(phi, "class spec projectors");
  for (const auto& v : phi)
    if (v.rows() != n) throw std::invalid_argument("class spec: projector dimension != n");

  w_block.validate(tol);
  if (w_block.dim() != n)
    throw std::invalid_argument("class spec: mixed-block vectors must live in the system space");
  const int m = w_block.size();
  if (d - 1 + m > n)
    throw std::invalid_argument("class spec: more orthogonal components than dimensions");

  // Projectors orthonormal among themselves and orthogonal to the mixed block.
  for (std::size_t i = 0; i < phi.size(); ++i) {
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const cplx g = inner(phi[i], phi[j]);
      const cplx expect = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      if (std::abs(g - expect) > tol)
        throw std::invalid_argument("class spec: projector vectors not orthonormal");
    }
    for (const auto& wv : w_block.vectors)
      if (std::abs(inner(phi[i], wv)) > tol)
        throw std::invalid_argument(
            "class spec: projector vectors must be orthogonal to the mixed block");
  }

  const int de = dim_e();
  auto check_env = [&](const std::vector<DensityMatrix>& env, const char* what) {
    for (const auto& e : env)
      if (e.dim() != de)
        throw std::invalid_argument(std::string("class spec: ") + what +
                                    " environment dimensions inconsistent");
  };
  check_env(rho_env, "rho");
  check_env(varrho_env, "varrho");

  if (is_class_two()) {
    psi_block->validate();
    if (psi_block->dim() != n)
      throw std::invalid_argument("class spec: psi vectors must live in the system space");
    if (psi_block->size() < m)
      throw std::invalid_argument(
          "class spec: need at least as many psi vectors as orthogonal components");
    for (const auto& psi : psi_block->vectors)
      for (const auto& pv : phi)
        if (std::abs(inner(pv, psi)) > tol)
          throw std::invalid_argument(
              "class spec: psi vectors must be orthogonal to the pure projectors");
    // Both blocks must describe the same mixed operator.
    const ComplexMatrix wo = w_block.assemble();
    const ComplexMatrix wn = psi_block->assemble();
    if (linalg::frobenius_distance(wo, wn) > tol * std::max(1.0, wo.frobenius_norm()))
      throw std::invalid_argument(
          "class spec: psi block and w block describe different mixed states");
    if (static_cast<int>(rho_env.size()) != d - 1)
      throw std::invalid_argument("class spec: class II needs d-1 rho environment states");
    if (static_cast<int>(varrho_env.size()) != psi_block->size())
      throw std::invalid_argument("class spec: class II needs one varrho state per psi");
  } else {
    if (static_cast<int>(rho_env.size()) != d - 1 + m)
      throw std::invalid_argument(
          "class spec: class I needs one environment state per orthogonal component");
    if (!varrho_env.empty())
      throw std::invalid_argument("class spec: class I must not carry varrho states");
  }
}

OrthogonalDecomposition spectral_decompose(const DensityMatrix& w) {
  const auto eig = linalg::hermitian_eig(w.mat());
  OrthogonalDecomposition out;
  for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j) {
    if (eig.eigenvalues[j] < 1e-12) continue;  // drop zero-weight components
    out.weights.push_back(eig.eigenvalues[j]);
    ComplexMatrix v(w.dim(), 1);
    for (int r = 0; r < w.dim(); ++r) v(r, 0) = eig.eigenvectors(r, static_cast<int>(j));
    out.vectors.push_back(std::move(v));
  }
  return out;
}

GhjwLink ghjw_link(const OrthogonalDecomposition& ortho,
                   const NonOrthogonalDecomposition& nonortho, double tol) {
  ortho.validate();
  nonortho.validate();
  if (ortho.dim() != nonortho.dim())
    throw std::invalid_argument("ghjw_link: decompositions live in different spaces");
  if (nonortho.size() < ortho.size())
    throw std::invalid_argument("ghjw_link: need at least as many non-orthogonal vectors");
  const ComplexMatrix wo = ortho.assemble();
  const ComplexMatrix wn = nonortho.assemble();
  if (linalg::frobenius_distance(wo, wn) > tol * std::max(1.0, wo.frobenius_norm()))
    throw std::invalid_argument("ghjw_link: decompositions represent different states");

  const int r = nonortho.size();
  const int m = ortho.size();
  GhjwLink link;
  link.u = ComplexMatrix(r, m);
  link.lambda.assign(static_cast<std::size_t>(r) * m, 0.0);
  for (int k = 0; k < r; ++k) {
    for (int j = 0; j < m; ++j) {
      if (!(ortho.weights[j] > 0.0))
        throw std::invalid_argument("ghjw_link: zero orthogonal weight");
      const cplx overlap = inner(ortho.vectors[j], nonortho.vectors[k]);
      link.u(k, j) = std::sqrt(nonortho.weights[k] / ortho.weights[j]) * overlap;
      link.lambda[static_cast<std::size_t>(k) * m + j] = std::norm(link.u(k, j));
    }
  }

  // The construction guarantees these; failures indicate inconsistent input.
  if (linalg::unitarity_defect(link.u) > 1e-10)
    throw std::invalid_argument("ghjw_link: isometry defect exceeds tolerance");
  for (int k = 0; k < r; ++k) {
    double mixed = 0.0;
    for (int j = 0; j < m; ++j) mixed += link.lambda_at(k, j) * ortho.weights[j];
    if (std::abs(mixed - nonortho.weights[k]) > 1e-10)
      throw std::invalid_argument("ghjw_link: weight consistency violated");
  }
  return link;
}

DensityMatrix assemble_composite(const CorrelatedClassSpec& spec) {
  spec.validate();
  const int de = spec.dim_e();
  ComplexMatrix out(spec.n * de, spec.n * de);
  for (int i = 0; i < spec.d - 1; ++i)
    out += spec.p[i] * linalg::kron(projector(spec.phi[i]), spec.rho_env[i].mat());
  const double pd = spec.p[spec.d - 1];
  if (spec.is_class_two()) {
    const auto& psi = *spec.psi_block;
    for (int k = 0; k < psi.size(); ++k)
      out += (pd * psi.weights[k]) *
             linalg::kron(projector(psi.vectors[k]), spec.varrho_env[k].mat());
  } else {
    for (int j = 0; j < spec.w_block.size(); ++j)
      out += (pd * spec.w_block.weights[j]) *
             linalg::kron(projector(spec.w_block.vectors[j]),
                          spec.rho_env[spec.d - 1 + j].mat());
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix marginal(const CorrelatedClassSpec& spec) {
  spec.validate();
  return domain_member(spec, spec.p);
}

DensityMatrix domain_member(const CorrelatedClassSpec& spec,
                            const std::vector<double>& probs) {
  if (static_cast<int>(probs.size()) != spec.d)
    throw std::invalid_argument("domain_member: probability vector must have length d");
  check_probability_sum(probs, 1e-12, "domain_member probabilities");
  ComplexMatrix out(spec.n, spec.n);
  for (int i = 0; i < spec.d - 1; ++i) out.add_scaled(probs[i], projector(spec.phi[i]));
  out.add_scaled(probs[spec.d - 1], spec.w_block.assemble());
  return DensityMatrix(std::move(out));
}

}  // namespace corrmap::states
