#include "corrmap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "corrmap/linalg.hpp"

namespace corrmap::channels {

std::string to_string(KrausLabel label) {
  switch (label) {
    case KrausLabel::PhiI: return "phiI";
    case KrausLabel::PhiII: return "phiII";
    case KrausLabel::Phi1: return "phi1";
    case KrausLabel::Phi2: return "phi2";
    case KrausLabel::Custom: return "custom";
  }
  return "custom";
}

KrausLabel kraus_label_from_string(const std::string& name) {
  if (name == "phiI") return KrausLabel::PhiI;
  if (name == "phiII") return KrausLabel::PhiII;
  if (name == "phi1") return KrausLabel::Phi1;
  if (name == "phi2") return KrausLabel::Phi2;
  if (name == "custom") return KrausLabel::Custom;
  throw std::invalid_argument("unknown Kraus label: " + name);
}

double tp_defect(const std::vector<ComplexMatrix>& ops, int dim) {
  ComplexMatrix sum(dim, dim);
  for (const auto& op : ops) sum += ComplexMatrix::mul(op.dagger(), op);
  sum -= ComplexMatrix::identity(dim);
  return sum.frobenius_norm();
}

KrausSet make_kraus_set(std::vector<ComplexMatrix> ops, KrausLabel label,
                        double time_tag, double tol) {
  if (ops.empty()) throw std::invalid_argument("kraus set must not be empty");
  const int dim = ops.front().rows();
  for (const auto& op : ops)
    if (op.rows() != dim || op.cols() != dim)
      throw std::invalid_argument("kraus operators must be square and equally sized");
  const double defect = tp_defect(ops, dim);
  if (defect > tol)
    throw std::invalid_argument("kraus set is not trace preserving, defect " +
                                std::to_string(defect));
  KrausSet ks;
  ks.operators = std::move(ops);
  ks.label = label;
  ks.time_tag = time_tag;
  ks.dim = dim;
  return ks;
}

ComplexMatrix env_sandwich(const ComplexMatrix& u, const ComplexMatrix& gamma,
                           const ComplexMatrix& alpha) {
  if (gamma.cols() != 1 || alpha.cols() != 1 || gamma.rows() != alpha.rows())
    throw std::invalid_argument("env_sandwich: gamma and alpha must be equal-length vectors");
  const int de = gamma.rows();
  if (!u.is_square() || u.rows() % de != 0)
    throw std::invalid_argument("env_sandwich: unitary side not divisible by env dimension");
  const int ds = u.rows() / de;
  ComplexMatrix out(ds, ds);
  for (int sp = 0; sp < ds; ++sp)
    for (int s = 0; s < ds; ++s) {
      cplx acc(0.0, 0.0);
      for (int ep = 0; ep < de; ++ep) {
        if (gamma(ep, 0) == cplx(0.0, 0.0)) continue;
        const cplx g = std::conj(gamma(ep, 0));
        for (int e = 0; e < de; ++e)
          acc += g * u(sp * de + ep, s * de + e) * alpha(e, 0);
      }
      out(sp, s) = acc;
    }
  return out;
}

KOperators build_k_operators(const states::GhjwLink& link,
                             const states::NonOrthogonalDecomposition& nonortho,
                             const states::OrthogonalDecomposition& ortho) {
  if (link.r() != nonortho.size() || link.m() != ortho.size())
    throw std::invalid_argument("build_k_operators: link dimensions do not match inputs");
  KOperators out;
  out.r = link.r();
  out.m = link.m();
  for (int j = 0; j < out.m; ++j)
    for (int k = 0; k < out.r; ++k) {
      const double coeff = std::sqrt(link.lambda_at(k, j));
      ComplexMatrix op = outer(nonortho.vectors[k], ortho.vectors[j]);
      op *= coeff;
      out.effects.push_back(ComplexMatrix::mul(op.dagger(), op));
      out.kraus_k.push_back(std::move(op));
    }
  return out;
}

namespace {

// Class-I view of a spec: the full list of orthogonal slots (pure
// projectors followed by the mixed-block vectors) with their environment
// states. requires_completeness demands that the slots span the whole
// system space.
struct ClassOneSlots {
  std::vector<ComplexMatrix> vectors;
  std::vector<const states::DensityMatrix*> env;
};

ClassOneSlots class_one_slots(const states::CorrelatedClassSpec& spec,
                              bool requires_completeness) {
  if (spec.is_class_two())
    throw std::invalid_argument(
        "operation requires a class-I spec; use build_phiII_kraus for class II");
  spec.validate();
  ClassOneSlots slots;
  for (int i = 0; i < spec.d - 1; ++i) {
    slots.vectors.push_back(spec.phi[i]);
    slots.env.push_back(&spec.rho_env[i]);
  }
  for (int j = 0; j < spec.w_block.size(); ++j) {
    slots.vectors.push_back(spec.w_block.vectors[j]);
    slots.env.push_back(&spec.rho_env[spec.d - 1 + j]);
  }
  if (requires_completeness && static_cast<int>(slots.vectors.size()) != spec.n)
    throw std::invalid_argument(
        "operation requires the orthogonal components to span the system space");
  return slots;
}

std::vector<ComplexMatrix> default_env_basis(int de) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(de);
  for (int e = 0; e < de; ++e) basis.push_back(basis_vector(de, e));
  return basis;
}

void check_env_basis(const std::vector<ComplexMatrix>& basis, int de) {
  if (static_cast<int>(basis.size()) != de)
    throw std::invalid_argument("environment basis must have dim_e vectors");
  for (const auto& b : basis)
    if (b.cols() != 1 || b.rows() != de)
      throw std::invalid_argument("environment basis vectors have wrong shape");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const cplx g = inner(basis[i], basis[j]);
      const cplx expect = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      if (std::abs(g - expect) > 1e-10)
        throw std::invalid_argument("environment basis is not orthonormal");
    }
}

void check_unitary(const ComplexMatrix& u, int side) {
  if (!u.is_square() || u.rows() != side)
    throw std::invalid_argument("composite unitary has wrong dimensions");
  if (linalg::unitarity_defect(u) > 1e-10)
    throw std::invalid_argument("composite evolution is not unitary within tolerance");
}

struct EigenPair {
  double value = 0.0;
  ComplexMatrix vector;
};

// Full eigendecomposition (zero eigenvalues kept) with the eigenvectors
// assigned to computational-basis slots by descending overlap. Environment
// states sharing an eigenbasis then enumerate it identically, which fixes
// the pairing used by the summed Kraus construction.
std::vector<EigenPair> aligned_env_eigensystem(const states::DensityMatrix& rho) {
  const auto eig = linalg::hermitian_eig(rho.mat());
  const int de = rho.dim();
  std::vector<std::tuple<double, int, int>> overlaps;  // (-|v_b|, slot b, column)
  overlaps.reserve(static_cast<std::size_t>(de) * de);
  for (int col = 0; col < de; ++col)
    for (int b = 0; b < de; ++b)
      overlaps.emplace_back(-std::abs(eig.eigenvectors(b, col)), b, col);
  std::sort(overlaps.begin(), overlaps.end());

  std::vector<int> slot_to_col(de, -1);
  std::vector<bool> col_used(de, false);
  for (const auto& [neg, b, col] : overlaps) {
    (void)neg;
    if (slot_to_col[b] != -1 || col_used[col]) continue;
    slot_to_col[b] = col;
    col_used[col] = true;
  }

  std::vector<EigenPair> out(de);
  for (int b = 0; b < de; ++b) {
    const int col = slot_to_col[b];
    out[b].value = std::max(0.0, eig.eigenvalues[col]);
    out[b].vector = ComplexMatrix(de, 1);
    for (int r = 0; r < de; ++r) out[b].vector(r, 0) = eig.eigenvectors(r, col);
  }
  return out;
}

// Nonzero spectral components of an environment state.
std::vector<EigenPair> env_spectrum(const states::DensityMatrix& rho) {
  const auto decomp = states::spectral_decompose(rho);
  std::vector<EigenPair> out;
  out.reserve(decomp.weights.size());
  for (int i = 0; i < decomp.size(); ++i)
    out.push_back({decomp.weights[i], decomp.vectors[i]});
  return out;
}

// Operators sqrt(weight) * <gamma|u|alpha> * scale * |left><right| for all
// gamma in the basis and all spectral components of rho.
void append_projected_kraus(std::vector<ComplexMatrix>& ops, const ComplexMatrix& u,
                            const std::vector<ComplexMatrix>& basis,
                            const states::DensityMatrix& rho, double scale,
                            const ComplexMatrix& left, const ComplexMatrix& right) {
  for (const auto& component : env_spectrum(rho)) {
    const double coeff = scale * std::sqrt(component.value);
    if (coeff <= 0.0) continue;
    for (const auto& gamma : basis) {
      const ComplexMatrix sandwich = env_sandwich(u, gamma, component.vector);
      ComplexMatrix op = outer(ComplexMatrix::mul(sandwich, left), right);
      op *= coeff;
      ops.push_back(std::move(op));
    }
  }
}

}  // namespace

InvariantPovm invariant_povm(const states::CorrelatedClassSpec& spec) {
  spec.validate();
  if (spec.d - 1 + spec.w_block.size() != spec.n)
    throw std::invalid_argument(
        "invariant_povm: completeness needs class components spanning the system space");
  InvariantPovm out;
  for (const auto& v : spec.phi) out.effects.push_back(projector(v));
  if (spec.is_class_two()) {
    const auto link = states::ghjw_link(spec.w_block, *spec.psi_block);
    auto kops = build_k_operators(link, *spec.psi_block, spec.w_block);
    for (auto& e : kops.effects) out.effects.push_back(std::move(e));
    out.kraus_k = std::move(kops.kraus_k);
  } else {
    for (const auto& v : spec.w_block.vectors) {
      ComplexMatrix pi = projector(v);
      out.kraus_k.push_back(pi);
      out.effects.push_back(std::move(pi));
    }
  }
  return out;
}

KrausSet build_phiII_kraus(const states::CorrelatedClassSpec& spec, const ComplexMatrix& u,
                           double time_tag, const std::vector<ComplexMatrix>& env_basis) {
  spec.validate();
  const int de = spec.dim_e();
  check_unitary(u, spec.n * de);
  const std::vector<ComplexMatrix> basis =
      env_basis.empty() ? default_env_basis(de) : env_basis;
  check_env_basis(basis, de);
  if (spec.d - 1 + spec.w_block.size() != spec.n)
    throw std::invalid_argument(
        "build_phiII_kraus: class components must span the system space");

  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < spec.d - 1; ++i)
    append_projected_kraus(ops, u, basis, spec.rho_env[i], 1.0, spec.phi[i], spec.phi[i]);

  if (spec.is_class_two()) {
    const auto link = states::ghjw_link(spec.w_block, *spec.psi_block);
    for (int k = 0; k < spec.psi_block->size(); ++k)
      for (int j = 0; j < spec.w_block.size(); ++j) {
        const double coeff = std::sqrt(link.lambda_at(k, j));
        if (coeff <= 0.0) continue;
        append_projected_kraus(ops, u, basis, spec.varrho_env[k], coeff,
                               spec.psi_block->vectors[k], spec.w_block.vectors[j]);
      }
  } else {
    for (int j = 0; j < spec.w_block.size(); ++j)
      append_projected_kraus(ops, u, basis, spec.rho_env[spec.d - 1 + j], 1.0,
                             spec.w_block.vectors[j], spec.w_block.vectors[j]);
  }
  return make_kraus_set(std::move(ops),
                        spec.is_class_two() ? KrausLabel::PhiII : KrausLabel::PhiI,
                        time_tag);
}

KrausSet build_phi1_kraus(const states::CorrelatedClassSpec& spec, const ComplexMatrix& u,
                          double time_tag, const std::vector<ComplexMatrix>& env_basis) {
  const auto slots = class_one_slots(spec, true);
  const int de = spec.dim_e();
  check_unitary(u, spec.n * de);
  const std::vector<ComplexMatrix> basis =
      env_basis.empty() ? default_env_basis(de) : env_basis;
  check_env_basis(basis, de);

  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < slots.vectors.size(); ++i)
    append_projected_kraus(ops, u, basis, *slots.env[i], 1.0, slots.vectors[i],
                           slots.vectors[i]);
  return make_kraus_set(std::move(ops), KrausLabel::Phi1, time_tag);
}

KrausSet build_phi2_kraus(const states::CorrelatedClassSpec& spec, const ComplexMatrix& u,
                          double time_tag, const std::vector<ComplexMatrix>& env_basis) {
  const auto slots = class_one_slots(spec, true);
  const int n = spec.n;
  const int de = spec.dim_e();
  check_unitary(u, n * de);
  const std::vector<ComplexMatrix> basis =
      env_basis.empty() ? default_env_basis(de) : env_basis;
  check_env_basis(basis, de);

  // One aligned eigensystem per slot; the summed operators tie the same
  // enumeration index across all slots.
  std::vector<std::vector<EigenPair>> aligned;
  aligned.reserve(slots.env.size());
  for (const auto* rho : slots.env) aligned.push_back(aligned_env_eigensystem(*rho));

  std::vector<ComplexMatrix> ops;
  for (const auto& gamma : basis) {
    for (int b = 0; b < de; ++b) {
      ComplexMatrix op(n, n);
      for (int i = 0; i < n; ++i) {
        const double coeff = std::sqrt(aligned[i][b].value);
        if (coeff <= 0.0) continue;
        const ComplexMatrix sandwich = env_sandwich(u, gamma, aligned[i][b].vector);
        op.add_scaled(coeff, outer(ComplexMatrix::mul(sandwich, slots.vectors[i]),
                                   slots.vectors[i]));
      }
      if (op.frobenius_norm() > 0.0) ops.push_back(std::move(op));
    }
  }
  return make_kraus_set(std::move(ops), KrausLabel::Phi2, time_tag);
}

ComplexMatrix apply_kraus_raw(const KrausSet& ks, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != ks.dim)
    throw std::invalid_argument("apply_kraus: state dimension mismatch");
  ComplexMatrix out(ks.dim, ks.dim);
  for (const auto& op : ks.operators)
    out += ComplexMatrix::mul_dagger(ComplexMatrix::mul(op, rho), op);
  return out;
}

states::DensityMatrix apply_kraus(const KrausSet& ks, const states::DensityMatrix& rho) {
  return states::DensityMatrix(apply_kraus_raw(ks, rho.mat()));
}

ComplexMatrix assignment_a1(const states::CorrelatedClassSpec& spec,
                            const ComplexMatrix& sigma) {
  const auto slots = class_one_slots(spec, true);
  if (!sigma.is_square() || sigma.rows() != spec.n)
    throw std::invalid_argument("assignment_a1: sigma dimension mismatch");
  const int de = spec.dim_e();
  ComplexMatrix out(spec.n * de, spec.n * de);
  for (std::size_t j = 0; j < slots.vectors.size(); ++j) {
    const ComplexMatrix pinched =
        ComplexMatrix::mul(ComplexMatrix::mul(projector(slots.vectors[j]), sigma),
                           projector(slots.vectors[j]));
    out += linalg::kron(pinched, slots.env[j]->mat());
  }
  return out;
}

ComplexMatrix assignment_a2(const states::CorrelatedClassSpec& spec,
                            const ComplexMatrix& sigma) {
  const auto slots = class_one_slots(spec, true);
  if (!sigma.is_square() || sigma.rows() != spec.n)
    throw std::invalid_argument("assignment_a2: sigma dimension mismatch");
  const int de = spec.dim_e();

  std::vector<std::vector<EigenPair>> aligned;
  aligned.reserve(slots.env.size());
  for (const auto* rho : slots.env) aligned.push_back(aligned_env_eigensystem(*rho));

  // Kraus form with one isometry piece per tied enumeration index.
  ComplexMatrix out(spec.n * de, spec.n * de);
  for (int b = 0; b < de; ++b) {
    ComplexMatrix vb(spec.n * de, spec.n);
    for (int j = 0; j < spec.n; ++j) {
      const double coeff = std::sqrt(aligned[j][b].value);
      if (coeff <= 0.0) continue;
      vb.add_scaled(coeff,
                    linalg::kron(projector(slots.vectors[j]), aligned[j][b].vector));
    }
    out += ComplexMatrix::mul_dagger(ComplexMatrix::mul(vb, sigma), vb);
  }
  return out;
}

ComplexMatrix diagonalizing_projection(const states::CorrelatedClassSpec& spec,
                                       const ComplexMatrix& w) {
  const auto slots = class_one_slots(spec, true);
  if (!w.is_square() || w.rows() != spec.n)
    throw std::invalid_argument("diagonalizing_projection: dimension mismatch");
  ComplexMatrix out(spec.n, spec.n);
  for (const auto& v : slots.vectors) {
    const ComplexMatrix pi = projector(v);
    out += ComplexMatrix::mul(ComplexMatrix::mul(pi, w), pi);
  }
  return out;
}

states::DensityMatrix oracle_reduced(const states::DensityMatrix& rho_se,
                                     const ComplexMatrix& u, int dim_s, int dim_e) {
  if (rho_se.dim() != dim_s * dim_e)
    throw std::invalid_argument("oracle_reduced: state does not match dimensions");
  check_unitary(u, dim_s * dim_e);
  const ComplexMatrix evolved =
      ComplexMatrix::mul_dagger(ComplexMatrix::mul(u, rho_se.mat()), u);
  return states::DensityMatrix(linalg::partial_trace_env(evolved, dim_s, dim_e));
}

KrausSet custom_invariant_kraus(const states::CorrelatedClassSpec& spec,
                                const std::vector<ComplexMatrix>& chi, double tol) {
  spec.validate();
  if (!spec.is_class_two())
    throw std::invalid_argument("custom_invariant_kraus: requires a class-II spec");
  const int n = spec.n;
  // {chi_j} must resolve the identity on the mixed-block subspace.
  ComplexMatrix resolution(n, n);
  for (const auto& c : chi) {
    if (c.cols() != 1 || c.rows() != n)
      throw std::invalid_argument("custom_invariant_kraus: chi vectors must be n x 1");
    resolution += projector(c);
  }
  ComplexMatrix subspace(n, n);
  for (const auto& v : spec.w_block.vectors) subspace += projector(v);
  if (linalg::frobenius_distance(resolution, subspace) > tol)
    throw std::invalid_argument(
        "custom_invariant_kraus: chi family does not resolve the mixed-block subspace");

  std::vector<ComplexMatrix> ops;
  for (const auto& v : spec.phi) ops.push_back(projector(v));
  const auto& psi = *spec.psi_block;
  for (const auto& c : chi)
    for (int k = 0; k < psi.size(); ++k) {
      ComplexMatrix op = outer(psi.vectors[k], c);
      op *= std::sqrt(psi.weights[k]);
      ops.push_back(std::move(op));
    }
  auto ks = make_kraus_set(std::move(ops), KrausLabel::Custom, 0.0, tol);

  // The mixed-block piece must reproduce the weighted psi states on the
  // marginal (the invariance property the family is defined by).
  const ComplexMatrix rho0 = states::marginal(spec).mat();
  const double pd = spec.p[spec.d - 1];
  for (int k = 0; k < psi.size(); ++k) {
    ComplexMatrix acc(n, n);
    for (std::size_t j = 0; j < chi.size(); ++j) {
      const auto& op = ks.operators[spec.phi.size() + j * psi.size() + k];
      acc += ComplexMatrix::mul_dagger(ComplexMatrix::mul(op, rho0), op);
    }
    ComplexMatrix expected = projector(psi.vectors[k]);
    expected *= pd * psi.weights[k];
    if (linalg::frobenius_distance(acc, expected) > tol)
      throw std::invalid_argument(
          "custom_invariant_kraus: family violates the invariance property");
  }
  return ks;
}

}  // namespace corrmap::channels
