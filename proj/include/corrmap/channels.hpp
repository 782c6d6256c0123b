#pragma once

#include <string>
#include <vector>

#include "corrmap/complex_matrix.hpp"
#include "corrmap/states.hpp"

namespace corrmap::channels {

enum class KrausLabel { PhiI, PhiII, Phi1, Phi2, Custom };

std::string to_string(KrausLabel label);
KrausLabel kraus_label_from_string(const std::string& name);

// Finite family of Kraus operators representing one completely positive
// trace-preserving map at one interaction time.
struct KrausSet {
  std::vector<ComplexMatrix> operators;  // all dim x dim
  KrausLabel label = KrausLabel::Custom;
  double time_tag = 0.0;
  int dim = 0;
};

// ||sum_i M_i^H M_i - 1||_F
double tp_defect(const std::vector<ComplexMatrix>& ops, int dim);

KrausSet make_kraus_set(std::vector<ComplexMatrix> ops, KrausLabel label,
                        double time_tag, double tol = 1e-10);

// The dim_s x dim_s operator with entries <s', gamma| u |s, alpha> for
// environment vectors gamma, alpha.
ComplexMatrix env_sandwich(const ComplexMatrix& u, const ComplexMatrix& gamma,
                           const ComplexMatrix& alpha);

// Rank-one operators sqrt(lambda(k,j)) |nonortho_k><ortho_j| built from a
// GHJW link, stored j-major (all k for the first orthogonal component
// first). Their squares sum to the projector onto the mixed-block
// subspace.
struct KOperators {
  std::vector<ComplexMatrix> kraus_k;
  std::vector<ComplexMatrix> effects;  // K^H K, same order
  int r = 0;
  int m = 0;
  const ComplexMatrix& at(int j, int k) const { return kraus_k[static_cast<std::size_t>(j) * r + k]; }
};

KOperators build_k_operators(const states::GhjwLink& link,
                             const states::NonOrthogonalDecomposition& nonortho,
                             const states::OrthogonalDecomposition& ortho);

// The positive operator-valued measure fixed by the class: pure projectors
// followed by the K^H K effects. Completeness holds when the class spans
// the system space.
struct InvariantPovm {
  std::vector<ComplexMatrix> effects;
  std::vector<ComplexMatrix> kraus_k;
};

InvariantPovm invariant_povm(const states::CorrelatedClassSpec& spec);

// Reduced-map Kraus family for a class spec under the composite unitary u.
// For class II specs the mixed block is routed through the GHJW operators;
// class I specs yield the projector-only construction. The optional
// env_basis replaces the computational environment basis used for the
// trace; any orthonormal basis gives the same channel.
KrausSet build_phiII_kraus(const states::CorrelatedClassSpec& spec, const ComplexMatrix& u,
                           double time_tag,
                           const std::vector<ComplexMatrix>& env_basis = {});

// Class-I-only builders for the two completely positive extensions that
// agree on the compatibility domain.
KrausSet build_phi1_kraus(const states::CorrelatedClassSpec& spec, const ComplexMatrix& u,
                          double time_tag,
                          const std::vector<ComplexMatrix>& env_basis = {});
KrausSet build_phi2_kraus(const states::CorrelatedClassSpec& spec, const ComplexMatrix& u,
                          double time_tag,
                          const std::vector<ComplexMatrix>& env_basis = {});

ComplexMatrix apply_kraus_raw(const KrausSet& ks, const ComplexMatrix& rho);
states::DensityMatrix apply_kraus(const KrausSet& ks, const states::DensityMatrix& rho);

// Channels sending system operators to composite operators; they coincide
// on the compatibility domain and recover the class states there.
ComplexMatrix assignment_a1(const states::CorrelatedClassSpec& spec,
                            const ComplexMatrix& sigma);
ComplexMatrix assignment_a2(const states::CorrelatedClassSpec& spec,
                            const ComplexMatrix& sigma);

// Pinching onto the spec's full orthogonal basis.
ComplexMatrix diagonalizing_projection(const states::CorrelatedClassSpec& spec,
                                       const ComplexMatrix& w);

// Ground truth: Tr_env[u rho_se u^H].
states::DensityMatrix oracle_reduced(const states::DensityMatrix& rho_se,
                                     const ComplexMatrix& u, int dim_s, int dim_e);

// Alternative extension: operators sqrt(mu_k) |psi_k><chi_j| for a
// user-supplied family {chi_j} resolving the identity on the mixed-block
// subspace, completed by the pure projectors into a trace-preserving set.
KrausSet custom_invariant_kraus(const states::CorrelatedClassSpec& spec,
                                const std::vector<ComplexMatrix>& chi,
                                double tol = 1e-10);

}  // namespace corrmap::channels
