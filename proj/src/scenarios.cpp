#include "corrmap/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "corrmap/linalg.hpp"

namespace corrmap::scenarios {

namespace {

constexpr cplx kI(0.0, 1.0);

void check_probability_pair(double a, double b, const char* what) {
  if (!(a >= -1e-12) || !(b >= -1e-12) || std::abs(a + b - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(what) + " must be probabilities summing to one");
}

// The closed-form fixtures below are transcribed with input-major composite
// indices (the pair (k,l) labels rows); ChannelRep uses output-major
// indices, so lambda fixtures are transposed and Choi fixtures get both
// index pairs swapped.
ComplexMatrix swap_pair_indices(const ComplexMatrix& m, int dim) {
  ComplexMatrix out(dim * dim, dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d)
          out(b * dim + a, d * dim + c) = m(a * dim + b, c * dim + d);
  return out;
}

ComplexMatrix pauli(int j) {
  switch (j) {
    case 0: return ComplexMatrix::identity(2);
    case 1: return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    case 2: return ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}});
    default: return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  }
}

ComplexMatrix sigma_y_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix::column({s, kI * s});
}

ComplexMatrix sigma_y_minus() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix::column({s, -kI * s});
}

states::DensityMatrix diagonal_qubit(double top) {
  ComplexMatrix m(2, 2);
  m(0, 0) = top;
  m(1, 1) = 1.0 - top;
  return states::DensityMatrix(std::move(m));
}

}  // namespace

void QubitScenarioParams::validate() const {
  check_probability_pair(p1, p2, "p1, p2");
  check_probability_pair(lam_plus_1, lam_minus_1, "environment eigenvalues (first)");
  check_probability_pair(lam_plus_2, lam_minus_2, "environment eigenvalues (second)");
}

DerivedConstants derived_constants(const QubitScenarioParams& p) {
  p.validate();
  DerivedConstants c;
  c.sigma_plus = 0.5 * (std::sqrt(p.lam_plus_1) + std::sqrt(p.lam_plus_2));
  c.sigma_minus = 0.5 * (std::sqrt(p.lam_minus_1) + std::sqrt(p.lam_minus_2));
  c.delta_plus = 0.5 * (std::sqrt(p.lam_plus_1) - std::sqrt(p.lam_plus_2));
  c.delta_minus = 0.5 * (std::sqrt(p.lam_minus_1) - std::sqrt(p.lam_minus_2));
  c.kappa_script_plus = c.sigma_plus * c.delta_plus;
  c.kappa_script_minus = c.sigma_minus * c.delta_minus;
  c.mu_plus = c.sigma_plus * c.sigma_plus + c.delta_plus * c.delta_plus;
  c.mu_minus = c.sigma_minus * c.sigma_minus + c.delta_minus * c.delta_minus;
  c.chi_plus = c.sigma_plus * c.sigma_plus + c.sigma_minus * c.sigma_minus;
  c.chi_minus = c.sigma_plus * c.sigma_plus - c.sigma_minus * c.sigma_minus;
  c.kappa_plus = c.delta_plus * c.delta_plus + c.delta_minus * c.delta_minus;
  c.kappa_minus = c.delta_plus * c.delta_plus - c.delta_minus * c.delta_minus;
  return c;
}

JpaParams jpa_params(double y, double chi) {
  if (!(std::abs(y) <= 1.0) || !(chi * chi <= 1.0 - y * y + 1e-15) ||
      !(std::abs(y) + std::abs(chi) <= 1.0 + 1e-12))
    throw std::invalid_argument(
        "jpa parameters must satisfy |y| <= 1, chi^2 <= 1 - y^2 and |y| + |chi| <= 1");
  JpaParams j;
  j.y = y;
  j.chi = chi;
  const double denom = 1.0 - y * y;
  if (denom <= 0.0) {
    // |y| = 1 forces chi = 0: the uncorrelated limit.
    j.a_plus = 1.0;
    j.a_minus = 0.0;
    j.b = 0.0;
    return j;
  }
  const double root1 = std::sqrt(std::max(0.0, 1.0 - (y + chi) * (y + chi)) / denom);
  const double root2 = std::sqrt(std::max(0.0, 1.0 - (y - chi) * (y - chi)) / denom);
  j.a_plus = 0.5 * (root1 + root2);
  j.a_minus = 0.5 * (root1 - root2);
  j.b = chi / denom;
  return j;
}

QubitScenarioParams to_qubit_params(const JpaParams& j) {
  QubitScenarioParams p;
  // The projector weights carry the Bloch offset; the composite then
  // reduces to 1/4 (1 + y sy x 1 - chi sy x sz).
  p.p1 = 0.5 * (1.0 + j.y);
  p.p2 = 0.5 * (1.0 - j.y);
  const double r1 = (1.0 + j.y) > 0.0 ? j.chi / (1.0 + j.y) : 0.0;
  const double r2 = (1.0 - j.y) > 0.0 ? j.chi / (1.0 - j.y) : 0.0;
  p.lam_plus_1 = 0.5 * (1.0 - r1);
  p.lam_minus_1 = 0.5 * (1.0 + r1);
  p.lam_plus_2 = 0.5 * (1.0 + r2);
  p.lam_minus_2 = 0.5 * (1.0 - r2);
  p.validate();
  return p;
}

ComplexMatrix qubit_unitary(double omega_t) {
  const double c = std::cos(omega_t);
  const double s = std::sin(omega_t);
  ComplexMatrix u = ComplexMatrix::identity(4);
  for (int j = 1; j <= 3; ++j) {
    ComplexMatrix factor = ComplexMatrix::identity(4);
    factor *= c;
    factor.add_scaled(-kI * s, linalg::kron(pauli(j), pauli(j)));
    u = ComplexMatrix::mul(factor, u);
  }
  return u;
}

ComplexMatrix qubit_unitary_compact(double omega_t) {
  const double c = std::cos(2.0 * omega_t);
  const double s = std::sin(2.0 * omega_t);
  ComplexMatrix swap(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  ComplexMatrix u = ComplexMatrix::identity(4);
  u *= c;
  u.add_scaled(-kI * s, swap);
  return u;
}

double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  auto aligned = [](const ComplexMatrix& m) {
    int bi = 0, bj = 0;
    double best = -1.0;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          bi = i;
          bj = j;
        }
    ComplexMatrix out = m;
    if (best > 0.0) out *= std::conj(m(bi, bj)) / best;
    return out;
  };
  return linalg::frobenius_distance(aligned(a), aligned(b));
}

ComplexMatrix analytic_lambda_phi2(const DerivedConstants& c, double two_omega_t) {
  const double C = std::cos(two_omega_t);
  const double S = std::sin(two_omega_t);
  const double C2 = C * C, S2 = S * S, SC = S * C;
  const double ks_p = c.kappa_script_plus, ks_m = c.kappa_script_minus;
  const ComplexMatrix display = ComplexMatrix::from_rows({
      {C2 * c.chi_plus + S2 * c.mu_plus, SC * (ks_m - ks_p), SC * (ks_m - ks_p),
       C2 * c.kappa_plus + S2 * c.mu_minus},
      {2.0 * kI * S2 * ks_p, C2 * c.chi_plus - kI * SC * c.chi_minus,
       -C2 * c.kappa_plus - kI * SC * c.kappa_minus, 2.0 * kI * S2 * ks_m},
      {-2.0 * kI * S2 * ks_p, -C2 * c.kappa_plus + kI * SC * c.kappa_minus,
       C2 * c.chi_plus + kI * SC * c.chi_minus, -2.0 * kI * S2 * ks_m},
      {C2 * c.kappa_plus + S2 * c.mu_plus, SC * (ks_m - ks_p), SC * (ks_m - ks_p),
       C2 * c.chi_plus + S2 * c.mu_minus},
  });
  return display.transpose();
}

ComplexMatrix analytic_lambda_phi1(const DerivedConstants& c, double two_omega_t) {
  const double C = std::cos(two_omega_t);
  const double S = std::sin(two_omega_t);
  const double C2 = C * C, S2 = S * S, SC = S * C;
  const double ks_p = c.kappa_script_plus, ks_m = c.kappa_script_minus;
  const double dmu = c.mu_plus - c.mu_minus;
  ComplexMatrix display = ComplexMatrix::from_rows({
      {C2 + 2.0 * S2 * c.mu_plus, 2.0 * SC * (ks_m - ks_p), 2.0 * SC * (ks_m - ks_p),
       C2 + 2.0 * S2 * c.mu_minus},
      {4.0 * kI * S2 * ks_p, C2 - kI * SC * dmu, -C2 - kI * SC * dmu,
       4.0 * kI * S2 * ks_m},
      {-4.0 * kI * S2 * ks_p, -C2 + kI * SC * dmu, C2 + kI * SC * dmu,
       -4.0 * kI * S2 * ks_m},
      {C2 + 2.0 * S2 * c.mu_plus, 2.0 * SC * (ks_m - ks_p), 2.0 * SC * (ks_m - ks_p),
       C2 + 2.0 * S2 * c.mu_minus},
  });
  display *= 0.5;
  return display.transpose();
}

ComplexMatrix analytic_choi_phi2(const DerivedConstants& c, double two_omega_t) {
  const double C = std::cos(two_omega_t);
  const double S = std::sin(two_omega_t);
  const double C2 = C * C, S2 = S * S, SC = S * C;
  const double ks_p = c.kappa_script_plus, ks_m = c.kappa_script_minus;
  const ComplexMatrix display = ComplexMatrix::from_rows({
      {C2 * c.chi_plus + S2 * c.mu_plus, SC * (ks_m - ks_p), 2.0 * kI * S2 * ks_p,
       C2 * c.chi_plus - kI * SC * c.chi_minus},
      {SC * (ks_m - ks_p), C2 * c.kappa_plus + S2 * c.mu_minus,
       -C2 * c.kappa_plus - kI * SC * c.kappa_minus, 2.0 * kI * S2 * ks_m},
      {-2.0 * kI * S2 * ks_p, -C2 * c.kappa_plus + kI * SC * c.kappa_minus,
       C2 * c.kappa_plus + S2 * c.mu_plus, SC * (ks_m - ks_p)},
      {C2 * c.chi_plus + kI * SC * c.chi_minus, -2.0 * kI * S2 * ks_m,
       SC * (ks_m - ks_p), C2 * c.chi_plus + S2 * c.mu_minus},
  });
  return swap_pair_indices(display, 2);
}

ComplexMatrix analytic_choi_phi1(const DerivedConstants& c, double two_omega_t) {
  const double C = std::cos(two_omega_t);
  const double S = std::sin(two_omega_t);
  const double C2 = C * C, S2 = S * S, SC = S * C;
  const double ks_p = c.kappa_script_plus, ks_m = c.kappa_script_minus;
  const double dmu = c.mu_plus - c.mu_minus;
  ComplexMatrix display = ComplexMatrix::from_rows({
      {C2 + 2.0 * S2 * c.mu_plus, 2.0 * SC * (ks_m - ks_p), 4.0 * kI * S2 * ks_p,
       C2 - kI * SC * dmu},
      {2.0 * SC * (ks_m - ks_p), C2 + 2.0 * S2 * c.mu_minus, -C2 - kI * SC * dmu,
       4.0 * kI * S2 * ks_m},
      {-4.0 * kI * S2 * ks_p, -C2 + kI * SC * dmu, C2 + 2.0 * S2 * c.mu_plus,
       2.0 * SC * (ks_m - ks_p)},
      {C2 + kI * SC * dmu, -4.0 * kI * S2 * ks_m, 2.0 * SC * (ks_m - ks_p),
       C2 + 2.0 * S2 * c.mu_minus},
  });
  display *= 0.5;
  return swap_pair_indices(display, 2);
}

ComplexMatrix jpa_choi(const JpaParams& j, double two_omega_t) {
  const double C = std::cos(two_omega_t);
  const double S = std::sin(two_omega_t);
  const double C2 = C * C, S2 = S * S, SC = S * C;
  const double yb = j.y * j.b;
  ComplexMatrix display = ComplexMatrix::from_rows({
      {C2 * (1.0 + j.a_plus) + S2 * (1.0 + yb), SC * j.b, -kI * S2 * j.b,
       C2 * (1.0 + j.a_plus) - kI * SC * (yb - j.a_minus)},
      {SC * j.b, C2 * (1.0 - j.a_plus) + S2 * (1.0 - yb),
       -C2 * (1.0 - j.a_plus) - kI * SC * (yb + j.a_minus), kI * S2 * j.b},
      {kI * S2 * j.b, -C2 * (1.0 - j.a_plus) + kI * SC * (yb + j.a_minus),
       C2 * (1.0 - j.a_plus) + S2 * (1.0 + yb), SC * j.b},
      {C2 * (1.0 + j.a_plus) + kI * SC * (yb - j.a_minus), -kI * S2 * j.b, SC * j.b,
       C2 * (1.0 + j.a_plus) + S2 * (1.0 - yb)},
  });
  display *= 0.5;
  return swap_pair_indices(display, 2);
}

states::CorrelatedClassSpec cesar_spec(const QubitScenarioParams& p) {
  p.validate();
  states::CorrelatedClassSpec spec;
  spec.n = 2;
  spec.d = 1;
  spec.p = {1.0};
  spec.w_block.weights = {p.p1, p.p2};
  spec.w_block.vectors = {sigma_y_plus(), sigma_y_minus()};
  spec.rho_env.push_back(diagonal_qubit(p.lam_plus_1));
  spec.rho_env.push_back(diagonal_qubit(p.lam_plus_2));
  spec.validate();
  return spec;
}

states::CorrelatedClassSpec discordant_spec(int n, const std::array<double, 3>& mu) {
  if (n < 2) throw std::invalid_argument("discordant_spec: need n >= 2");
  double sum = 0.0;
  for (double m : mu) {
    if (!(m >= 0.0)) throw std::invalid_argument("discordant_spec: negative weight");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("discordant_spec: weights must sum to one");

  states::CorrelatedClassSpec spec;
  spec.n = n;
  spec.d = n - 1 >= 1 ? n - 1 : 1;
  spec.p.assign(spec.d, 1.0 / spec.d);
  // Pure projectors on the first n-2 computational directions.
  for (int i = 0; i < spec.d - 1; ++i) spec.phi.push_back(basis_vector(n, i));

  // Mixed block on the last two dimensions: |0>, |1>, |+> relative to that
  // subspace.
  const int lo = n - 2;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> psi;
  psi.push_back(basis_vector(n, lo));
  psi.push_back(basis_vector(n, lo + 1));
  ComplexMatrix plus(n, 1);
  plus(lo, 0) = s;
  plus(lo + 1, 0) = s;
  psi.push_back(plus);

  ComplexMatrix w2(2, 2);
  w2(0, 0) = mu[0] + 0.5 * mu[2];
  w2(0, 1) = w2(1, 0) = 0.5 * mu[2];
  w2(1, 1) = mu[1] + 0.5 * mu[2];
  const auto w_eig = states::spectral_decompose(states::DensityMatrix(std::move(w2)));
  for (int j = 0; j < w_eig.size(); ++j) {
    ComplexMatrix embedded(n, 1);
    embedded(lo, 0) = w_eig.vectors[j](0, 0);
    embedded(lo + 1, 0) = w_eig.vectors[j](1, 0);
    spec.w_block.weights.push_back(w_eig.weights[j]);
    spec.w_block.vectors.push_back(std::move(embedded));
  }

  states::NonOrthogonalDecomposition psi_block;
  psi_block.weights = {mu[0], mu[1], mu[2]};
  psi_block.vectors = psi;
  // Zero-weight vectors are dropped along with their environment states.
  states::NonOrthogonalDecomposition kept;
  for (int k = 0; k < 3; ++k) {
    if (psi_block.weights[k] <= 0.0) continue;
    kept.weights.push_back(psi_block.weights[k]);
    kept.vectors.push_back(psi_block.vectors[k]);
  }
  spec.psi_block = kept;

  for (int i = 1; i < spec.d; ++i)
    spec.rho_env.push_back(diagonal_qubit(static_cast<double>(i + 1) / (i + 2)));
  for (int k = 0; k < kept.size(); ++k)
    spec.varrho_env.push_back(diagonal_qubit(1.0 / (k + 3)));
  spec.validate();
  return spec;
}

JpaParams figure_params() { return jpa_params(0.2, -0.4); }

std::array<double, 5> figure_times() {
  const double q = std::numbers::pi / 8.0;
  return {0.0, q, 2.0 * q, 3.0 * q, 4.0 * q};
}

NamedScenario named_scenario(const std::string& name) {
  NamedScenario out;
  out.name = name;
  if (name == "cesar" || name == "jpa" || name == "figure") {
    out.qubit = to_qubit_params(figure_params());
    out.spec = cesar_spec(*out.qubit);
    return out;
  }
  if (name == "discordant-uniform") {
    out.spec = discordant_spec(2, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    return out;
  }
  throw std::invalid_argument("unknown named case: " + name);
}

std::vector<std::string> named_scenario_list() {
  return {"cesar", "jpa", "figure", "discordant-uniform"};
}

}  // namespace corrmap::scenarios
