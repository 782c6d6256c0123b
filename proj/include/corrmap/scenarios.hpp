#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "corrmap/complex_matrix.hpp"
#include "corrmap/states.hpp"

namespace corrmap::scenarios {

// Two-qubit reference scenario: a pair of system projectors onto the
// sigma_y eigenvectors, each correlated with an environment qubit diagonal
// in the computational basis.
struct QubitScenarioParams {
  double p1 = 0.5;
  double p2 = 0.5;
  double lam_plus_1 = 0.5;
  double lam_minus_1 = 0.5;
  double lam_plus_2 = 0.5;
  double lam_minus_2 = 0.5;

  void validate() const;
};

// Constants derived from the environment eigenvalues; mu_plus + mu_minus
// and chi_plus + kappa_plus both equal one.
struct DerivedConstants {
  double sigma_plus = 0.0, sigma_minus = 0.0;
  double delta_plus = 0.0, delta_minus = 0.0;
  double kappa_script_plus = 0.0, kappa_script_minus = 0.0;
  double mu_plus = 0.0, mu_minus = 0.0;
  double chi_plus = 0.0, chi_minus = 0.0;
  double kappa_plus = 0.0, kappa_minus = 0.0;
};

DerivedConstants derived_constants(const QubitScenarioParams& p);

// Bloch-style parameterization of the same family; requires |y| <= 1,
// chi^2 <= 1 - y^2 and |y| + |chi| <= 1 so the derived roots are real.
struct JpaParams {
  double y = 0.0;
  double chi = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;
  double b = 0.0;
};

JpaParams jpa_params(double y, double chi);
QubitScenarioParams to_qubit_params(const JpaParams& j);

// Composite two-qubit unitary exp-product of the three symmetric Pauli
// couplings at angle omega_t each; periodic with period pi in 2*omega_t up
// to a global phase.
ComplexMatrix qubit_unitary(double omega_t);

// Equivalent compact form cos(2wt) 1 - i sin(2wt) SWAP; differs from
// qubit_unitary by a global phase only.
ComplexMatrix qubit_unitary_compact(double omega_t);

// Frobenius distance after rotating both matrices so their
// largest-magnitude entry is real positive.
double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Closed-form channel matrices for the qubit scenario, as functions of the
// dimensionless time 2*omega*t. Index conventions follow
// analysis::ChannelRep.
ComplexMatrix analytic_lambda_phi1(const DerivedConstants& c, double two_omega_t);
ComplexMatrix analytic_lambda_phi2(const DerivedConstants& c, double two_omega_t);
ComplexMatrix analytic_choi_phi1(const DerivedConstants& c, double two_omega_t);
ComplexMatrix analytic_choi_phi2(const DerivedConstants& c, double two_omega_t);
ComplexMatrix jpa_choi(const JpaParams& j, double two_omega_t);

// Class-I spec realizing the qubit scenario (single mixed block carrying
// both sigma_y projectors).
states::CorrelatedClassSpec cesar_spec(const QubitScenarioParams& p);

// Class-II spec with three non-orthogonal vectors |0>, |1>, |+> on the
// last two dimensions and default diagonal environment qubits.
states::CorrelatedClassSpec discordant_spec(int n, const std::array<double, 3>& mu);

struct NamedScenario {
  std::string name;
  states::CorrelatedClassSpec spec;
  std::optional<QubitScenarioParams> qubit;
};

// Known names: cesar, jpa, figure, discordant-uniform.
NamedScenario named_scenario(const std::string& name);
std::vector<std::string> named_scenario_list();

JpaParams figure_params();

// Dimensionless times 2*omega*t used for the exported sphere snapshots.
std::array<double, 5> figure_times();

}  // namespace corrmap::scenarios
