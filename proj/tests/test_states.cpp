#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corrmap/linalg.hpp"
#include "corrmap/scenarios.hpp"
#include "corrmap/states.hpp"
#include "test_support.hpp"

using namespace corrmap;
using states::CorrelatedClassSpec;
using states::DensityMatrix;
using states::NonOrthogonalDecomposition;
using states::OrthogonalDecomposition;

namespace {

const cplx kI(0.0, 1.0);

OrthogonalDecomposition uniform_case_ortho() {
  const double s = 1.0 / std::sqrt(2.0);
  OrthogonalDecomposition ortho;
  ortho.weights = {2.0 / 3.0, 1.0 / 3.0};
  ortho.vectors = {ComplexMatrix::column({s, s}), ComplexMatrix::column({s, -s})};
  return ortho;
}

NonOrthogonalDecomposition uniform_case_nonortho() {
  const double s = 1.0 / std::sqrt(2.0);
  NonOrthogonalDecomposition nonortho;
  nonortho.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  nonortho.vectors = {ComplexMatrix::column({1.0, 0.0}),
                      ComplexMatrix::column({0.0, 1.0}),
                      ComplexMatrix::column({s, s})};
  return nonortho;
}

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix(0.5 * ComplexMatrix::identity(2)));
  // not Hermitian
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::from_rows({{0.5, 1.0}, {0.0, 0.5}})),
                  std::invalid_argument);
  // wrong trace
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(2)), std::invalid_argument);
  // indefinite
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::from_rows({{1.5, 0.0}, {0.0, -0.5}})),
                  std::invalid_argument);
}

TEST_CASE("spectral_decompose of a pure state keeps a single component") {
  const auto decomp = states::spectral_decompose(
      DensityMatrix(projector(basis_vector(2, 0))));
  REQUIRE(decomp.size() == 1);
  CHECK(decomp.weights[0] == doctest::Approx(1.0));
  CHECK(std::abs(decomp.vectors[0](0, 0) - cplx(1.0)) < 1e-14);
}

TEST_CASE("spectral_decompose of the maximally mixed state reconstructs exactly") {
  const DensityMatrix rho(0.5 * ComplexMatrix::identity(2));
  const auto decomp = states::spectral_decompose(rho);
  REQUIRE(decomp.size() == 2);
  CHECK(decomp.weights[0] == doctest::Approx(0.5));
  CHECK(decomp.weights[1] == doctest::Approx(0.5));
  CHECK(linalg::frobenius_distance(decomp.assemble(), rho.mat()) < 1e-14);
}

TEST_CASE("spectral_decompose of the uniform-case mixed state") {
  const ComplexMatrix w =
      ComplexMatrix::from_rows({{0.5, 1.0 / 6.0}, {1.0 / 6.0, 0.5}});
  const auto decomp = states::spectral_decompose(DensityMatrix(w));
  REQUIRE(decomp.size() == 2);
  CHECK(decomp.weights[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(decomp.weights[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(decomp.vectors[0](0, 0) - cplx(s)) < 1e-13);
  CHECK(std::abs(decomp.vectors[0](1, 0) - cplx(s)) < 1e-13);
  CHECK(std::abs(decomp.vectors[1](0, 0) - cplx(s)) < 1e-13);
  CHECK(std::abs(decomp.vectors[1](1, 0) + cplx(s)) < 1e-13);
}

TEST_CASE("ghjw_link of a decomposition with itself is the identity") {
  OrthogonalDecomposition ortho = uniform_case_ortho();
  NonOrthogonalDecomposition same;
  same.weights = ortho.weights;
  same.vectors = ortho.vectors;
  const auto link = states::ghjw_link(ortho, same);
  CHECK(linalg::frobenius_distance(link.u, ComplexMatrix::identity(2)) < 1e-12);
  CHECK(link.lambda_at(0, 0) == doctest::Approx(1.0));
  CHECK(link.lambda_at(1, 1) == doctest::Approx(1.0));
  CHECK(link.lambda_at(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("ghjw_link reproduces the uniform-case mixing matrix") {
  const auto link = states::ghjw_link(uniform_case_ortho(), uniform_case_nonortho());
  REQUIRE(link.r() == 3);
  REQUIRE(link.m() == 2);
  const double expected[3][2] = {{0.25, 0.5}, {0.25, 0.5}, {0.5, 0.0}};
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(link.lambda_at(k, j) - expected[k][j]) < 1e-12);
  // Weight consistency spelled out for the first component.
  CHECK(0.25 * (2.0 / 3.0) + 0.5 * (1.0 / 3.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ghjw_link rejects decompositions of different states") {
  OrthogonalDecomposition ortho = uniform_case_ortho();
  NonOrthogonalDecomposition other;
  other.weights = {0.5, 0.5};
  other.vectors = {ComplexMatrix::column({1.0, 0.0}), ComplexMatrix::column({0.0, 1.0})};
  CHECK_THROWS_WITH_AS(states::ghjw_link(ortho, other),
                       doctest::Contains("different states"), std::invalid_argument);
}

TEST_CASE("ghjw_link invariants over randomized decomposition pairs") {
  corrmap::rng::Stream rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + rng.uniform_int(0, 2);
    const int n = m + rng.uniform_int(0, 2);
    const int r = m + rng.uniform_int(0, 2);
    test_support::SpecShape shape{n, n - m + 1, r, 2};
    const auto spec = test_support::random_class_two_spec(rng, shape);
    const auto link = states::ghjw_link(spec.w_block, *spec.psi_block);
    CHECK(linalg::unitarity_defect(link.u) < 1e-10);
    for (int k = 0; k < link.r(); ++k) {
      double mixed = 0.0;
      for (int j = 0; j < link.m(); ++j)
        mixed += link.lambda_at(k, j) * spec.w_block.weights[j];
      CHECK(std::abs(mixed - spec.psi_block->weights[k]) < 1e-10);
    }
    for (int j = 0; j < link.m(); ++j) {
      double colsum = 0.0;
      for (int k = 0; k < link.r(); ++k) colsum += link.lambda_at(k, j);
      CHECK(std::abs(colsum - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("assemble_composite in the factorized limit is a product state") {
  corrmap::rng::Stream rng(12);
  CorrelatedClassSpec spec;
  spec.n = 2;
  spec.d = 1;
  spec.p = {1.0};
  spec.w_block.weights = {1.0};
  spec.w_block.vectors = {rng.random_state_vector(2)};
  NonOrthogonalDecomposition psi;
  psi.weights = {1.0};
  psi.vectors = {spec.w_block.vectors[0]};
  spec.psi_block = psi;
  spec.varrho_env.push_back(test_support::random_density(rng, 2));
  const auto composite = states::assemble_composite(spec);
  const ComplexMatrix expected = linalg::kron(projector(spec.w_block.vectors[0]),
                                              spec.varrho_env[0].mat());
  CHECK(linalg::frobenius_distance(composite.mat(), expected) < 1e-12);
}

TEST_CASE("qubit scenario composite has the projector mixture as marginal") {
  scenarios::QubitScenarioParams params;
  params.p1 = 0.3;
  params.p2 = 0.7;
  params.lam_plus_1 = 0.6;
  params.lam_minus_1 = 0.4;
  params.lam_plus_2 = 0.2;
  params.lam_minus_2 = 0.8;
  const auto spec = scenarios::cesar_spec(params);
  const auto composite = states::assemble_composite(spec);
  REQUIRE(composite.dim() == 4);
  const ComplexMatrix reduced = linalg::partial_trace_env(composite.mat(), 2, 2);
  ComplexMatrix expected(2, 2);
  expected.add_scaled(params.p1, projector(spec.w_block.vectors[0]));
  expected.add_scaled(params.p2, projector(spec.w_block.vectors[1]));
  CHECK(linalg::frobenius_distance(reduced, expected) < 1e-12);
}

TEST_CASE("the Bloch-parameterized composite assembles to its closed form") {
  const auto jpa = scenarios::jpa_params(0.2, -0.4);
  const auto spec = scenarios::cesar_spec(scenarios::to_qubit_params(jpa));
  const auto composite = states::assemble_composite(spec);

  const ComplexMatrix sy = ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}});
  const ComplexMatrix sz = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  ComplexMatrix expected =
      linalg::kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
  expected.add_scaled(jpa.y, linalg::kron(sy, ComplexMatrix::identity(2)));
  expected.add_scaled(-jpa.chi, linalg::kron(sy, sz));
  expected *= 0.25;
  CHECK(linalg::frobenius_distance(composite.mat(), expected) < 1e-12);
}

TEST_CASE("marginal equals the partial trace of the assembled composite") {
  corrmap::rng::Stream rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    test_support::SpecShape shape;
    shape.n = 2 + rng.uniform_int(0, 2);
    shape.d = 1 + rng.uniform_int(0, std::min(2, shape.n - 1));
    shape.r = shape.n - shape.d + 1 + rng.uniform_int(0, 1);
    shape.dim_e = 2 + rng.uniform_int(0, 1);
    const auto spec = test_support::random_class_two_spec(rng, shape);
    const auto composite = states::assemble_composite(spec);
    const auto reduced =
        linalg::partial_trace_env(composite.mat(), spec.n, shape.dim_e);
    CHECK(linalg::frobenius_distance(reduced, states::marginal(spec).mat()) < 1e-12);
  }
}

TEST_CASE("class II composites and their class-I siblings share the marginal") {
  corrmap::rng::Stream rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    test_support::SpecShape shape{3, 2, 3, 2};
    const auto spec2 = test_support::random_class_two_spec(rng, shape);
    CorrelatedClassSpec spec1 = spec2;
    spec1.psi_block.reset();
    spec1.varrho_env.clear();
    for (int j = 0; j < spec1.w_block.size(); ++j)
      spec1.rho_env.push_back(test_support::random_density(rng, shape.dim_e));
    spec1.validate();
    CHECK(linalg::frobenius_distance(states::marginal(spec1).mat(),
                                     states::marginal(spec2).mat()) < 1e-12);
  }
}

TEST_CASE("domain members commute and interpolate the marginal") {
  corrmap::rng::Stream rng(15);
  test_support::SpecShape shape{3, 2, 3, 2};
  const auto spec = test_support::random_class_two_spec(rng, shape);

  CHECK(linalg::frobenius_distance(states::domain_member(spec, spec.p).mat(),
                                   states::marginal(spec).mat()) < 1e-14);
  const auto w_only = states::domain_member(spec, {0.0, 1.0});
  CHECK(linalg::frobenius_distance(w_only.mat(), spec.w_block.assemble()) < 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    const auto a = states::domain_member(spec, rng.simplex(spec.d));
    const auto b = states::domain_member(spec, rng.simplex(spec.d));
    CHECK(linalg::commutator(a.mat(), b.mat()).frobenius_norm() < 1e-12);
  }
  CHECK_THROWS_AS(states::domain_member(spec, {0.5, 0.2}), std::invalid_argument);
}

TEST_CASE("class spec validation rejects inconsistent blocks") {
  corrmap::rng::Stream rng(16);
  test_support::SpecShape shape{3, 2, 3, 2};
  const auto spec = test_support::random_class_two_spec(rng, shape);
  auto broken = spec;
  broken.psi_block->vectors[0] = rng.random_state_vector(3);
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

  auto missing_env = spec;
  missing_env.varrho_env.pop_back();
  CHECK_THROWS_AS(missing_env.validate(), std::invalid_argument);
}
