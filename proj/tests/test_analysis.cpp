#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corrmap/analysis.hpp"
#include "corrmap/linalg.hpp"
#include "corrmap/scenarios.hpp"
#include "test_support.hpp"

using namespace corrmap;
using channels::KrausLabel;

namespace {

const cplx kI(0.0, 1.0);

channels::KrausSet depolarizing_set() {
  std::vector<ComplexMatrix> ops;
  ops.push_back(0.5 * ComplexMatrix::identity(2));
  ops.push_back(0.5 * ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  ops.push_back(0.5 * ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}}));
  ops.push_back(0.5 * ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}));
  return channels::make_kraus_set(std::move(ops), KrausLabel::Custom, 0.0);
}

}  // namespace

TEST_CASE("identity channel representation") {
  const auto ks = channels::make_kraus_set({ComplexMatrix::identity(2)},
                                           KrausLabel::Custom, 0.0);
  const auto rep = analysis::rep_from_kraus(ks);
  CHECK(linalg::frobenius_distance(rep.lambda, ComplexMatrix::identity(4)) < 1e-14);

  // Choi has ones at the four corners and eigenvalues (2, 0, 0, 0).
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool corner = (r == 0 || r == 3) && (c == 0 || c == 3);
      CHECK(std::abs(rep.choi(r, c) - (corner ? cplx(1.0) : cplx(0.0))) < 1e-14);
    }
  const auto eig = linalg::hermitian_eig(rep.choi);
  CHECK(eig.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(0.0));
}

TEST_CASE("reshuffle is an involution") {
  corrmap::rng::Stream rng(41);
  for (int dim = 2; dim <= 4; ++dim) {
    const ComplexMatrix m = rng.gaussian_matrix(dim * dim, dim * dim);
    const ComplexMatrix twice = analysis::reshuffle(analysis::reshuffle(m, dim), dim);
    CHECK(linalg::frobenius_distance(m, twice) == 0.0);
  }
}

TEST_CASE("cp_report flags the transpose map as non-CP") {
  const auto identity_rep = analysis::rep_from_kraus(
      channels::make_kraus_set({ComplexMatrix::identity(2)}, KrausLabel::Custom, 0.0));
  const auto id_report = analysis::cp_report(identity_rep);
  CHECK(id_report.min_choi_eig == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(id_report.is_cp);
  CHECK(id_report.tp_defect < 1e-12);

  const auto transpose_rep = analysis::rep_from_map(
      2, [](const ComplexMatrix& x) { return x.transpose(); });
  const auto report = analysis::cp_report(transpose_rep);
  CHECK(report.min_choi_eig == doctest::Approx(-1.0));
  CHECK_FALSE(report.is_cp);
  CHECK(report.tp_defect < 1e-12);
}

TEST_CASE("Kraus-built channels have trace-n positive Choi matrices") {
  corrmap::rng::Stream rng(42);
  for (int trial = 0; trial < 15; ++trial) {
    test_support::SpecShape shape{2 + rng.uniform_int(0, 1), 1, 0, 2};
    shape.d = 1 + rng.uniform_int(0, shape.n - 1);
    const auto spec = test_support::random_class_one_spec(rng, shape);
    const ComplexMatrix u = rng.random_unitary(shape.n * 2);
    const auto rep =
        analysis::rep_from_kraus(channels::build_phi2_kraus(spec, u, 0.0));
    CHECK(std::abs(rep.choi.trace() - cplx(shape.n)) < 1e-10);
    const auto report = analysis::cp_report(rep);
    CHECK(report.min_choi_eig > -1e-10);
    CHECK(report.tp_defect < 1e-10);
    CHECK(linalg::hermiticity_defect(rep.choi) < 1e-10);
  }
}

TEST_CASE("channel distances with and without a domain") {
  const auto params = scenarios::to_qubit_params(scenarios::figure_params());
  const auto spec = scenarios::cesar_spec(params);
  const double two_wt = 0.8;
  const ComplexMatrix u = scenarios::qubit_unitary(two_wt / 2.0);
  const auto rep1 = analysis::rep_from_kraus(channels::build_phi1_kraus(spec, u, two_wt));
  const auto rep2 = analysis::rep_from_kraus(channels::build_phi2_kraus(spec, u, two_wt));

  CHECK(analysis::channel_distance(rep1, rep1) == 0.0);
  CHECK(analysis::channel_distance(rep1, rep2, test_support::diagonal_domain_samples(
                                                   spec, 10)) < 1e-10);
  CHECK(analysis::channel_distance(rep1, rep2) > 1e-6);
}

TEST_CASE("bloch image of a unitary channel stays on the sphere") {
  corrmap::rng::Stream rng(43);
  const auto ks = channels::make_kraus_set({rng.random_unitary(2)},
                                           KrausLabel::Custom, 0.0);
  const auto samples = analysis::bloch_image(analysis::rep_from_kraus(ks), 128);
  REQUIRE(samples.size() == 128);
  for (const auto& s : samples) {
    const double rin = std::sqrt(s.in[0] * s.in[0] + s.in[1] * s.in[1] + s.in[2] * s.in[2]);
    const double rout =
        std::sqrt(s.out[0] * s.out[0] + s.out[1] * s.out[1] + s.out[2] * s.out[2]);
    CHECK(rin == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rout == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("bloch image of the y pinching keeps only the y component") {
  const auto spec =
      scenarios::cesar_spec(scenarios::to_qubit_params(scenarios::figure_params()));
  const auto rep = analysis::rep_from_map(2, [&](const ComplexMatrix& x) {
    return channels::diagonalizing_projection(spec, x);
  });
  for (const auto& s : analysis::bloch_image(rep, 64)) {
    CHECK(std::abs(s.out[0]) < 1e-12);
    CHECK(std::abs(s.out[1] - s.in[1]) < 1e-12);
    CHECK(std::abs(s.out[2]) < 1e-12);
  }
}

TEST_CASE("bloch image of the depolarizing channel collapses to the origin") {
  const auto rep = analysis::rep_from_kraus(depolarizing_set());
  for (const auto& s : analysis::bloch_image(rep, 32)) {
    CHECK(std::abs(s.out[0]) < 1e-14);
    CHECK(std::abs(s.out[1]) < 1e-14);
    CHECK(std::abs(s.out[2]) < 1e-14);
  }
}

TEST_CASE("bloch image never leaves the unit ball for trace-preserving channels") {
  corrmap::rng::Stream rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    test_support::SpecShape shape{2, 1, 2, 2};
    const auto spec = test_support::random_class_two_spec(rng, shape);
    const ComplexMatrix u = rng.random_unitary(4);
    const auto rep = analysis::rep_from_kraus(channels::build_phiII_kraus(spec, u, 0.0));
    for (const auto& s : analysis::bloch_image(rep, 60)) {
      const double rout =
          std::sqrt(s.out[0] * s.out[0] + s.out[1] * s.out[1] + s.out[2] * s.out[2]);
      CHECK(rout <= 1.0 + 1e-10);
    }
  }
  CHECK_THROWS_AS(analysis::bloch_image(
                      analysis::rep_from_map(3, [](const ComplexMatrix& x) { return x; }),
                      16),
                  std::invalid_argument);
}
