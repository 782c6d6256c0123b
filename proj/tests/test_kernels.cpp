#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "corrmap/kernels.hpp"
#include "corrmap/rng.hpp"

using corrmap::cplx;
namespace kernels = corrmap::kernels;

namespace {

std::vector<cplx> random_buffer(corrmap::rng::Stream& rng, std::size_t count) {
  std::vector<cplx> out(count);
  for (auto& v : out) v = rng.gaussian_cplx();
  return out;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Compare every backend operation against the scalar reference on random
// shapes, including odd sizes that exercise the vector tails.
void check_backend_equivalence(const kernels::Backend& candidate) {
  const kernels::Backend& ref = kernels::scalar_backend();
  corrmap::rng::Stream rng(0xC0FFEE);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.uniform_int(0, 12);
    const std::size_t k = 1 + rng.uniform_int(0, 12);
    const std::size_t n = 1 + rng.uniform_int(0, 12);
    const auto a = random_buffer(rng, m * k);
    const auto b = random_buffer(rng, k * n);
    const auto bt = random_buffer(rng, n * k);

    std::vector<cplx> c_ref(m * n), c_new(m * n);
    ref.matmul_nn(a.data(), b.data(), c_ref.data(), m, k, n);
    candidate.matmul_nn(a.data(), b.data(), c_new.data(), m, k, n);
    CHECK(max_abs_diff(c_ref, c_new) < 1e-12);

    ref.matmul_nc(a.data(), bt.data(), c_ref.data(), m, k, n);
    candidate.matmul_nc(a.data(), bt.data(), c_new.data(), m, k, n);
    CHECK(max_abs_diff(c_ref, c_new) < 1e-12);

    const cplx s = rng.gaussian_cplx();
    auto y_ref = random_buffer(rng, m * k);
    auto y_new = y_ref;
    ref.axpy(s, a.data(), y_ref.data(), a.size());
    candidate.axpy(s, a.data(), y_new.data(), a.size());
    CHECK(max_abs_diff(y_ref, y_new) < 1e-12);

    std::vector<cplx> z_ref(a.size()), z_new(a.size());
    ref.scale(s, a.data(), z_ref.data(), a.size());
    candidate.scale(s, a.data(), z_new.data(), a.size());
    CHECK(max_abs_diff(z_ref, z_new) < 1e-12);

    CHECK(candidate.sqnorm(a.data(), a.size()) ==
          doctest::Approx(ref.sqnorm(a.data(), a.size())).epsilon(1e-13));
    CHECK(candidate.sqnorm_diff(a.data(), y_ref.data(), a.size()) ==
          doctest::Approx(ref.sqnorm_diff(a.data(), y_ref.data(), a.size()))
              .epsilon(1e-13));
  }
}

}  // namespace

TEST_CASE("scalar backend is self-consistent on a known product") {
  // (1+i)*(2-i) = 3+i
  const cplx a[1] = {cplx(1.0, 1.0)};
  const cplx b[1] = {cplx(2.0, -1.0)};
  cplx c[1];
  kernels::scalar_backend().matmul_nn(a, b, c, 1, 1, 1);
  CHECK(std::abs(c[0] - cplx(3.0, 1.0)) < 1e-15);
  kernels::scalar_backend().matmul_nc(a, b, c, 1, 1, 1);
  // (1+i)*conj(2-i) = (1+i)*(2+i) = 1+3i
  CHECK(std::abs(c[0] - cplx(1.0, 3.0)) < 1e-15);
}

#if defined(CORRMAP_HAVE_AVX2)
TEST_CASE("avx2 backend matches the scalar reference") {
  if (!kernels::cpu_supports_avx2()) {
    MESSAGE("CPU lacks AVX2; skipping");
    return;
  }
  check_backend_equivalence(kernels::avx2_backend());
}
#endif

TEST_CASE("active backend matches the scalar reference") {
  check_backend_equivalence(kernels::active_backend());
}

TEST_CASE("active backend reports a known name") {
  const std::string name = kernels::active_backend().name;
  CHECK((name == "scalar" || name == "avx2"));
}
