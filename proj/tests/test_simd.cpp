#include <doctest.h>

#include <random>

#include "dicke/errors.hpp"
#include "dicke/simd.hpp"
#include "oracles.hpp"

using namespace dicke;

namespace {

double rel_err(const CVector& a, const CVector& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

TEST_CASE("scalar cmatvec matches a naive complex product") {
  const std::size_t n = 7;
  const auto a = oracle::random_state(n * n, 1);
  const auto x = oracle::random_state(n, 2);
  CVector y(n);
  simd::cmatvec(simd::Backend::scalar, a, x, y);
  for (std::size_t j = 0; j < n; ++j) {
    cplx ref = 0.0;
    for (std::size_t m = 0; m < n; ++m) ref += a[j * n + m] * x[m];
    CHECK(std::abs(y[j] - ref) <= 1e-14 * std::abs(ref) + 1e-15);
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!simd::avx2_supported()) {
    MESSAGE("AVX2/FMA not available; equivalence test skipped");
    return;
  }
  // Odd and even sizes exercise the 4-, 2- and 1-element tails.
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 33u, 257u}) {
    CAPTURE(n);
    const auto a = oracle::random_state(n * n, 10 + n);
    const auto x = oracle::random_state(n, 20 + n);
    CVector ys(n), yv(n);
    simd::cmatvec(simd::Backend::scalar, a, x, ys);
    simd::cmatvec(simd::Backend::avx2, a, x, yv);
    CHECK(rel_err(yv, ys) < 1e-13);

    const auto ss = simd::sum_stats(simd::Backend::scalar, x);
    const auto sv = simd::sum_stats(simd::Backend::avx2, x);
    CHECK(std::abs(ss.sum - sv.sum) <= 1e-13 * (1.0 + std::abs(ss.sum)));
    CHECK(std::abs(ss.sum_abs2 - sv.sum_abs2) <= 1e-13 * ss.sum_abs2);

    CVector zs = oracle::random_state(n, 30 + n), zv = zs;
    const cplx s{0.3, -1.7};
    simd::caxpy(simd::Backend::scalar, s, x, zs);
    simd::caxpy(simd::Backend::avx2, s, x, zv);
    CHECK(rel_err(zv, zs) < 1e-14);
  }
}

TEST_CASE("backend selection") {
  const auto before = simd::active_backend();
  simd::set_active_backend(simd::Backend::scalar);
  CHECK(simd::active_backend() == simd::Backend::scalar);
  if (simd::avx2_supported()) {
    simd::set_active_backend(simd::Backend::avx2);
    CHECK(simd::active_backend() == simd::Backend::avx2);
  } else {
    CHECK_THROWS_AS(simd::set_active_backend(simd::Backend::avx2), InvalidParam);
  }
  simd::set_active_backend(before);
  CHECK(simd::to_string(simd::Backend::avx2) == "avx2");
}

TEST_CASE("size mismatches are rejected") {
  CVector a(9), x(3), y(2);
  CHECK_THROWS_AS(simd::cmatvec(a, x, y), DimensionMismatch);
  CHECK_THROWS_AS(simd::caxpy(1.0, x, y), DimensionMismatch);
}
