#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/tdbasis.hpp"
#include "dicke/witness.hpp"
#include "oracles.hpp"

using namespace dicke;

namespace {

double sum_abs2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

CVector scaled_state(std::size_t n, std::uint64_t seed, double total) {
  auto v = oracle::random_state(n, seed);
  const double f = std::sqrt(total / sum_abs2(v));
  for (auto& x : v) x *= f;
  return v;
}

}  // namespace

TEST_CASE("ground state sits on the boundary") {
  const CVector zero(10);
  const auto m = spin_moments(zero);
  CHECK(m.jz == -5.0);
  CHECK(m.var_x == 2.5);
  CHECK(m.var_y == 2.5);
  CHECK(m.var_z == 0.0);
  CHECK(m.c_value == 0.5);
  const auto r = evaluate_inequalities(m, 10);
  CHECK(r.ss2_lhs == 5.0);
  CHECK_FALSE(r.ss2_violated);
}

TEST_CASE("antisymmetric pair is entangled") {
  const cplx b{0.1, 0.0};
  const CVector beta{b, -b};
  const auto m = spin_moments(beta);
  CHECK(m.var_x + m.var_y + m.var_z == doctest::Approx(0.9996).epsilon(1e-14));
  CHECK(m.c_value == doctest::Approx(0.4998).epsilon(1e-14));
  CHECK(evaluate_inequalities(m, 2).ss2_violated);
}

TEST_CASE("closed forms match dense operators") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      CAPTURE(n);
      CAPTURE(seed);
      const auto beta = scaled_state(n, 100 * n + seed, 0.05 + 0.3 * static_cast<double>(seed));
      std::vector<double> phases(n);
      for (auto& p : phases) p = phase(rng);
      const auto m = spin_moments(beta);
      const auto d = oracle::dense_spin_moments(beta, m.alpha, phases);
      CHECK(std::abs(m.jx - d.jx) < 1e-12);
      CHECK(std::abs(m.jy - d.jy) < 1e-12);
      CHECK(std::abs(m.jz - d.jz) < 1e-12);
      CHECK(std::abs(m.jx2 - d.jx2) < 1e-12);
      CHECK(std::abs(m.jy2 - d.jy2) < 1e-12);
      CHECK(std::abs(m.jz2 - d.jz2) < 1e-12);

      // An explicit, unnormalized α changes only the first moments.
      const cplx alpha{0.7, -0.4};
      const auto ma = spin_moments(beta, alpha);
      const auto da = oracle::dense_spin_moments(beta, alpha, phases);
      CHECK(std::abs(ma.jx - da.jx) < 1e-12);
      CHECK(std::abs(ma.jy - da.jy) < 1e-12);
    }
  }
}

TEST_CASE("moment invariants") {
  for (std::size_t n : {2u, 9u, 250u}) {
    const auto beta = scaled_state(n, n, 0.07);
    const auto m = spin_moments(beta);
    CHECK(m.jx2 == m.jy2);
    CHECK(m.var_x >= 0.0);
    CHECK(m.var_y >= 0.0);
    CHECK(m.var_z >= 0.0);
    CHECK(std::abs(m.alpha) == doctest::Approx(std::sqrt(1.0 - 0.07)));

    // Σvar = N/2 + N²·mean|β|²²·(N f_sr − 1)
    const double nn = static_cast<double>(n);
    const double f_sr = *project(beta, false).f_sr;
    const double ident = 0.5 * nn + nn * nn * m.mean_abs2 * m.mean_abs2 * (nn * f_sr - 1.0);
    CHECK(std::abs(m.var_x + m.var_y + m.var_z - ident) <= 1e-12 * nn);
  }
}

TEST_CASE("witness requires a physical state") {
  CVector big(3, cplx{0.7, 0.0});
  CHECK_THROWS_AS(spin_moments(big), InvalidParam);
  CHECK_THROWS_AS(spin_moments(CVector{}), InvalidParam);
  CHECK_NOTHROW(spin_moments(big, cplx{1.0}));
}

TEST_CASE("SS1 and SS4 are never violated") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed * 7;
    const auto beta = scaled_state(n, seed, 0.001 * static_cast<double>(seed + 1));
    const auto m = spin_moments(beta);
    const auto r = evaluate_inequalities(m, n);
    const double nn = static_cast<double>(n);
    CHECK(r.ss1_slack >= -1e-14);
    CHECK(r.ss4_slack >= -1e-14);
    CHECK(std::abs(r.ss1_slack - nn * nn * m.sigma_beta_sq) <= 1e-10);
    CHECK(r.ss1_crosscheck <= 1e-10);

    // Direct SS4 with normalized α: (N−1)·Σ|β|²·|Σβ|².
    cplx sum{};
    for (const auto& b : beta) sum += b;
    CHECK(r.ss4_direct == doctest::Approx((nn - 1.0) * sum_abs2(beta) * std::norm(sum)).epsilon(1e-9));
    CHECK(r.ss4_direct >= -1e-10);
  }
}

TEST_CASE("symmetric states saturate SS1") {
  const CVector beta(12, cplx{0.02, -0.01});
  const auto m = spin_moments(beta);
  const auto r = evaluate_inequalities(m, 12);
  CHECK(std::abs(r.ss1_slack) < 1e-12);
  CHECK(r.ss4_slack > 0.0);
  CHECK_FALSE(r.ss2_violated);
  CHECK(r.ss3_outside_linear_regime);
}

TEST_CASE("pinned ground amplitude loses the boundary") {
  // With α = 1 the variance sum reduces to N/2 − S², below N/2 for every
  // excited state; the normalized amplitude keeps symmetric states above.
  const CVector beta(12, cplx{0.02, -0.01});
  const auto pinned = spin_moments(beta, cplx{1.0});
  const double s = sum_abs2(beta);
  CHECK(pinned.var_x + pinned.var_y + pinned.var_z == doctest::Approx(6.0 - s * s).epsilon(1e-14));
  CHECK(spin_moments(beta).c_value > 0.5);
}

TEST_CASE("threshold equivalence on synthetic samples") {
  SUBCASE("symmetric state: both sides positive") {
    const CVector beta(8, cplx{0.03, 0.0});
    const auto m = spin_moments(beta);
    const auto d = project(beta, false);
    CHECK(m.c_value > 0.5);
    CHECK(8.0 * *d.f_sr - 1.0 > 0.0);
    const ThresholdSample s{0.0, d.total, m.c_value, d.f_sr};
    const auto rep = threshold_equivalence_check(std::span(&s, 1), 8, 0.01);
    CHECK(rep.passed);
    CHECK(rep.checked == 1);
  }
  SUBCASE("antisymmetric pair: both sides negative") {
    const CVector beta{cplx{0.1}, cplx{-0.1}};
    const auto m = spin_moments(beta);
    const auto d = project(beta, false);
    CHECK(m.c_value < 0.5);
    CHECK(2.0 * *d.f_sr - 1.0 < 0.0);
    const ThresholdSample s{0.0, d.total, m.c_value, d.f_sr};
    CHECK(threshold_equivalence_check(std::span(&s, 1), 2, 0.01).passed);
  }
  SUBCASE("rotation from symmetric to antisymmetric") {
    // β(t) = a·[cos θ |+⟩ + sin θ |1⟩] with θ = t sweeps through f_sr = 1/N.
    const std::size_t n = 20;
    std::vector<ThresholdSample> samples;
    const auto plus = oracle::td_vector(n, 0);
    const auto one = oracle::td_vector(n, 1);
    for (int i = 0; i <= 150; ++i) {
      const double t = 0.01 * i;
      CVector beta(n);
      for (std::size_t j = 0; j < n; ++j)
        beta[j] = 0.05 * (std::cos(t) * plus[static_cast<Eigen::Index>(j)] + std::sin(t) * one[static_cast<Eigen::Index>(j)]);
      const auto m = spin_moments(beta);
      const auto d = project(beta, false);
      samples.push_back({t, d.total, m.c_value, d.f_sr});
    }
    samples.push_back({2.0, 0.0, 0.5, std::nullopt});  // skipped: no excitation
    const auto rep = threshold_equivalence_check(samples, n, 0.01);
    CHECK(rep.checked == 151);
    CHECK(rep.mismatches == 0);
    REQUIRE(rep.c_crossing);
    REQUIRE(rep.f_crossing);
    // cos²θ = 1/N
    CHECK(*rep.f_crossing == doctest::Approx(std::acos(1.0 / std::sqrt(20.0))).epsilon(1e-3));
    CHECK(rep.crossings_agree);
    CHECK(rep.passed);
  }
  SUBCASE("sign mismatch is reported") {
    const std::vector<ThresholdSample> bad{{0.0, 0.01, 0.6, 0.01}, {1.0, 0.01, 0.6, 0.5}};
    const auto rep = threshold_equivalence_check(bad, 10, 0.01);
    CHECK(rep.mismatches == 1);
    CHECK(rep.mismatch_times == std::vector<double>{0.0});
    CHECK_FALSE(rep.passed);
  }
}

TEST_CASE("first downcrossing") {
  const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
  CHECK(*first_downcrossing(t, std::vector<double>{3.0, 2.0, 0.0, -1.0}, 1.0) == doctest::Approx(1.5));
  CHECK_FALSE(first_downcrossing(t, std::vector<double>{0.0, 0.5, 0.7, 0.9}, 1.0));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(*first_downcrossing(t, std::vector<double>{2.0, nan, 2.0, 0.0}, 1.0) == doctest::Approx(2.5));
  // Starting on the threshold counts as above it.
  CHECK(*first_downcrossing(t, std::vector<double>{1.0, 0.0, 2.0, 0.0}, 1.0) == 0.0);
}

TEST_CASE("boundary states do not register as mismatches") {
  // One atom: C = 1/2 and N·f_sr = 1 analytically; rounding must not
  // split the signs.
  std::vector<ThresholdSample> samples;
  for (int i = 1; i <= 200; ++i) {
    const CVector beta{cplx{0.001 * i, -0.0007 * i}};
    const auto m = spin_moments(beta);
    samples.push_back({0.01 * i, std::norm(beta[0]), m.c_value, project(beta, false).f_sr});
  }
  const auto rep = threshold_equivalence_check(samples, 1, 0.01);
  CHECK(rep.mismatches == 0);
  CHECK_FALSE(rep.c_crossing);
  CHECK(rep.passed);
}
