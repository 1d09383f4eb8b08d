#include "dicke/witness.hpp"

#include <cmath>

#include "dicke/errors.hpp"
#include "dicke/simd.hpp"

namespace dicke {

SpinMomentSet spin_moments(std::span<const cplx> beta) {
  const double total = simd::sum_stats(beta).sum_abs2;
  if (total > 1.0) throw InvalidParam("spin_moments: sum |beta|^2 exceeds 1");
  return spin_moments(beta, cplx{std::sqrt(1.0 - total), 0.0});
}

SpinMomentSet spin_moments(std::span<const cplx> beta, cplx alpha) {
  const std::size_t n = beta.size();
  if (n == 0) throw InvalidParam("spin_moments: empty state");
  const auto stats = simd::sum_stats(beta);
  const double nn = static_cast<double>(n);
  const double s = stats.sum_abs2;          // Σ|β_j|²
  const double b2 = std::norm(stats.sum);   // |Σβ_j|²
  const cplx proj = std::conj(alpha) * stats.sum;

  SpinMomentSet m;
  m.n = n;
  m.alpha = alpha;
  m.jx = proj.real();
  m.jy = -proj.imag();
  m.jz = -0.5 * nn + s;
  m.jx2 = 0.25 * nn + 0.5 * b2 - 0.5 * s;
  m.jy2 = m.jx2;
  m.jz2 = 0.25 * nn * nn - (nn - 1.0) * s;
  m.var_x = m.jx2 - m.jx * m.jx;
  m.var_y = m.jy2 - m.jy * m.jy;
  m.var_z = s * (1.0 - s);
  m.c_value = (m.var_x + m.var_y + m.var_z) / nn;
  m.mean_abs2 = s / nn;
  m.mean_beta_abs2 = b2 / (nn * nn);
  m.sigma_beta_sq = m.mean_abs2 - m.mean_beta_abs2;
  return m;
}

InequalityReport evaluate_inequalities(const SpinMomentSet& m, std::size_t n) {
  const double nn = static_cast<double>(n);
  InequalityReport r;
  r.ss2_lhs = m.var_x + m.var_y + m.var_z;
  r.ss2_violated = r.ss2_lhs < 0.5 * nn - kViolationGuard;
  r.ss1_slack = 0.25 * nn * (nn + 2.0) - (m.jx2 + m.jy2 + m.jz2);
  r.ss1_crosscheck = std::abs(r.ss1_slack - nn * nn * m.sigma_beta_sq);
  r.ss3_slack = m.mean_abs2 * (1.0 - (nn - 1.0) * m.mean_abs2) - m.mean_beta_abs2;
  r.ss4_slack = nn * nn * m.mean_abs2 * m.mean_beta_abs2;
  r.ss4_direct = (nn - 1.0) * (m.var_x + m.var_y) - m.jz2 - 0.25 * nn * (nn - 2.0);
  return r;
}

std::optional<double> first_downcrossing(std::span<const double> t, std::span<const double> value, double threshold) {
  for (std::size_t i = 1; i < t.size() && i < value.size(); ++i) {
    const double a = value[i - 1], b = value[i];
    if (std::isnan(a) || std::isnan(b)) continue;
    if (a >= threshold && b < threshold) {
      const double frac = (a - threshold) / (a - b);
      return t[i - 1] + frac * (t[i] - t[i - 1]);
    }
  }
  return std::nullopt;
}

ThresholdReport threshold_equivalence_check(std::span<const ThresholdSample> samples, std::size_t n, double dt) {
  const double nn = static_cast<double>(n);
  ThresholdReport rep;
  // Deviations inside the guard band count as sitting on the boundary.
  auto snap = [](double x, double band) { return std::abs(x) <= band ? 0.0 : x; };
  auto sign = [](double x) { return (x > 0.0) - (x < 0.0); };

  std::vector<double> ts, c_dev, f_dev;
  for (const auto& s : samples) {
    if (!(s.total > kExcitationFloor) || !s.f_sr) continue;
    ++rep.checked;
    const double cd = snap(s.c_value - 0.5, kViolationGuard / nn);
    const double fd = snap(nn * *s.f_sr - 1.0, kViolationGuard);
    if (sign(cd) != sign(fd)) {
      ++rep.mismatches;
      rep.mismatch_times.push_back(s.t);
    }
    ts.push_back(s.t);
    c_dev.push_back(cd);
    f_dev.push_back(fd);
  }
  rep.c_crossing = first_downcrossing(ts, c_dev, 0.0);
  rep.f_crossing = first_downcrossing(ts, f_dev, 0.0);
  if (rep.c_crossing.has_value() != rep.f_crossing.has_value()) {
    rep.crossings_agree = false;
  } else {
    rep.crossings_agree = !rep.c_crossing || std::abs(*rep.c_crossing - *rep.f_crossing) <= dt;
  }
  rep.passed = rep.mismatches == 0 && rep.crossings_agree;
  return rep;
}

}  // namespace dicke
