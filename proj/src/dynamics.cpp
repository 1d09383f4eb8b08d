#include "dicke/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/simd.hpp"

namespace dicke {

void DriveSchedule::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParam("dt must be positive");
  if (!(rabi >= 0.0)) throw InvalidParam("rabi must be non-negative");
  if (!std::isfinite(detuning)) throw InvalidParam("detuning must be finite");
  if (!(t_off >= 0.0)) throw InvalidParam("t_off must be non-negative");
  if (!std::isfinite(t_max) || t_max < 0.0) throw InvalidParam("t_max must be finite and non-negative");
  if (std::isfinite(t_off) && t_off > t_max) throw InvalidParam("t_off must not exceed t_max");
}

void rhs(std::span<const cplx> beta, const GreenKernel& kernel, double rabi_eff, double detuning,
         std::span<cplx> out, std::span<cplx> scratch) {
  const std::size_t n = kernel.size();
  if (beta.size() != n || out.size() != n || scratch.size() != n)
    throw DimensionMismatch("rhs: state has " + std::to_string(beta.size()) + " amplitudes, kernel has " +
                            std::to_string(n));
  simd::cmatvec(kernel.data(), beta, scratch);
  // G̃_jj = 1, so Σ_{m≠j} G̃_jm β_m = (G̃β)_j − β_j.
  const cplx diag{-0.5, detuning};
  const cplx drive{0.0, -0.5 * rabi_eff};
  for (std::size_t j = 0; j < n; ++j) out[j] = diag * beta[j] + drive - 0.5 * (scratch[j] - beta[j]);
}

CVector rhs(const ExcitationState& state, const GreenKernel& kernel, double rabi_eff, double detuning) {
  CVector out(state.beta.size()), scratch(state.beta.size());
  rhs(state.beta, kernel, rabi_eff, detuning, out, scratch);
  return out;
}

IntegrationInfo integrate(const GreenKernel& kernel, const DriveSchedule& schedule, std::size_t stride,
                          const SampleObserver& observe) {
  schedule.validate();
  if (stride < 1) throw InvalidParam("stride must be >= 1");
  const std::size_t n = kernel.size();
  const double dt = schedule.dt;

  IntegrationInfo info;
  info.steps = static_cast<std::size_t>(std::llround(schedule.t_max / dt));
  if (std::isfinite(schedule.t_off)) {
    info.off_step = static_cast<std::size_t>(std::llround(schedule.t_off / dt));
    info.off_step = std::min(info.off_step, info.steps);
    info.t_off_rounded = static_cast<double>(info.off_step) * dt;
    if (std::abs(info.t_off_rounded - schedule.t_off) > 1e-12 * std::max(1.0, schedule.t_off))
      info.warnings.push_back("t_off rounded to " + std::to_string(info.t_off_rounded));
  } else {
    info.off_step = info.steps + 1;
    info.t_off_rounded = std::numeric_limits<double>::infinity();
  }

  CVector beta(n, cplx{}), k1(n), k2(n), k3(n), k4(n), tmp(n), scratch(n);
  auto stage = [&](const CVector& base, const CVector& k, double h, double rabi, CVector& out) {
    std::copy(base.begin(), base.end(), tmp.begin());
    simd::caxpy(h, k, tmp);
    rhs(tmp, kernel, rabi, schedule.detuning, out, scratch);
  };

  auto snapshot = [&](std::size_t k) {
    if (k % stride == 0 || k == info.off_step || k == info.steps) observe(static_cast<double>(k) * dt, beta);
  };
  snapshot(0);

  for (std::size_t k = 0; k < info.steps; ++k) {
    const double rabi = k < info.off_step ? schedule.rabi : 0.0;
    rhs(beta, kernel, rabi, schedule.detuning, k1, scratch);
    stage(beta, k1, 0.5 * dt, rabi, k2);
    stage(beta, k2, 0.5 * dt, rabi, k3);
    stage(beta, k3, dt, rabi, k4);
    const double w = dt / 6.0;
    simd::caxpy(w, k1, beta);
    simd::caxpy(2.0 * w, k2, beta);
    simd::caxpy(2.0 * w, k3, beta);
    simd::caxpy(w, k4, beta);

    const double excitation = simd::sum_stats(beta).sum_abs2;
    if (!std::isfinite(excitation)) {
      throw NonFinite("amplitudes became non-finite at t=" + std::to_string(static_cast<double>(k + 1) * dt) +
                      " (dt=" + std::to_string(dt) + " too large?)");
    }
    info.max_excitation = std::max(info.max_excitation, excitation);
    if (excitation > kRegimeBound && !info.regime_warning) {
      info.regime_warning = true;
      info.regime_warning_time = static_cast<double>(k + 1) * dt;
      info.warnings.push_back("weak-excitation bound exceeded: sum |beta|^2 = " + std::to_string(excitation) +
                              " at t=" + std::to_string(info.regime_warning_time));
    }
    snapshot(k + 1);
  }
  return info;
}

TimeSeries integrate(const GreenKernel& kernel, const DriveSchedule& schedule, std::size_t stride) {
  TimeSeries ts;
  ts.info = integrate(kernel, schedule, stride, [&](double t, std::span<const cplx> beta) {
    ts.times.push_back(t);
    ts.states.push_back({CVector(beta.begin(), beta.end()), t, 1.0});
  });
  return ts;
}

ExcitationState steady_state(const GreenKernel& kernel, double rabi, double detuning) {
  const auto n = static_cast<Eigen::Index>(kernel.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index c = 0; c < n; ++c) m(j, c) = -0.5 * kernel(j, c);
  // Diagonal: (iΔ0 − 1/2) − (1/2)(1 − 1).
  for (Eigen::Index j = 0; j < n; ++j) m(j, j) = cplx{-0.5, detuning};
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond >= 1e-14)) {
    throw SingularSystem("steady_state: system matrix is numerically singular (rcond estimate " +
                             std::to_string(rcond) + ")",
                         rcond);
  }
  const Eigen::VectorXcd b = Eigen::VectorXcd::Constant(n, cplx{0.0, 0.5 * rabi});
  const Eigen::VectorXcd x = lu.solve(b);
  ExcitationState s;
  s.beta.assign(x.data(), x.data() + n);
  s.t = std::numeric_limits<double>::infinity();
  return s;
}

ConvergenceReport convergence_check(const GreenKernel& kernel, const DriveSchedule& schedule, double tolerance) {
  ConvergenceReport rep;
  rep.dt = schedule.dt;
  rep.tolerance = tolerance;

  // The fine run uses twice the stride so both runs sample the same times.
  const std::size_t coarse_stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.1 / schedule.dt)));
  auto excitation_trace = [&](const DriveSchedule& s, std::size_t stride) {
    std::vector<std::pair<double, double>> trace;
    integrate(kernel, s, stride, [&](double t, std::span<const cplx> beta) {
      trace.emplace_back(t, simd::sum_stats(beta).sum_abs2);
    });
    return trace;
  };

  DriveSchedule fine = schedule;
  fine.dt = schedule.dt / 2.0;
  try {
    const auto a = excitation_trace(schedule, coarse_stride);
    const auto b = excitation_trace(fine, 2 * coarse_stride);
    std::size_t i = 0;
    for (const auto& [t, ex] : a) {
      while (i < b.size() && b[i].first < t - 0.25 * schedule.dt) ++i;
      if (i == b.size() || std::abs(b[i].first - t) > 0.25 * schedule.dt) continue;
      const double scale = std::max(std::abs(b[i].second), 1e-300);
      if (ex == 0.0 && b[i].second == 0.0) continue;
      rep.max_rel_deviation = std::max(rep.max_rel_deviation, std::abs(ex - b[i].second) / scale);
    }
  } catch (const NonFinite&) {
    rep.non_finite = true;
    rep.max_rel_deviation = std::numeric_limits<double>::infinity();
  }
  rep.certified = !rep.non_finite && std::isfinite(rep.max_rel_deviation) && rep.max_rel_deviation < tolerance;
  return rep;
}

}  // namespace dicke
