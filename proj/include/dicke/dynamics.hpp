#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dicke/kernel.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Rectangular pulse: drive on for t < t_off, off afterwards. Rates in units
// of Γ, times in units of 1/Γ.
struct DriveSchedule {
  double rabi = 0.1;
  double detuning = 10.0;
  double t_off = 20.0;  // +inf keeps the laser on
  double t_max = 30.0;
  double dt = 0.01;

  void validate() const;
};

struct ExcitationState {
  CVector beta;
  double t = 0.0;  // +inf marks a steady state
  double alpha = 1.0;
};

inline constexpr double kRegimeBound = 0.1;

// dβ_j/dt = (iΔ0 − 1/2)β_j − iΩ/2 − (1/2) Σ_{m≠j} G̃_jm β_m.
// `scratch` must hold N entries; out may not alias beta.
void rhs(std::span<const cplx> beta, const GreenKernel& kernel, double rabi_eff, double detuning,
         std::span<cplx> out, std::span<cplx> scratch);
CVector rhs(const ExcitationState& state, const GreenKernel& kernel, double rabi_eff, double detuning);

struct IntegrationInfo {
  std::size_t steps = 0;
  std::size_t off_step = 0;       // first step taken with the drive off
  double t_off_rounded = 0.0;     // +inf when the drive never switches off
  bool regime_warning = false;    // Σ|β|² exceeded kRegimeBound
  double regime_warning_time = std::numeric_limits<double>::quiet_NaN();
  double max_excitation = 0.0;
  std::vector<std::string> warnings;
};

// Called on every snapshot with (t, β).
using SampleObserver = std::function<void(double, std::span<const cplx>)>;

// RK4 with fixed dt from β(0) = 0. t_off is rounded to the nearest step
// boundary. Snapshots at t = 0, every `stride` steps, at the rounded t_off,
// and at the final step. Throws NonFinite if an amplitude blows up.
IntegrationInfo integrate(const GreenKernel& kernel, const DriveSchedule& schedule, std::size_t stride,
                          const SampleObserver& observe);

struct TimeSeries {
  std::vector<double> times;
  std::vector<ExcitationState> states;
  IntegrationInfo info;
};

TimeSeries integrate(const GreenKernel& kernel, const DriveSchedule& schedule, std::size_t stride = 1);

// Solves [(iΔ0 − 1/2)I − (1/2)(G̃ − I)] β = (iΩ0/2)·1. Throws SingularSystem
// when the reciprocal condition estimate falls below 1e-14.
ExcitationState steady_state(const GreenKernel& kernel, double rabi, double detuning);

struct ConvergenceReport {
  double dt = 0.0;
  double max_rel_deviation = 0.0;  // Σ|β|² at dt vs dt/2, over common samples
  bool non_finite = false;
  bool certified = false;          // deviation below tolerance and finite
  double tolerance = 0.0;
};

// RK4 phase error grows as Δ0⁵·dt⁴, so at Δ0 = 10, dt = 0.01 the step-halving
// deviation sits near 1e-5; the default tolerance leaves room for that.
inline constexpr double kConvergenceTolerance = 1e-4;

ConvergenceReport convergence_check(const GreenKernel& kernel, const DriveSchedule& schedule,
                                    double tolerance = kConvergenceTolerance);

}  // namespace dicke
