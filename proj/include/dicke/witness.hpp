#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

// First and second moments of the collective spin J_k = (1/2)Σσ_j^(k) in
// the state α|g⟩ + Σβ_j e^{ik0·r_j}|j⟩.
struct SpinMomentSet {
  std::size_t n = 0;
  double jx = 0.0, jy = 0.0, jz = 0.0;
  double jx2 = 0.0, jy2 = 0.0, jz2 = 0.0;
  double var_x = 0.0, var_y = 0.0, var_z = 0.0;
  double c_value = 0.0;        // (var_x + var_y + var_z)/N
  double sigma_beta_sq = 0.0;  // mean|β|² − |mean β|²
  double mean_abs2 = 0.0;      // (1/N)Σ|β_j|²
  double mean_beta_abs2 = 0.0; // |(1/N)Σβ_j|²
  cplx alpha = 1.0;
};

// Uses the normalized ground amplitude α = √(1 − Σ|β|²), which the
// closed-form moments assume. Throws InvalidParam if Σ|β|² > 1.
SpinMomentSet spin_moments(std::span<const cplx> beta);
// Same closed forms with an explicit α.
SpinMomentSet spin_moments(std::span<const cplx> beta, cplx alpha);

inline constexpr double kViolationGuard = 1e-12;

struct InequalityReport {
  double ss2_lhs = 0.0;       // (ΔJx)² + (ΔJy)² + (ΔJz)²
  bool ss2_violated = false;  // ss2_lhs < N/2 − guard
  double ss1_slack = 0.0;     // N(N+2)/4 − Σ⟨J_k²⟩
  double ss1_crosscheck = 0.0;  // |ss1_slack − N²σβ²|
  double ss3_slack = 0.0;     // mean|β|²[1 − (N−1)mean|β|²] − |mean β|²
  bool ss3_outside_linear_regime = true;  // never used for entanglement claims
  double ss4_slack = 0.0;     // N²·mean|β|²·|mean β|²
  double ss4_direct = 0.0;    // (N−1)[(ΔJx)²+(ΔJy)²] − ⟨Jz²⟩ − N(N−2)/4
};

InequalityReport evaluate_inequalities(const SpinMomentSet& m, std::size_t n);

// Per-sample inputs for the C = 1/2 ⇔ f_SR = 1/N check. Both sides use the
// kViolationGuard band, so exact boundary states (N = 1, ground state) match.
struct ThresholdSample {
  double t = 0.0;
  double total = 0.0;  // Σ|β|²
  double c_value = 0.0;
  std::optional<double> f_sr;
};

struct ThresholdReport {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::vector<double> mismatch_times;
  std::optional<double> c_crossing;   // first time C drops below 1/2
  std::optional<double> f_crossing;   // first time f_SR drops below 1/N
  bool crossings_agree = false;       // both absent, or within one dt
  bool passed = false;
};

inline constexpr double kExcitationFloor = 1e-14;

ThresholdReport threshold_equivalence_check(std::span<const ThresholdSample> samples, std::size_t n, double dt);

// First time `value` crosses from >= threshold to < threshold, linearly
// interpolated between the bracketing samples.
std::optional<double> first_downcrossing(std::span<const double> t, std::span<const double> value, double threshold);

}  // namespace dicke
