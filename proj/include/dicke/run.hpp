#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dicke/config.hpp"
#include "dicke/dynamics.hpp"
#include "dicke/witness.hpp"

namespace dicke {

// One row of the trajectory CSV.
struct SampleRecord {
  double t = 0.0;
  double p = 0.0;  // (1/N)Σ|β_j|²
  double total = 0.0;
  double p_plus = 0.0;
  double p_sub = 0.0;
  std::optional<double> f_sr;
  std::optional<double> f_sub;
  double jz = 0.0;
  double var_x = 0.0, var_y = 0.0, var_z = 0.0;
  double c_value = 0.0;
  bool ss2_violated = false;
  double ss1_slack = 0.0;
  double ss4_slack = 0.0;
  // Diagnostics kept out of the CSV.
  double identity_residual = 0.0;  // |Σvar − [N/2 + N²mean|β|²²(N f_SR − 1)]|
  double ss1_crosscheck = 0.0;
  double ss4_direct = 0.0;
};

struct RunSummary {
  std::size_t n = 0;
  double sigma = 0.0;
  Distribution distribution = Distribution::gaussian;
  std::uint64_t seed = 0;
  double min_separation = 0.0;
  std::size_t rejections = 0;
  double detuning = 0.0;
  double rabi = 0.0;
  double dt = 0.0;
  double t_off = 0.0;
  double t_off_rounded = 0.0;
  double t_max = 0.0;
  std::size_t stride = 1;

  double b0 = 0.0;
  std::optional<double> mean_nn_distance;
  double gamma_plus = 0.0;
  double omega_plus = 0.0;
  std::optional<double> mean_gamma_s;

  std::optional<double> f_sub_steady;        // integrated, at the rounded t_off
  std::optional<double> f_sub_linear_solve;  // from steady_state()
  std::optional<double> t_fsub_gt_fsr;
  std::optional<double> t_fsr_lt_inv_n;
  std::optional<double> t_c_lt_half;
  ThresholdReport threshold;
  double max_identity_residual = 0.0;

  double max_excitation = 0.0;
  bool regime_warning = false;
  std::vector<std::string> warnings;
  std::string simd_backend;
  std::optional<ConvergenceReport> convergence;
};

struct RunOutcome {
  RunSummary summary;
  std::vector<SampleRecord> records;
};

inline constexpr std::size_t kLinearSolveCap = 4000;

// sample_cloud → build_kernel → integrate → per-sample project,
// spin_moments and evaluate_inequalities. Writes nothing.
// `gamma_out`, when set, receives one CSV row of |γ_s|² per sample.
RunOutcome simulate(const RunConfig& config, double detuning, std::uint64_t seed,
                    std::ostream* gamma_out = nullptr, const std::filesystem::path* kernel_dump = nullptr);

struct RunFiles {
  std::filesystem::path trajectory;
  std::filesystem::path summary;
};

RunFiles run_files(const RunConfig& config, double detuning, std::uint64_t seed);

// simulate() plus trajectory CSV and summary JSON under config.out_dir.
// Partial files are removed if anything throws.
RunSummary run_single(const RunConfig& config, double detuning, std::uint64_t seed);

struct SweepEntry {
  double detuning = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::optional<RunSummary> summary;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // detuning-major, seed-minor order
  std::filesystem::path aggregate_csv;
  bool all_ok() const;
};

// Every (detuning, seed) pair on a pool of config.jobs workers; failures are
// recorded and the sweep continues.
SweepResult run_sweep(const RunConfig& config);

}  // namespace dicke
