#include "dicke/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace dicke {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string tag_number(double v) { return format_double(v); }

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

nlohmann::json opt_json(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

void write_trajectory_csv(std::ostream& os, const std::vector<SampleRecord>& records) {
  os << kTrajectoryHeader << '\n';
  for (const auto& r : records) {
    os << format_double(r.t) << ',' << format_double(r.p) << ',' << format_double(r.p_plus) << ','
       << format_double(r.p_sub) << ',' << opt(r.f_sr) << ',' << opt(r.f_sub) << ',' << format_double(r.jz) << ','
       << format_double(r.var_x) << ',' << format_double(r.var_y) << ',' << format_double(r.var_z) << ','
       << format_double(r.c_value) << ',' << (r.ss2_violated ? 1 : 0) << ',' << format_double(r.ss1_slack) << ','
       << format_double(r.ss4_slack) << '\n';
  }
}

nlohmann::json summary_to_json(const RunSummary& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["sigma"] = s.sigma;
  j["distribution"] = std::string(to_string(s.distribution));
  j["seed"] = s.seed;
  j["min_separation"] = s.min_separation;
  j["min_separation_rejections"] = s.rejections;
  j["detuning"] = s.detuning;
  j["rabi"] = s.rabi;
  j["dt"] = s.dt;
  j["t_off"] = finite_or_null(s.t_off);
  j["t_off_rounded"] = finite_or_null(s.t_off_rounded);
  j["t_max"] = s.t_max;
  j["stride"] = s.stride;
  j["b0"] = s.b0;
  j["mean_nn_distance"] = opt_json(s.mean_nn_distance);
  j["gamma_plus"] = s.gamma_plus;
  j["omega_plus"] = s.omega_plus;
  j["mean_gamma_s"] = opt_json(s.mean_gamma_s);
  j["f_sub_steady"] = opt_json(s.f_sub_steady);
  j["f_sub_linear_solve"] = opt_json(s.f_sub_linear_solve);
  j["t_fsub_gt_fsr"] = opt_json(s.t_fsub_gt_fsr);
  j["t_fsr_lt_inv_n"] = opt_json(s.t_fsr_lt_inv_n);
  j["t_c_lt_half"] = opt_json(s.t_c_lt_half);
  j["threshold_equivalence"] = {
      {"checked", s.threshold.checked},
      {"mismatches", s.threshold.mismatches},
      {"c_crossing", opt_json(s.threshold.c_crossing)},
      {"f_sr_crossing", opt_json(s.threshold.f_crossing)},
      {"passed", s.threshold.passed},
  };
  j["max_identity_residual"] = s.max_identity_residual;
  j["max_excitation"] = s.max_excitation;
  j["regime_warning"] = s.regime_warning;
  j["warnings"] = s.warnings;
  j["simd_backend"] = s.simd_backend;
  if (s.convergence) {
    j["convergence"] = {
        {"dt", s.convergence->dt},
        {"max_rel_deviation", finite_or_null(s.convergence->max_rel_deviation)},
        {"non_finite", s.convergence->non_finite},
        {"tolerance", s.convergence->tolerance},
        {"certified", s.convergence->certified},
    };
  } else {
    j["convergence"] = nullptr;
  }
  return j;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << kSweepHeader << '\n';
  for (const auto& e : sweep.entries) {
    os << format_double(e.detuning) << ',' << e.seed << ',' << (e.ok ? "ok" : "failed") << ',';
    if (e.summary) {
      const auto& s = *e.summary;
      os << format_double(s.gamma_plus) << ',' << format_double(s.b0) << ',' << opt(s.f_sub_steady) << ','
         << opt(s.t_fsub_gt_fsr) << ',' << opt(s.t_fsr_lt_inv_n) << ',' << opt(s.t_c_lt_half) << ','
         << (s.threshold.passed ? 1 : 0) << ',';
    } else {
      os << ",,,,,,,";
    }
    std::string err = e.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    os << err << '\n';
  }
}

}  // namespace dicke
