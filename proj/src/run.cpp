#include "dicke/run.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>

#include "dicke/errors.hpp"
#include "dicke/kernel.hpp"
#include "dicke/output.hpp"
#include "dicke/simd.hpp"
#include "dicke/tdbasis.hpp"

namespace dicke {

namespace {

SampleRecord make_record(double t, std::span<const cplx> beta) {
  const std::size_t n = beta.size();
  const double nn = static_cast<double>(n);
  const auto td = project(beta, false);
  const auto m = spin_moments(beta);
  const auto ineq = evaluate_inequalities(m, n);

  SampleRecord r;
  r.t = t;
  r.total = td.total;
  r.p = td.total / nn;
  r.p_plus = td.p_plus;
  r.p_sub = td.p_sub;
  r.f_sr = td.f_sr;
  r.f_sub = td.f_sub;
  r.jz = m.jz;
  r.var_x = m.var_x;
  r.var_y = m.var_y;
  r.var_z = m.var_z;
  r.c_value = m.c_value;
  r.ss2_violated = ineq.ss2_violated;
  r.ss1_slack = ineq.ss1_slack;
  r.ss4_slack = ineq.ss4_slack;
  r.ss1_crosscheck = ineq.ss1_crosscheck;
  r.ss4_direct = ineq.ss4_direct;
  // Second route to Σvar through the projection's f_SR.
  const double mean2 = td.total / nn;
  const double f = td.f_sr.value_or(0.0);
  r.identity_residual = std::abs(ineq.ss2_lhs - (0.5 * nn + nn * nn * mean2 * mean2 * (nn * f - 1.0)));
  return r;
}

void write_gamma_row(std::ostream& os, double t, std::span<const cplx> beta) {
  const auto td = project(beta, true);
  os << format_double(t);
  for (const cplx& g : td.gamma) os << ',' << format_double(std::norm(g));
  os << '\n';
}

std::optional<double> crossing(const std::vector<SampleRecord>& recs, double threshold, bool use_c) {
  std::vector<double> t, v;
  t.reserve(recs.size());
  v.reserve(recs.size());
  for (const auto& r : recs) {
    t.push_back(r.t);
    if (use_c) {
      v.push_back(r.total > kExcitationFloor ? r.c_value : std::nan(""));
    } else {
      v.push_back(r.f_sr ? *r.f_sr : std::nan(""));
    }
  }
  return first_downcrossing(t, v, threshold);
}

}  // namespace

RunOutcome simulate(const RunConfig& config, double detuning, std::uint64_t seed, std::ostream* gamma_out,
                    const std::filesystem::path* kernel_dump) {
  const AtomCloud cloud = sample_cloud(config.cloud_params(seed));
  const GreenKernel kernel = build_kernel(cloud, config.k0_dir);
  if (kernel_dump) {
    std::ofstream os(*kernel_dump, std::ios::binary);
    if (!os) throw Error("cannot write " + kernel_dump->string());
    dump_kernel(kernel, os);
  }
  const DriveSchedule schedule = config.schedule(detuning);

  RunOutcome out;
  RunSummary& s = out.summary;
  s.n = cloud.size();
  s.sigma = cloud.sigma;
  s.distribution = cloud.distribution;
  s.seed = seed;
  s.min_separation = cloud.min_separation;
  s.rejections = cloud.rejections;
  s.detuning = detuning;
  s.rabi = config.rabi;
  s.dt = config.dt;
  s.t_off = config.t_off;
  s.t_max = config.t_max;
  s.stride = config.stride;
  s.simd_backend = std::string(simd::to_string(simd::active_backend()));

  const CloudSummary cs = summarize(cloud);
  s.b0 = cs.b0;
  s.mean_nn_distance = cs.mean_nn_distance;
  const CollectiveRates rates = collective_rates(kernel);
  s.gamma_plus = rates.gamma_plus;
  s.omega_plus = rates.omega_plus;
  if (!rates.gamma_s.empty()) {
    s.mean_gamma_s = std::accumulate(rates.gamma_s.begin(), rates.gamma_s.end(), 0.0) /
                     static_cast<double>(rates.gamma_s.size());
  }

  const IntegrationInfo info = integrate(kernel, schedule, config.stride, [&](double t, std::span<const cplx> beta) {
    out.records.push_back(make_record(t, beta));
    if (gamma_out) write_gamma_row(*gamma_out, t, beta);
  });
  s.t_off_rounded = info.t_off_rounded;
  s.max_excitation = info.max_excitation;
  s.regime_warning = info.regime_warning;
  s.warnings = info.warnings;
  if (cloud.rejections > 0) {
    s.warnings.push_back("min_separation exclusion redrew " + std::to_string(cloud.rejections) + " positions");
  }

  const double t_steady = std::isfinite(info.t_off_rounded) ? info.t_off_rounded : out.records.back().t;
  for (const auto& r : out.records) {
    if (std::abs(r.t - t_steady) < 0.5 * config.dt) s.f_sub_steady = r.f_sub;
  }
  if (s.n <= kLinearSolveCap) {
    try {
      const auto ss = steady_state(kernel, config.rabi, detuning);
      s.f_sub_linear_solve = project(ss.beta, false).f_sub;
    } catch (const SingularSystem& e) {
      s.warnings.push_back(e.what());
    }
  }

  s.t_fsub_gt_fsr = crossing(out.records, 0.5, false);
  s.t_fsr_lt_inv_n = crossing(out.records, 1.0 / static_cast<double>(s.n), false);
  s.t_c_lt_half = crossing(out.records, 0.5 - kViolationGuard / static_cast<double>(s.n), true);

  std::vector<ThresholdSample> th;
  th.reserve(out.records.size());
  for (const auto& r : out.records) {
    th.push_back({r.t, r.total, r.c_value, r.f_sr});
    s.max_identity_residual = std::max(s.max_identity_residual, r.identity_residual);
  }
  s.threshold = threshold_equivalence_check(th, s.n, config.dt);

  if (config.check_convergence) s.convergence = convergence_check(kernel, schedule);
  return out;
}

RunFiles run_files(const RunConfig& config, double detuning, std::uint64_t seed) {
  const std::string tag = "d" + tag_number(detuning) + "_s" + std::to_string(seed);
  const std::filesystem::path dir(config.out_dir);
  return {dir / ("traj_" + tag + ".csv"), dir / ("summary_" + tag + ".json")};
}

RunSummary run_single(const RunConfig& config, double detuning, std::uint64_t seed) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  const RunFiles files = run_files(config, detuning, seed);
  const std::string tag = "d" + tag_number(detuning) + "_s" + std::to_string(seed);
  const std::filesystem::path gamma_path = std::filesystem::path(config.out_dir) / ("gamma_" + tag + ".csv");
  const std::filesystem::path kernel_path = std::filesystem::path(config.out_dir) / ("kernel_" + tag + ".bin");

  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : {files.trajectory, files.summary, gamma_path, kernel_path}) std::filesystem::remove(p, ec);
  };

  try {
    std::ofstream gamma_os;
    if (config.store_gamma_s) {
      gamma_os.open(gamma_path);
      if (!gamma_os) throw Error("cannot write " + gamma_path.string());
      gamma_os << "t";
      for (std::size_t s = 1; s < config.n; ++s) gamma_os << ",gamma_abs2_" << s;
      gamma_os << '\n';
    }
    RunOutcome out = simulate(config, detuning, seed, config.store_gamma_s ? &gamma_os : nullptr,
                              config.dump_kernel ? &kernel_path : nullptr);
    {
      std::ofstream os(files.trajectory);
      if (!os) throw Error("cannot write " + files.trajectory.string());
      write_trajectory_csv(os, out.records);
      if (!os) throw Error("write failed for " + files.trajectory.string());
    }
    {
      std::ofstream os(files.summary);
      if (!os) throw Error("cannot write " + files.summary.string());
      os << summary_to_json(out.summary).dump(2) << '\n';
      if (!os) throw Error("write failed for " + files.summary.string());
    }
    return out.summary;
  } catch (...) {
    cleanup();
    throw;
  }
}

bool SweepResult::all_ok() const {
  for (const auto& e : entries)
    if (!e.ok) return false;
  return true;
}

SweepResult run_sweep(const RunConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  SweepResult result;
  for (double d : config.detunings)
    for (std::uint64_t seed : config.seeds) result.entries.push_back({d, seed, false, {}, std::nullopt});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= result.entries.size()) return;
      SweepEntry& e = result.entries[i];
      try {
        e.summary = run_single(config, e.detuning, e.seed);
        e.ok = true;
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(result.entries.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  result.aggregate_csv = std::filesystem::path(config.out_dir) / "sweep_summary.csv";
  std::ofstream os(result.aggregate_csv);
  if (!os) throw Error("cannot write " + result.aggregate_csv.string());
  write_sweep_csv(os, result);
  return result;
}

}  // namespace dicke
