// dicke: coupled-dipole superradiance/subradiance runs from the command line.
//
//   dicke run   [flags]   one trajectory per (detuning, seed) pair
//   dicke sweep [flags]   same, on a worker pool, plus sweep_summary.csv
//   dicke cloud [flags]   sample a cloud and print it as JSON
//   dicke rates [flags]   collective rates and kernel spectrum for one cloud

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dicke/cloud.hpp"
#include "dicke/config.hpp"
#include "dicke/errors.hpp"
#include "dicke/kernel.hpp"
#include "dicke/output.hpp"
#include "dicke/run.hpp"
#include "dicke/simd.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::size_t n = 0;
  double sigma = 0, rabi = 0, toff = 0, tmax = 0, dt = 0, min_sep = 0;
  std::string dist, out_dir, simd;
  std::vector<std::uint64_t> seeds;
  std::vector<double> detunings;
  std::size_t stride = 0;
  unsigned jobs = 0;
  bool dump_kernel = false, store_gamma = false, check_conv = false;
};

void add_run_flags(CLI::App* app, Flags& f) {
  app->add_option("-c,--config", f.config_path, "TOML config file; flags override it")->check(CLI::ExistingFile);
  app->add_option("--n", f.n, "number of atoms");
  app->add_option("--sigma", f.sigma, "cloud width k0*sigma_r");
  app->add_option("--dist", f.dist, "gaussian | uniform_ball");
  app->add_option("--seed,--seeds", f.seeds, "RNG seed(s)")->delimiter(',');
  app->add_option("--delta0,--delta0s", f.detunings, "detuning(s) in units of Gamma")->delimiter(',');
  app->add_option("--rabi", f.rabi, "Rabi frequency in units of Gamma");
  app->add_option("--toff", f.toff, "laser cutoff time (1/Gamma); inf keeps it on");
  app->add_option("--tmax", f.tmax, "end time (1/Gamma)");
  app->add_option("--dt", f.dt, "RK4 step (1/Gamma)");
  app->add_option("--stride", f.stride, "snapshot every N steps");
  app->add_option("--min-sep", f.min_sep, "minimum pair distance (k0 r units)");
  app->add_option("--jobs", f.jobs, "worker threads (default: $DICKE_JOBS or 1)");
  app->add_option("--out-dir", f.out_dir, "output directory");
  app->add_flag("--dump-kernel", f.dump_kernel, "write G~ as complex64 binary");
  app->add_flag("--store-gamma-s", f.store_gamma, "write |gamma_s|^2 per sample");
  app->add_flag("--check-convergence", f.check_conv, "rerun at dt/2 and report the deviation");
  app->add_option("--simd", f.simd, "force kernel backend: scalar | avx2");
}

dicke::RunConfig resolve(CLI::App* app, const Flags& f) {
  dicke::RunConfig c;
  c.jobs = dicke::default_jobs();
  if (!f.config_path.empty()) c = dicke::load_config_file(f.config_path, c);
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--n")) c.n = f.n;
  if (given("--sigma")) c.sigma = f.sigma;
  if (given("--dist")) {
    try {
      c.distribution = dicke::parse_distribution(f.dist);
    } catch (const dicke::InvalidParam& e) {
      throw dicke::ConfigError(e.what());
    }
  }
  if (given("--seed")) c.seeds = f.seeds;
  if (given("--delta0")) c.detunings = f.detunings;
  if (given("--rabi")) c.rabi = f.rabi;
  if (given("--toff")) c.t_off = f.toff;
  if (given("--tmax")) c.t_max = f.tmax;
  if (given("--dt")) c.dt = f.dt;
  if (given("--stride")) c.stride = f.stride;
  if (given("--min-sep")) c.min_separation = f.min_sep;
  if (given("--jobs")) c.jobs = f.jobs;
  if (given("--out-dir")) c.out_dir = f.out_dir;
  if (f.dump_kernel) c.dump_kernel = true;
  if (f.store_gamma) c.store_gamma_s = true;
  if (f.check_conv) c.check_convergence = true;
  if (given("--simd")) {
    if (f.simd == "scalar") dicke::simd::set_active_backend(dicke::simd::Backend::scalar);
    else if (f.simd == "avx2") dicke::simd::set_active_backend(dicke::simd::Backend::avx2);
    else throw dicke::ConfigError("--simd must be scalar or avx2");
  }
  c.validate();
  return c;
}

void print_sweep(const dicke::SweepResult& r) {
  for (const auto& e : r.entries) {
    if (e.ok) {
      const auto& s = *e.summary;
      auto show = [](const std::optional<double>& v) { return v ? dicke::format_double(*v) : std::string("-"); };
      std::printf("delta0=%s seed=%llu  gamma_plus=%.4f  f_sub(t_off)=%s  f_sub>f_sr@%s  C<1/2@%s  threshold=%s\n",
                  dicke::format_double(e.detuning).c_str(), static_cast<unsigned long long>(e.seed), s.gamma_plus,
                  show(s.f_sub_steady).c_str(), show(s.t_fsub_gt_fsr).c_str(), show(s.t_c_lt_half).c_str(),
                  s.threshold.passed ? "ok" : "MISMATCH");
    } else {
      std::printf("delta0=%s seed=%llu  FAILED: %s\n", dicke::format_double(e.detuning).c_str(),
                  static_cast<unsigned long long>(e.seed), e.error.c_str());
    }
  }
  std::printf("aggregate: %s\n", r.aggregate_csv.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon superradiance/subradiance in driven cold-atom clouds"};
  app.require_subcommand(1);

  Flags run_flags, sweep_flags;
  auto* run = app.add_subcommand("run", "run every (detuning, seed) pair sequentially");
  add_run_flags(run, run_flags);
  auto* sweep = app.add_subcommand("sweep", "run every (detuning, seed) pair on a worker pool");
  add_run_flags(sweep, sweep_flags);

  Flags cloud_flags;
  std::string cloud_out;
  auto* cloud = app.add_subcommand("cloud", "sample an atom cloud and export it as JSON");
  cloud->add_option("--n", cloud_flags.n, "number of atoms")->required();
  cloud->add_option("--sigma", cloud_flags.sigma, "cloud width k0*sigma_r")->required();
  cloud->add_option("--dist", cloud_flags.dist, "gaussian | uniform_ball")->default_str("gaussian");
  cloud->add_option("--seed", cloud_flags.seeds, "RNG seed")->expected(1);
  cloud->add_option("--min-sep", cloud_flags.min_sep, "minimum pair distance")->default_val(dicke::kDefaultMinSeparation);
  cloud->add_option("-o,--output", cloud_out, "output file (default stdout)");

  Flags rates_flags;
  auto* rates = app.add_subcommand("rates", "collective rates and Re(G~) spectrum for one cloud");
  rates->add_option("--n", rates_flags.n, "number of atoms")->required();
  rates->add_option("--sigma", rates_flags.sigma, "cloud width k0*sigma_r")->required();
  rates->add_option("--dist", rates_flags.dist, "gaussian | uniform_ball")->default_str("gaussian");
  rates->add_option("--seed", rates_flags.seeds, "RNG seed")->expected(1);
  rates->add_option("--min-sep", rates_flags.min_sep, "minimum pair distance")->default_val(dicke::kDefaultMinSeparation);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run || *sweep) {
      CLI::App* sub = *run ? run : sweep;
      dicke::RunConfig c = resolve(sub, *run ? run_flags : sweep_flags);
      if (*run) c.jobs = 1;
      const auto result = dicke::run_sweep(c);
      print_sweep(result);
      return result.all_ok() ? 0 : 1;
    }

    auto cloud_params = [](const Flags& f) {
      dicke::CloudParams p;
      p.n = f.n;
      p.sigma = f.sigma;
      p.distribution = dicke::parse_distribution(f.dist.empty() ? "gaussian" : f.dist);
      p.seed = f.seeds.empty() ? 0 : f.seeds.front();
      p.min_separation = f.min_sep;
      return p;
    };

    if (*cloud) {
      const auto c = dicke::sample_cloud(cloud_params(cloud_flags));
      const std::string text = dicke::cloud_to_json(c);
      if (cloud_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream os(cloud_out);
        if (!os) throw dicke::Error("cannot write " + cloud_out);
        os << text;
      }
      return 0;
    }

    if (*rates) {
      const auto c = dicke::sample_cloud(cloud_params(rates_flags));
      const auto k = dicke::build_kernel(c);
      const auto r = dicke::collective_rates(k);
      const auto s = dicke::summarize(c);
      nlohmann::json j;
      j["n"] = c.size();
      j["b0"] = s.b0;
      j["gamma_plus"] = r.gamma_plus;
      j["gamma_plus_estimate"] = 1.0 + s.b0 / 12.0;
      j["omega_plus"] = r.omega_plus;
      double mean = 0.0;
      for (double g : r.gamma_s) mean += g;
      j["mean_gamma_s"] = r.gamma_s.empty() ? nlohmann::json(nullptr) : nlohmann::json(mean / r.gamma_s.size());
      if (c.size() <= dicke::kSpectrumCap) j["min_re_eigenvalue"] = dicke::kernel_spectrum_check(k).front();
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const dicke::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
