#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/cloud.hpp"
#include "dicke/dynamics.hpp"
#include "dicke/toml_lite.hpp"

namespace dicke {

// Everything one invocation needs. Defaults reproduce the reference run:
// N = 1000 Gaussian atoms, σ = 10, Δ0 = 10Γ, Ω0 = 0.1Γ, cutoff at Γt = 20.
struct RunConfig {
  std::size_t n = 1000;
  double sigma = 10.0;
  Distribution distribution = Distribution::gaussian;
  double min_separation = kDefaultMinSeparation;
  Vec3 k0_dir = kDefaultDriveDir;
  std::vector<std::uint64_t> seeds{1};

  double rabi = 0.1;
  std::vector<double> detunings{10.0};
  double t_off = 20.0;
  double t_max = 30.0;
  double dt = 0.01;
  std::size_t stride = 1;

  std::string out_dir = "out";
  bool dump_kernel = false;
  bool store_gamma_s = false;
  bool check_convergence = false;
  unsigned jobs = 1;

  CloudParams cloud_params(std::uint64_t seed) const;
  DriveSchedule schedule(double detuning) const;

  // Throws ConfigError on an inconsistent configuration.
  void validate() const;
};

// Applies the keys present in `table` on top of `base`; unknown keys are a
// ConfigError.
RunConfig apply_toml(const toml::Table& table, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// DICKE_JOBS, falling back to 1.
unsigned default_jobs();

}  // namespace dicke
