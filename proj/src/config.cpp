#include "dicke/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dicke/errors.hpp"

namespace dicke {

CloudParams RunConfig::cloud_params(std::uint64_t seed) const {
  return CloudParams{n, sigma, distribution, seed, min_separation};
}

DriveSchedule RunConfig::schedule(double detuning) const {
  return DriveSchedule{rabi, detuning, t_off, t_max, dt};
}

void RunConfig::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (!(min_separation >= 0.0)) throw ConfigError("min_separation must be non-negative");
  if (std::abs(k0_dir.norm() - 1.0) > 1e-12) throw ConfigError("k0_dir must be a unit vector");
  if (seeds.empty()) throw ConfigError("seed list is empty");
  if (detunings.empty()) throw ConfigError("detuning list is empty");
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t k = i + 1; k < seeds.size(); ++k)
      if (seeds[i] == seeds[k]) throw ConfigError("duplicate seed " + std::to_string(seeds[i]));
  for (std::size_t i = 0; i < detunings.size(); ++i)
    for (std::size_t k = i + 1; k < detunings.size(); ++k)
      if (detunings[i] == detunings[k]) throw ConfigError("duplicate detuning");
  if (stride < 1) throw ConfigError("stride must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (out_dir.empty()) throw ConfigError("out_dir is empty");
  try {
    for (double d : detunings) schedule(d).validate();
  } catch (const InvalidParam& e) {
    throw ConfigError(e.what());
  }
}

namespace {

double as_double(const toml::Scalar& v, const std::string& key) {
  if (auto p = std::get_if<double>(&v)) return *p;
  if (auto p = std::get_if<std::int64_t>(&v)) return static_cast<double>(*p);
  throw ConfigError("'" + key + "' must be a number");
}

double as_double(const toml::Value& v, const std::string& key) {
  if (auto p = std::get_if<double>(&v)) return *p;
  if (auto p = std::get_if<std::int64_t>(&v)) return static_cast<double>(*p);
  throw ConfigError("'" + key + "' must be a number");
}

std::int64_t as_int(const toml::Value& v, const std::string& key) {
  if (auto p = std::get_if<std::int64_t>(&v)) return *p;
  throw ConfigError("'" + key + "' must be an integer");
}

std::size_t as_count(const toml::Value& v, const std::string& key) {
  const auto i = as_int(v, key);
  if (i < 0) throw ConfigError("'" + key + "' must be non-negative");
  return static_cast<std::size_t>(i);
}

bool as_bool(const toml::Value& v, const std::string& key) {
  if (auto p = std::get_if<bool>(&v)) return *p;
  throw ConfigError("'" + key + "' must be true or false");
}

std::string as_string(const toml::Value& v, const std::string& key) {
  if (auto p = std::get_if<std::string>(&v)) return *p;
  throw ConfigError("'" + key + "' must be a string");
}

std::vector<double> as_doubles(const toml::Value& v, const std::string& key) {
  if (auto arr = std::get_if<std::vector<toml::Scalar>>(&v)) {
    std::vector<double> out;
    for (const auto& s : *arr) out.push_back(as_double(s, key));
    return out;
  }
  return {as_double(v, key)};
}

std::vector<std::uint64_t> as_seeds(const toml::Value& v, const std::string& key) {
  std::vector<std::uint64_t> out;
  auto one = [&](const toml::Scalar& s) {
    auto p = std::get_if<std::int64_t>(&s);
    if (!p || *p < 0) throw ConfigError("'" + key + "' must hold non-negative integers");
    out.push_back(static_cast<std::uint64_t>(*p));
  };
  if (auto arr = std::get_if<std::vector<toml::Scalar>>(&v)) {
    for (const auto& s : *arr) one(s);
  } else if (auto p = std::get_if<std::int64_t>(&v)) {
    one(*p);
  } else {
    throw ConfigError("'" + key + "' must hold non-negative integers");
  }
  return out;
}

}  // namespace

RunConfig apply_toml(const toml::Table& table, RunConfig c) {
  for (const auto& [key, v] : table) {
    if (key == "cloud.n") c.n = as_count(v, key);
    else if (key == "cloud.sigma") c.sigma = as_double(v, key);
    else if (key == "cloud.distribution") {
      try {
        c.distribution = parse_distribution(as_string(v, key));
      } catch (const InvalidParam& e) {
        throw ConfigError(e.what());
      }
    }
    else if (key == "cloud.min_separation") c.min_separation = as_double(v, key);
    else if (key == "cloud.seed" || key == "cloud.seeds") c.seeds = as_seeds(v, key);
    else if (key == "cloud.k0_dir") {
      const auto d = as_doubles(v, key);
      if (d.size() != 3) throw ConfigError("'cloud.k0_dir' must have 3 components");
      c.k0_dir = {d[0], d[1], d[2]};
    }
    else if (key == "drive.rabi") c.rabi = as_double(v, key);
    else if (key == "drive.detuning" || key == "drive.detunings") c.detunings = as_doubles(v, key);
    else if (key == "drive.t_off") c.t_off = as_double(v, key);
    else if (key == "integration.t_max") c.t_max = as_double(v, key);
    else if (key == "integration.dt") c.dt = as_double(v, key);
    else if (key == "integration.stride") c.stride = as_count(v, key);
    else if (key == "output.out_dir") c.out_dir = as_string(v, key);
    else if (key == "output.dump_kernel") c.dump_kernel = as_bool(v, key);
    else if (key == "output.store_gamma_s") c.store_gamma_s = as_bool(v, key);
    else if (key == "output.check_convergence") c.check_convergence = as_bool(v, key);
    else if (key == "run.jobs") c.jobs = static_cast<unsigned>(as_count(v, key));
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return apply_toml(toml::parse(ss.str()), std::move(base));
}

unsigned default_jobs() {
  if (const char* env = std::getenv("DICKE_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace dicke
