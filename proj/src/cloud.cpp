#include "dicke/cloud.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <json.hpp>

#include "dicke/errors.hpp"

namespace dicke {

std::string_view to_string(Distribution d) {
  return d == Distribution::gaussian ? "gaussian" : "uniform_ball";
}

Distribution parse_distribution(std::string_view s) {
  if (s == "gaussian") return Distribution::gaussian;
  if (s == "uniform_ball") return Distribution::uniform_ball;
  throw InvalidParam("unknown distribution '" + std::string(s) + "'");
}

double optical_thickness(std::size_t n, double sigma, Distribution d) {
  const double nn = static_cast<double>(n);
  return (d == Distribution::gaussian ? 3.0 : 9.0) * nn / (sigma * sigma);
}

AtomCloud sample_cloud(const CloudParams& p) {
  if (p.n < 1) throw InvalidParam("cloud needs at least one atom");
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw InvalidParam("sigma must be positive");
  if (!(p.min_separation >= 0.0)) throw InvalidParam("min_separation must be non-negative");

  AtomCloud cloud;
  cloud.sigma = p.sigma;
  cloud.seed = p.seed;
  cloud.distribution = p.distribution;
  cloud.min_separation = p.min_separation;
  cloud.positions.reserve(p.n);

  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> normal(0.0, p.sigma);
  std::uniform_real_distribution<double> box(-p.sigma, p.sigma);

  auto draw = [&]() -> Vec3 {
    if (p.distribution == Distribution::gaussian) {
      const double x = normal(rng);
      const double y = normal(rng);
      return {x, y, normal(rng)};
    }
    for (;;) {
      const double x = box(rng);
      const double y = box(rng);
      const Vec3 v{x, y, box(rng)};
      if (dot(v, v) <= p.sigma * p.sigma) return v;
    }
  };

  const double min2 = p.min_separation * p.min_separation;
  auto clashes = [&](const Vec3& v) {
    for (const Vec3& q : cloud.positions) {
      const Vec3 d = v - q;
      const double r2 = dot(d, d);
      // r = 0 is singular even when no exclusion radius was requested.
      if (r2 < min2 || r2 == 0.0) return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < p.n; ++i) {
    int attempts = 0;
    Vec3 v = draw();
    while (clashes(v)) {
      ++cloud.rejections;
      if (++attempts >= kRejectionBudget) {
        throw RejectionExhausted("could not place atom " + std::to_string(i) + " with min_separation " +
                                 std::to_string(p.min_separation) + " after " +
                                 std::to_string(kRejectionBudget) + " draws");
      }
      v = draw();
    }
    cloud.positions.push_back(v);
  }
  return cloud;
}

double min_pair_distance(const AtomCloud& cloud) {
  double best = std::numeric_limits<double>::infinity();
  const auto& r = cloud.positions;
  for (std::size_t j = 0; j < r.size(); ++j)
    for (std::size_t m = j + 1; m < r.size(); ++m) best = std::min(best, (r[j] - r[m]).norm());
  return best;
}

CloudSummary summarize(const AtomCloud& cloud) {
  CloudSummary s;
  s.b0 = optical_thickness(cloud.size(), cloud.sigma, cloud.distribution);
  const auto& r = cloud.positions;
  if (r.size() < 2) return s;
  double total = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    double nn = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < r.size(); ++m)
      if (m != j) nn = std::min(nn, (r[j] - r[m]).norm());
    total += nn;
  }
  s.mean_nn_distance = total / static_cast<double>(r.size());
  return s;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string cloud_to_json(const AtomCloud& cloud) {
  std::string out = "{\"n\": " + std::to_string(cloud.size()) + ", \"sigma\": ";
  append_double(out, cloud.sigma);
  out += ", \"distribution\": \"" + std::string(to_string(cloud.distribution)) + "\"";
  out += ", \"seed\": " + std::to_string(cloud.seed) + ", \"min_separation\": ";
  append_double(out, cloud.min_separation);
  out += ", \"positions\": [";
  for (std::size_t j = 0; j < cloud.size(); ++j) {
    const Vec3& v = cloud.positions[j];
    out += j ? ",\n  [" : "\n  [";
    append_double(out, v.x);
    out += ", ";
    append_double(out, v.y);
    out += ", ";
    append_double(out, v.z);
    out += "]";
  }
  out += "\n]}\n";
  return out;
}

AtomCloud cloud_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParam(std::string("cloud JSON: ") + e.what());
  }
  AtomCloud c;
  try {
    c.sigma = j.at("sigma").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.distribution = parse_distribution(j.at("distribution").get<std::string>());
    c.min_separation = j.at("min_separation").get<double>();
    for (const auto& row : j.at("positions")) {
      if (row.size() != 3) throw InvalidParam("cloud JSON: position must have 3 components");
      c.positions.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    }
    if (j.at("n").get<std::size_t>() != c.positions.size())
      throw InvalidParam("cloud JSON: n does not match number of positions");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParam(std::string("cloud JSON: ") + e.what());
  }
  if (c.positions.empty()) throw InvalidParam("cloud JSON: no atoms");
  if (!(c.sigma > 0.0)) throw InvalidParam("cloud JSON: sigma must be positive");
  return c;
}

}  // namespace dicke
