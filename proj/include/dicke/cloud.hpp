#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

enum class Distribution { gaussian, uniform_ball };

std::string_view to_string(Distribution d);
Distribution parse_distribution(std::string_view s);

inline constexpr double kDefaultMinSeparation = 0.1;
inline constexpr int kRejectionBudget = 10000;

struct CloudParams {
  std::size_t n = 1000;
  double sigma = 10.0;
  Distribution distribution = Distribution::gaussian;
  std::uint64_t seed = 0;
  double min_separation = kDefaultMinSeparation;
};

// Atom positions in units of 1/k0. Immutable once sampled.
struct AtomCloud {
  std::vector<Vec3> positions;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::gaussian;
  double min_separation = 0.0;
  // Draws thrown away because they violated min_separation.
  std::size_t rejections = 0;

  std::size_t size() const { return positions.size(); }
};

struct CloudSummary {
  double b0 = 0.0;
  std::optional<double> mean_nn_distance;  // absent for a single atom
};

// Gaussian clouds draw each coordinate from N(0, σ²); uniform_ball draws
// uniformly inside a sphere of radius σ. A candidate closer than
// min_separation to an accepted atom is redrawn, at most kRejectionBudget
// times per atom.
AtomCloud sample_cloud(const CloudParams& p);

// b0 = 3N/σ² for the Gaussian, 9N/σ² through the centre of the uniform ball.
double optical_thickness(std::size_t n, double sigma, Distribution d);

CloudSummary summarize(const AtomCloud& cloud);

double min_pair_distance(const AtomCloud& cloud);

// JSON: {n, sigma, distribution, seed, min_separation, positions: [[x,y,z],...]}
// with 17 significant digits.
std::string cloud_to_json(const AtomCloud& cloud);
AtomCloud cloud_from_json(std::string_view text);

}  // namespace dicke
