#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace dicke {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Lengths are stored pre-multiplied by k0, so all vectors here are
// dimensionless.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

}  // namespace dicke
