#include "dicke/tdbasis.hpp"

#include <algorithm>
#include <cmath>

#include "dicke/errors.hpp"
#include "dicke/simd.hpp"

namespace dicke {

TDDecomposition project(std::span<const cplx> beta, bool keep_gamma) {
  const std::size_t n = beta.size();
  if (n == 0) throw InvalidParam("project: empty state");
  TDDecomposition d;
  if (keep_gamma) d.gamma.reserve(n - 1);

  cplx prefix = beta[0];
  double p_sub = 0.0;
  for (std::size_t s = 1; s < n; ++s) {
    const double sd = static_cast<double>(s);
    const cplx g = (prefix - sd * beta[s]) / std::sqrt(sd * (sd + 1.0));
    p_sub += std::norm(g);
    if (keep_gamma) d.gamma.push_back(g);
    prefix += beta[s];
  }
  d.beta_plus = prefix / std::sqrt(static_cast<double>(n));
  d.p_plus = std::norm(d.beta_plus);
  d.p_sub = p_sub;
  d.total = simd::sum_stats(beta).sum_abs2;
  const double denom = d.p_plus + d.p_sub;
  if (denom > 0.0) {
    d.f_sr = d.p_plus / denom;
    d.f_sub = 1.0 - *d.f_sr;
  }
  return d;
}

std::vector<double> td_basis_matrix(std::size_t n) {
  std::vector<double> u(n * n, 0.0);
  const double uni = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) u[j] = uni;
  for (std::size_t s = 1; s < n; ++s) {
    const double sd = static_cast<double>(s);
    const double norm = 1.0 / std::sqrt(sd * (sd + 1.0));
    double* row = u.data() + s * n;
    for (std::size_t j = 0; j < s; ++j) row[j] = norm;
    row[s] = -sd * norm;
  }
  return u;
}

BasisReport basis_checks(std::size_t n, double tolerance) {
  if (n < 1 || n > kBasisCheckCap) throw InvalidParam("basis_checks: n out of range");
  const auto u = td_basis_matrix(n);
  BasisReport rep;
  rep.n = n;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double rows = 0.0, cols = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        rows += u[a * n + k] * u[b * n + k];
        cols += u[k * n + a] * u[k * n + b];
      }
      const double target = a == b ? 1.0 : 0.0;
      rep.orthonormality_error = std::max(rep.orthonormality_error, std::abs(rows - target));
      rep.completeness_error = std::max(rep.completeness_error, std::abs(cols - target));
    }
  }
  rep.passed = rep.orthonormality_error <= tolerance && rep.completeness_error <= tolerance;
  return rep;
}

PermutationReport permutation_invariance_check(std::span<const cplx> beta, std::span<const std::size_t> perm,
                                               double tolerance) {
  const std::size_t n = beta.size();
  if (perm.size() != n) throw DimensionMismatch("permutation length differs from state size");
  std::vector<cplx> permuted(n);
  std::vector<bool> seen(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (perm[j] >= n || seen[perm[j]]) throw InvalidParam("not a permutation");
    seen[perm[j]] = true;
    permuted[perm[j]] = beta[j];
  }
  const auto a = project(beta);
  const auto b = project(permuted);
  PermutationReport rep;
  const double scale = std::max(a.total, 1e-300);
  rep.p_plus_diff = std::abs(a.p_plus - b.p_plus) / scale;
  rep.p_sub_diff = std::abs(a.p_sub - b.p_sub) / scale;
  if (a.f_sr && b.f_sr) rep.f_sr_diff = std::abs(*a.f_sr - *b.f_sr);
  rep.gamma_changed = a.gamma != b.gamma;
  rep.invariant = rep.p_plus_diff <= tolerance && rep.p_sub_diff <= tolerance && rep.f_sr_diff <= tolerance &&
                  a.f_sr.has_value() == b.f_sr.has_value();
  return rep;
}

}  // namespace dicke
