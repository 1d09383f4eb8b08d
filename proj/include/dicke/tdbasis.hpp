#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

// Timed-Dicke coordinates of a single-excitation state. The drive phases
// exp(i k0·r_j) live in the basis kets, so the projections act directly on
// the stored β_j.
struct TDDecomposition {
  cplx beta_plus;
  std::vector<cplx> gamma;  // γ_s at index s-1; empty unless requested
  double p_plus = 0.0;
  double p_sub = 0.0;
  double total = 0.0;        // Σ|β_j|²
  std::optional<double> f_sr;   // absent when Σ|β_j|² = 0
  std::optional<double> f_sub;
};

// β+ = Σβ_j/√N,  γ_s = (Σ_{j<=s} β_j − s·β_{s+1}) / √(s(s+1)).
TDDecomposition project(std::span<const cplx> beta, bool keep_gamma = true);

// Rows: uniform 1/√N, then the N−1 antisymmetric patterns. Row-major N×N.
std::vector<double> td_basis_matrix(std::size_t n);

struct BasisReport {
  std::size_t n = 0;
  double orthonormality_error = 0.0;  // max |U·Uᵀ − I|
  double completeness_error = 0.0;    // max |Uᵀ·U − I|
  bool passed = false;
};

inline constexpr std::size_t kBasisCheckCap = 2000;

BasisReport basis_checks(std::size_t n, double tolerance = 1e-12);

struct PermutationReport {
  double p_plus_diff = 0.0;
  double p_sub_diff = 0.0;  // relative to Σ|β|²
  double f_sr_diff = 0.0;
  bool gamma_changed = false;
  bool invariant = false;
};

// perm[j] is the new label of atom j.
PermutationReport permutation_invariance_check(std::span<const cplx> beta, std::span<const std::size_t> perm,
                                               double tolerance = 1e-12);

}  // namespace dicke
