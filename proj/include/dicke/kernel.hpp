#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "dicke/cloud.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Phase-dressed scalar Green's matrix G̃ (units of Γ), dense row-major.
//
//   G̃_jj = 1
//   G̃_jm = [sin(r)/r − i cos(r)/r] · exp(−i k̂·(r_j − r_m)),  r = k0·|r_j − r_m|
//
// G̃ = D·G·D† with D = diag(exp(−i k̂·r_j)) and G the bare complex-symmetric
// coupling. The drive phase flips sign under j ↔ m, so G̃ itself is neither
// symmetric nor Hermitian; its Hermitian part D·Re(G)·D† carries the decay
// and is positive semidefinite.
class GreenKernel {
 public:
  GreenKernel(std::size_t n, Vec3 k0_dir, std::vector<cplx> data);

  std::size_t size() const { return n_; }
  const Vec3& k0_dir() const { return k0_dir_; }
  cplx operator()(std::size_t j, std::size_t m) const { return data_[j * n_ + m]; }
  std::span<const cplx> data() const { return data_; }

 private:
  std::size_t n_;
  Vec3 k0_dir_;
  std::vector<cplx> data_;
};

inline constexpr Vec3 kDefaultDriveDir{0.0, 0.0, 1.0};

// Throws InvalidParam for a non-unit direction and SingularPair when two
// atoms sit closer than the cloud's min_separation (or coincide).
// threads > 1 splits assembly over row blocks.
GreenKernel build_kernel(const AtomCloud& cloud, Vec3 k0_dir = kDefaultDriveDir, unsigned threads = 1);

// Collective rates in units of Γ. gamma_s[s-1], omega_s[s-1] belong to the
// antisymmetric state built on the first s+1 atoms (cloud order).
struct CollectiveRates {
  double gamma_plus = 1.0;
  double omega_plus = 0.0;
  std::vector<double> gamma_s;
  std::vector<double> omega_s;
};

// Rates are defined through ⟨ψ|H_eff|ψ⟩/ħ = Γ_ψ/2 − iΩ_ψ for ψ = |+⟩, |s⟩.
CollectiveRates collective_rates(const GreenKernel& kernel);

inline constexpr std::size_t kSpectrumCap = 2000;

// Smallest `count` eigenvalues (ascending) of the Hermitian part
// (G̃ + G̃†)/2, i.e. of the sinc matrix Γ_jm. Throws InvalidParam above
// `cap` atoms.
std::vector<double> kernel_spectrum_check(const GreenKernel& kernel, std::size_t count = 1,
                                          std::size_t cap = kSpectrumCap);

// Row-major little-endian (float re, float im) pairs.
void dump_kernel(const GreenKernel& kernel, std::ostream& os);

}  // namespace dicke
