#pragma once

// Test-only reference computations. Each one takes a route that shares no
// code with the implementation it checks (dense Eigen algebra, explicit
// operator matrices, eigendecomposition propagators).

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dicke/dynamics.hpp"
#include "dicke/kernel.hpp"

namespace oracle {

using dicke::cplx;
using dicke::CVector;

inline CVector random_state(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  CVector v(n);
  for (auto& x : v) {
    const double re = g(rng);
    x = {re, g(rng)};
  }
  return v;
}

inline Eigen::MatrixXcd kernel_matrix(const dicke::GreenKernel& k) {
  const auto n = static_cast<Eigen::Index>(k.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index m = 0; m < n; ++m) g(j, m) = k(j, m);
  return g;
}

// (iΔ − 1/2)I − (1/2)(G̃ − I)
inline Eigen::MatrixXcd system_matrix(const dicke::GreenKernel& k, double detuning) {
  const auto n = static_cast<Eigen::Index>(k.size());
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  return cplx{-0.5, detuning} * id - 0.5 * (kernel_matrix(k) - id);
}

inline CVector dense_rhs(const dicke::GreenKernel& k, const CVector& beta, double rabi, double detuning) {
  const auto n = static_cast<Eigen::Index>(k.size());
  Eigen::VectorXcd b = Eigen::Map<const Eigen::VectorXcd>(beta.data(), n);
  Eigen::VectorXcd out = system_matrix(k, detuning) * b - Eigen::VectorXcd::Constant(n, cplx{0.0, 0.5 * rabi});
  return CVector(out.data(), out.data() + n);
}

// Exact solution of dβ/dt = Mβ + d with β(0) = 0 and a rectangular drive,
// through M = V Λ V⁻¹.
class ExactPropagator {
 public:
  ExactPropagator(const dicke::GreenKernel& k, const dicke::DriveSchedule& s) : sched_(s) {
    const Eigen::MatrixXcd m = system_matrix(k, s.detuning);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    v_ = es.eigenvectors();
    lambda_ = es.eigenvalues();
    vinv_ = v_.inverse();
    const auto n = m.rows();
    drive_ = vinv_ * Eigen::VectorXcd::Constant(n, cplx{0.0, -0.5 * s.rabi});
  }

  // t_off is taken as given (already on the step grid).
  CVector at(double t, double t_off) const {
    const auto n = lambda_.size();
    Eigen::VectorXcd c(n);
    const double t_on = std::min(t, t_off);
    for (Eigen::Index i = 0; i < n; ++i) {
      // (e^{λt} − 1)/λ · d, then free decay after the cutoff.
      cplx amp = (std::exp(lambda_[i] * t_on) - 1.0) / lambda_[i] * drive_[i];
      if (t > t_off) amp *= std::exp(lambda_[i] * (t - t_off));
      c[i] = amp;
    }
    Eigen::VectorXcd beta = v_ * c;
    return CVector(beta.data(), beta.data() + n);
  }

 private:
  dicke::DriveSchedule sched_;
  Eigen::MatrixXcd v_, vinv_;
  Eigen::VectorXcd lambda_, drive_;
};

// Coefficients (phases stripped) of |s⟩ for s = 1..n−1, or |+⟩ for s = 0.
inline Eigen::VectorXd td_vector(std::size_t n, std::size_t s) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (s == 0) {
    c.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
    return c;
  }
  const double sd = static_cast<double>(s);
  for (std::size_t j = 0; j < s; ++j) c[static_cast<Eigen::Index>(j)] = 1.0 / std::sqrt(sd * (sd + 1.0));
  c[static_cast<Eigen::Index>(s)] = -sd / std::sqrt(sd * (sd + 1.0));
  return c;
}

// ⟨ψ|H_eff|ψ⟩/ħ in units of Γ for a TD state: (1/2)·cᵀ·G̃·c.
inline cplx heff_expectation(const dicke::GreenKernel& k, std::size_t s) {
  const Eigen::VectorXd c = td_vector(k.size(), s);
  const Eigen::VectorXcd cc = c.cast<cplx>();
  return 0.5 * (cc.transpose() * kernel_matrix(k) * cc)(0, 0);
}

// Collective spin moments on the full 2^N Hilbert space. Bit j of a basis
// index is atom j (1 = excited).
struct DenseMoments {
  double jx, jy, jz, jx2, jy2, jz2;
};

inline DenseMoments dense_spin_moments(const CVector& beta, cplx alpha, const std::vector<double>& phases) {
  const std::size_t n = beta.size();
  const std::size_t dim = std::size_t{1} << n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  psi[0] = alpha;
  for (std::size_t j = 0; j < n; ++j)
    psi[static_cast<Eigen::Index>(std::size_t{1} << j)] = beta[j] * std::exp(cplx{0.0, phases[j]});

  // J+ = Σ e^{iφ_j} σ_j†,  Jz = (1/2)Σ σ_z^(j)
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      jz(b, b) += (b & bit) ? 0.5 : -0.5;
      if (!(b & bit)) jp(b | bit, b) += std::exp(cplx{0.0, phases[j]});
    }
  }
  const Eigen::MatrixXcd jm = jp.adjoint();
  const Eigen::MatrixXcd jx = 0.5 * (jp + jm);
  const Eigen::MatrixXcd jy = (jp - jm) / cplx{0.0, 2.0};
  auto ev = [&](const Eigen::MatrixXcd& op) { return psi.dot(op * psi).real(); };
  return {ev(jx), ev(jy), ev(jz), ev(jx * jx), ev(jy * jy), ev(jz * jz)};
}

}  // namespace oracle
