#include "dicke/kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <ostream>
#include <thread>

#include <Eigen/Dense>

#include "dicke/errors.hpp"

namespace dicke {

GreenKernel::GreenKernel(std::size_t n, Vec3 k0_dir, std::vector<cplx> data)
    : n_(n), k0_dir_(k0_dir), data_(std::move(data)) {
  if (data_.size() != n_ * n_) throw DimensionMismatch("GreenKernel: data is not n×n");
}

namespace {

// Pairs (j, m > j) for rows [begin, end). The bare coupling is evaluated
// once; (j, m) and (m, j) differ only by the sign of the drive phase. Row j
// only writes (j, m) and (m, j) for m > j, so disjoint row blocks never
// touch the same entry.
void fill_rows(const AtomCloud& cloud, const Vec3& dir, std::vector<cplx>& g, std::size_t begin,
               std::size_t end) {
  const auto& r = cloud.positions;
  const std::size_t n = r.size();
  for (std::size_t j = begin; j < end; ++j) {
    g[j * n + j] = 1.0;
    for (std::size_t m = j + 1; m < n; ++m) {
      const Vec3 d = r[j] - r[m];
      const double dist = d.norm();
      if (dist == 0.0 || dist < cloud.min_separation) {
        throw SingularPair("atoms " + std::to_string(j) + " and " + std::to_string(m) + " at distance " +
                           std::to_string(dist) + " below min_separation");
      }
      const double inv = 1.0 / dist;
      const cplx bare{std::sin(dist) * inv, -std::cos(dist) * inv};
      const double phase = dot(dir, d);
      const double c = std::cos(phase), sn = std::sin(phase);
      g[j * n + m] = bare * cplx{c, -sn};
      g[m * n + j] = bare * cplx{c, sn};
    }
  }
}

}  // namespace

GreenKernel build_kernel(const AtomCloud& cloud, Vec3 k0_dir, unsigned threads) {
  if (std::abs(k0_dir.norm() - 1.0) > 1e-12) throw InvalidParam("k0_dir must be a unit vector");
  const std::size_t n = cloud.size();
  std::vector<cplx> g(n * n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    fill_rows(cloud, k0_dir, g, 0, n);
  } else {
    // Row j costs n − j pair evaluations; split so blocks carry equal work.
    std::vector<std::size_t> cuts{0};
    for (unsigned t = 1; t < threads; ++t) {
      const double frac = static_cast<double>(t) / threads;
      cuts.push_back(static_cast<std::size_t>(static_cast<double>(n) * (1.0 - std::sqrt(1.0 - frac))));
    }
    cuts.push_back(n);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          fill_rows(cloud, k0_dir, g, cuts[t], cuts[t + 1]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return GreenKernel(n, k0_dir, std::move(g));
}

CollectiveRates collective_rates(const GreenKernel& kernel) {
  const std::size_t n = kernel.size();
  CollectiveRates out;
  if (n == 0) return out;

  // G̃_jm + G̃_mj = 2 G_jm cos[k0·(r_j − r_m)] = 2(Γ̃_jm − iΩ̃_jm).
  auto dressed = [&](std::size_t j, std::size_t m) { return 0.5 * (kernel(j, m) + kernel(m, j)); };

  double re_sum = 0.0, im_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m)
      if (m != j) {
        re_sum += kernel(j, m).real();
        im_sum += kernel(j, m).imag();
      }
  const double nn = static_cast<double>(n);
  out.gamma_plus = 1.0 + re_sum / nn;
  out.omega_plus = -im_sum / (2.0 * nn);

  out.gamma_s.reserve(n - 1);
  out.omega_s.reserve(n - 1);
  // pair_re/pair_im: Σ over ordered pairs j≠m within the first s atoms.
  double pair_re = 0.0, pair_im = 0.0;
  for (std::size_t s = 1; s < n; ++s) {
    double edge_re = 0.0, edge_im = 0.0;  // Σ_{j<=s} (Γ̃, −Ω̃)_{j,s+1}
    for (std::size_t j = 0; j < s; ++j) {
      const cplx g = dressed(j, s);
      edge_re += g.real();
      edge_im += g.imag();
    }
    const double sd = static_cast<double>(s);
    out.gamma_s.push_back(1.0 + (pair_re / sd - 2.0 * edge_re) / (sd + 1.0));
    out.omega_s.push_back(-(pair_im / sd - 2.0 * edge_im) / (2.0 * (sd + 1.0)));
    pair_re += 2.0 * edge_re;
    pair_im += 2.0 * edge_im;
  }
  return out;
}

std::vector<double> kernel_spectrum_check(const GreenKernel& kernel, std::size_t count, std::size_t cap) {
  const std::size_t n = kernel.size();
  if (n > cap) throw InvalidParam("kernel_spectrum_check: N=" + std::to_string(n) + " above cap");
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd h(nn, nn);
  for (Eigen::Index j = 0; j < nn; ++j)
    for (Eigen::Index m = 0; m < nn; ++m) h(j, m) = 0.5 * (kernel(j, m) + std::conj(kernel(m, j)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < ev.size() && out.size() < count; ++i) out.push_back(ev[i]);
  return out;
}

void dump_kernel(const GreenKernel& kernel, std::ostream& os) {
  static_assert(sizeof(float) == 4);
  for (const cplx& v : kernel.data()) {
    const float parts[2] = {static_cast<float>(v.real()), static_cast<float>(v.imag())};
    for (float f : parts) {
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
      os.write(reinterpret_cast<const char*>(&bits), 4);
    }
  }
}

}  // namespace dicke
