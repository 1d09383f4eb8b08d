#include <atomic>
#include <cstdlib>
#include <string>

#include "dicke/errors.hpp"
#include "dicke/simd.hpp"

namespace dicke::simd {
namespace {

Backend detect() {
  if (const char* env = std::getenv("DICKE_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && avx2_supported()) return Backend::avx2;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> b{detect()};
  return b;
}

void check_sizes(std::size_t a, std::size_t x, std::size_t y) {
  if (a != x * x || y != x) throw DimensionMismatch("cmatvec: matrix/vector sizes disagree");
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(DICKE_HAVE_AVX2_TU)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) throw InvalidParam("AVX2/FMA not supported on this CPU");
  active().store(b, std::memory_order_relaxed);
}

void cmatvec(Backend b, std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y) {
  check_sizes(a.size(), x.size(), y.size());
#if defined(DICKE_HAVE_AVX2_TU)
  if (b == Backend::avx2) return avx2::cmatvec(a.data(), x.data(), y.data(), x.size());
#endif
  (void)b;
  scalar::cmatvec(a.data(), x.data(), y.data(), x.size());
}

SumStats sum_stats(Backend b, std::span<const cplx> x) {
#if defined(DICKE_HAVE_AVX2_TU)
  if (b == Backend::avx2) return avx2::sum_stats(x.data(), x.size());
#endif
  (void)b;
  return scalar::sum_stats(x.data(), x.size());
}

void caxpy(Backend b, cplx s, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size()) throw DimensionMismatch("caxpy: vector sizes disagree");
#if defined(DICKE_HAVE_AVX2_TU)
  if (b == Backend::avx2) return avx2::caxpy(s, x.data(), y.data(), x.size());
#endif
  (void)b;
  scalar::caxpy(s, x.data(), y.data(), x.size());
}

}  // namespace dicke::simd
