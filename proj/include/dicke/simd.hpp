#pragma once

// Data-parallel inner loops of the integrator.
//
// Every kernel has a portable scalar reference in dicke::simd::scalar and,
// on x86-64, an AVX2/FMA variant in dicke::simd::avx2. The free functions
// at namespace scope dispatch on a Backend chosen once at startup from the
// CPU feature flags; DICKE_SIMD=scalar|avx2 in the environment overrides it.
// The AVX2 variants reassociate sums, so results agree with the scalar
// reference to rounding, not bitwise.

#include <cstddef>
#include <span>
#include <string_view>

#include "dicke/types.hpp"

namespace dicke::simd {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend b);

bool avx2_supported();

// Backend used by the dispatching overloads below.
Backend active_backend();

// Forces a backend; throws InvalidParam if it is not supported on this CPU.
void set_active_backend(Backend b);

struct SumStats {
  cplx sum;          // Σ x_j
  double sum_abs2;   // Σ |x_j|²
};

// y = A·x, A row-major n×n.
void cmatvec(Backend b, std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y);
SumStats sum_stats(Backend b, std::span<const cplx> x);
// y += s·x
void caxpy(Backend b, cplx s, std::span<const cplx> x, std::span<cplx> y);

inline void cmatvec(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y) {
  cmatvec(active_backend(), a, x, y);
}
inline SumStats sum_stats(std::span<const cplx> x) { return sum_stats(active_backend(), x); }
inline void caxpy(cplx s, std::span<const cplx> x, std::span<cplx> y) { caxpy(active_backend(), s, x, y); }

namespace scalar {
void cmatvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);
SumStats sum_stats(const cplx* x, std::size_t n);
void caxpy(cplx s, const cplx* x, cplx* y, std::size_t n);
}  // namespace scalar

#if defined(DICKE_HAVE_AVX2_TU)
namespace avx2 {
void cmatvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);
SumStats sum_stats(const cplx* x, std::size_t n);
void caxpy(cplx s, const cplx* x, cplx* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace dicke::simd
