// Compiled with -mavx2 -mfma; only reached when the CPU reports both.
#include <immintrin.h>

#include "dicke/simd.hpp"

namespace dicke::simd::avx2 {
namespace {

// One __m256d holds two complex doubles as [re0 im0 re1 im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

// Sum of the two complex lanes.
inline cplx hsum2(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

}  // namespace

void cmatvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t j = 0; j < n; ++j) {
    const cplx* row = a + j * n;
    // acc_r gathers a_re·[xr xi], acc_i gathers a_im·[xi xr]; the complex
    // product is acc_r ∓ acc_i lane-wise (addsub) once at the end.
    __m256d acc_r0 = _mm256_setzero_pd(), acc_i0 = _mm256_setzero_pd();
    __m256d acc_r1 = _mm256_setzero_pd(), acc_i1 = _mm256_setzero_pd();
    std::size_t m = 0;
    for (; m < n4; m += 4) {
      const __m256d a0 = load2(row + m);
      const __m256d a1 = load2(row + m + 2);
      const __m256d x0 = load2(x + m);
      const __m256d x1 = load2(x + m + 2);
      acc_r0 = _mm256_fmadd_pd(_mm256_movedup_pd(a0), x0, acc_r0);
      acc_i0 = _mm256_fmadd_pd(_mm256_permute_pd(a0, 0xF), _mm256_permute_pd(x0, 0x5), acc_i0);
      acc_r1 = _mm256_fmadd_pd(_mm256_movedup_pd(a1), x1, acc_r1);
      acc_i1 = _mm256_fmadd_pd(_mm256_permute_pd(a1, 0xF), _mm256_permute_pd(x1, 0x5), acc_i1);
    }
    for (; m < n2; m += 2) {
      const __m256d a0 = load2(row + m);
      const __m256d x0 = load2(x + m);
      acc_r0 = _mm256_fmadd_pd(_mm256_movedup_pd(a0), x0, acc_r0);
      acc_i0 = _mm256_fmadd_pd(_mm256_permute_pd(a0, 0xF), _mm256_permute_pd(x0, 0x5), acc_i0);
    }
    const __m256d acc = _mm256_addsub_pd(_mm256_add_pd(acc_r0, acc_r1), _mm256_add_pd(acc_i0, acc_i1));
    cplx sum = hsum2(acc);
    if (m < n) sum += row[m] * x[m];
    y[j] = sum;
  }
}

SumStats sum_stats(const cplx* x, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d s = _mm256_setzero_pd();
  __m256d q = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j < n2; j += 2) {
    const __m256d v = load2(x + j);
    s = _mm256_add_pd(s, v);
    q = _mm256_fmadd_pd(v, v, q);
  }
  cplx sum = hsum2(s);
  const cplx sq = hsum2(q);
  double s2 = sq.real() + sq.imag();
  if (j < n) {
    sum += x[j];
    s2 += std::norm(x[j]);
  }
  return {sum, s2};
}

void caxpy(cplx s, const cplx* x, cplx* y, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t{1};
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  std::size_t j = 0;
  for (; j < n2; j += 2) {
    const __m256d v = load2(x + j);
    const __m256d prod = _mm256_fmaddsub_pd(sr, v, _mm256_mul_pd(si, _mm256_permute_pd(v, 0x5)));
    double* out = reinterpret_cast<double*>(y + j);
    _mm256_storeu_pd(out, _mm256_add_pd(_mm256_loadu_pd(out), prod));
  }
  if (j < n) y[j] += s * x[j];
}

}  // namespace dicke::simd::avx2
