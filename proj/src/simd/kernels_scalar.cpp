#include "dicke/simd.hpp"

namespace dicke::simd::scalar {

void cmatvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const cplx* row = a + j * n;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double ar = row[m].real(), ai = row[m].imag();
      const double xr = x[m].real(), xi = x[m].imag();
      re += ar * xr - ai * xi;
      im += ar * xi + ai * xr;
    }
    y[j] = {re, im};
  }
}

SumStats sum_stats(const cplx* x, std::size_t n) {
  double sr = 0.0, si = 0.0, s2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sr += x[j].real();
    si += x[j].imag();
    s2 += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
  }
  return {{sr, si}, s2};
}

void caxpy(cplx s, const cplx* x, cplx* y, std::size_t n) {
  const double sr = s.real(), si = s.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    y[j] = {y[j].real() + sr * xr - si * xi, y[j].imag() + sr * xi + si * xr};
  }
}

}  // namespace dicke::simd::scalar
