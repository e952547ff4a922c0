#include <immintrin.h>

#include "spectree/simd/kernels.hpp"

// Built with -mavx2 -mfma; only reached after the runtime CPU check.

namespace spectree::simd::avx2 {

namespace {

// (p0, p1) -> (p0, p0, p1, p1), matching two interleaved complex lanes.
inline __m256d widen_pair(const double* p) {
  __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(p));
  return _mm256_permute4x64_pd(v, 0x50);
}

}  // namespace

void accumulate_scaled(Complex* out, const double* p, std::size_t n, Complex c) {
  double* o = reinterpret_cast<double*>(out);
  const __m256d cv = _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(o + 2 * i);
    __m256d b = _mm256_loadu_pd(o + 2 * i + 4);
    a = _mm256_fmadd_pd(widen_pair(p + i), cv, a);
    b = _mm256_fmadd_pd(widen_pair(p + i + 2), cv, b);
    _mm256_storeu_pd(o + 2 * i, a);
    _mm256_storeu_pd(o + 2 * i + 4, b);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d a = _mm256_loadu_pd(o + 2 * i);
    _mm256_storeu_pd(o + 2 * i, _mm256_fmadd_pd(widen_pair(p + i), cv, a));
  }
  for (; i < n; ++i) {
    o[2 * i] += c.real() * p[i];
    o[2 * i + 1] += c.imag() * p[i];
  }
}

void accumulate_scaled2(Complex* out, Complex* dout, const double* p, std::size_t n, Complex c,
                        Complex dc) {
  double* o = reinterpret_cast<double*>(out);
  double* d = reinterpret_cast<double*>(dout);
  const __m256d cv = _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
  const __m256d dv = _mm256_setr_pd(dc.real(), dc.imag(), dc.real(), dc.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d pv = widen_pair(p + i);
    _mm256_storeu_pd(o + 2 * i, _mm256_fmadd_pd(pv, cv, _mm256_loadu_pd(o + 2 * i)));
    _mm256_storeu_pd(d + 2 * i, _mm256_fmadd_pd(pv, dv, _mm256_loadu_pd(d + 2 * i)));
  }
  for (; i < n; ++i) {
    o[2 * i] += c.real() * p[i];
    o[2 * i + 1] += c.imag() * p[i];
    d[2 * i] += dc.real() * p[i];
    d[2 * i + 1] += dc.imag() * p[i];
  }
}

void axpy(Complex* y, const Complex* x, std::size_t n, Complex a) {
  double* yy = reinterpret_cast<double*>(y);
  const double* xx = reinterpret_cast<const double*>(x);
  const __m256d ar = _mm256_set1_pd(a.real());
  // (-ai, +ai) pattern so that swap(x) * aiv gives (-ai*xi, ai*xr)
  const __m256d aiv = _mm256_setr_pd(-a.imag(), a.imag(), -a.imag(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xx + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    __m256d yv = _mm256_loadu_pd(yy + 2 * i);
    yv = _mm256_fmadd_pd(ar, xv, yv);
    yv = _mm256_fmadd_pd(aiv, xs, yv);
    _mm256_storeu_pd(yy + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const double xr = xx[2 * i], xi = xx[2 * i + 1];
    yy[2 * i] += a.real() * xr - a.imag() * xi;
    yy[2 * i + 1] += a.real() * xi + a.imag() * xr;
  }
}

}  // namespace spectree::simd::avx2
