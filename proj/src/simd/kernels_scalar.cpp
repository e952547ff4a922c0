#include "spectree/simd/kernels.hpp"

namespace spectree::simd::scalar {

// Complex values are treated as (re, im) pairs of doubles; this is the layout
// std::complex guarantees and the one the vector paths rely on.

void accumulate_scaled(Complex* out, const double* p, std::size_t n, Complex c) {
  double* o = reinterpret_cast<double*>(out);
  const double cr = c.real(), ci = c.imag();
  for (std::size_t i = 0; i < n; ++i) {
    o[2 * i] += cr * p[i];
    o[2 * i + 1] += ci * p[i];
  }
}

void accumulate_scaled2(Complex* out, Complex* dout, const double* p, std::size_t n, Complex c,
                        Complex dc) {
  double* o = reinterpret_cast<double*>(out);
  double* d = reinterpret_cast<double*>(dout);
  const double cr = c.real(), ci = c.imag();
  const double dr = dc.real(), di = dc.imag();
  for (std::size_t i = 0; i < n; ++i) {
    o[2 * i] += cr * p[i];
    o[2 * i + 1] += ci * p[i];
    d[2 * i] += dr * p[i];
    d[2 * i + 1] += di * p[i];
  }
}

void axpy(Complex* y, const Complex* x, std::size_t n, Complex a) {
  double* yy = reinterpret_cast<double*>(y);
  const double* xx = reinterpret_cast<const double*>(x);
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xx[2 * i], xi = xx[2 * i + 1];
    yy[2 * i] += ar * xr - ai * xi;
    yy[2 * i + 1] += ar * xi + ai * xr;
  }
}

}  // namespace spectree::simd::scalar
