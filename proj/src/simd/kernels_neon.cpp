#include <arm_neon.h>

#include "spectree/simd/kernels.hpp"

namespace spectree::simd::neon {

void accumulate_scaled(Complex* out, const double* p, std::size_t n, Complex c) {
  double* o = reinterpret_cast<double*>(out);
  const double cc[2] = {c.real(), c.imag()};
  const float64x2_t cv = vld1q_f64(cc);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t a = vld1q_f64(o + 2 * i);
    vst1q_f64(o + 2 * i, vfmaq_f64(a, vdupq_n_f64(p[i]), cv));
  }
}

void accumulate_scaled2(Complex* out, Complex* dout, const double* p, std::size_t n, Complex c,
                        Complex dc) {
  double* o = reinterpret_cast<double*>(out);
  double* d = reinterpret_cast<double*>(dout);
  const double cc[2] = {c.real(), c.imag()};
  const double dd[2] = {dc.real(), dc.imag()};
  const float64x2_t cv = vld1q_f64(cc);
  const float64x2_t dv = vld1q_f64(dd);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t pv = vdupq_n_f64(p[i]);
    vst1q_f64(o + 2 * i, vfmaq_f64(vld1q_f64(o + 2 * i), pv, cv));
    vst1q_f64(d + 2 * i, vfmaq_f64(vld1q_f64(d + 2 * i), pv, dv));
  }
}

void axpy(Complex* y, const Complex* x, std::size_t n, Complex a) {
  double* yy = reinterpret_cast<double*>(y);
  const double* xx = reinterpret_cast<const double*>(x);
  const float64x2_t ar = vdupq_n_f64(a.real());
  const double ai_pat[2] = {-a.imag(), a.imag()};
  const float64x2_t aiv = vld1q_f64(ai_pat);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xx + 2 * i);
    const float64x2_t xs = vextq_f64(xv, xv, 1);
    float64x2_t yv = vld1q_f64(yy + 2 * i);
    yv = vfmaq_f64(yv, ar, xv);
    yv = vfmaq_f64(yv, aiv, xs);
    vst1q_f64(yy + 2 * i, yv);
  }
}

}  // namespace spectree::simd::neon
