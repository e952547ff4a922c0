#include "spectree/spectral_point.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spectree/error.hpp"

namespace spectree {

namespace {

constexpr double kOnSpectrumTol = 1e-12;
constexpr double kBranchTol = 1e-300;

// Distance from z to the real segment [a, b].
double distance_to_segment(Complex z, double a, double b) {
  const double x = std::clamp(z.real(), a, b);
  return std::abs(z - Complex(x, 0.0));
}

}  // namespace

const char* to_string(Threshold th) { return th == Threshold::Minus ? "minus" : "plus"; }

double t_minus(int k) { return k + 1.0 - 2.0 * std::sqrt(static_cast<double>(k)); }
double t_plus(int k) { return k + 1.0 + 2.0 * std::sqrt(static_cast<double>(k)); }

SpectralPoint SpectralPoint::from_z(int k, Complex z) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "k must be >= 1");
  if (distance_to_segment(z, t_minus(k), t_plus(k)) < kOnSpectrumTol)
    throw Error(ErrorCode::OnSpectrum, "z lies on the essential spectrum");
  const double sk = std::sqrt(static_cast<double>(k));
  SpectralPoint sp;
  sp.k = k;
  sp.z = z;
  sp.omega = z;
  sp.u = (z + 2.0 * sk - (k + 1.0)) / sk;
  // w + 1/w = 2 - u; the two roots are reciprocal, keep the one inside the disk.
  const Complex b = 2.0 - sp.u;
  const Complex disc = std::sqrt(b * b - 4.0);
  Complex w1 = 0.5 * (b - disc), w2 = 0.5 * (b + disc);
  Complex w = std::abs(w1) < std::abs(w2) ? w1 : w2;
  if (std::abs(w) >= 1.0 - 1e-14)
    throw Error(ErrorCode::OnSpectrum, "no root with |w| < 1 (z on the spectrum)");
  // Refine with one Newton step on w^2 - b w + 1 = 0 to recover cancellation.
  w -= (w * w - b * w + 1.0) / (2.0 * w - b);
  sp.w = w;
  sp.phi = -kI * std::log(w);
  sp.lambda = 2.0 * std::sin(0.5 * sp.phi);
  return sp;
}

SpectralPoint SpectralPoint::from_lambda(int k, Complex lambda, Threshold th, double eps0) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "k must be >= 1");
  if (!(std::abs(lambda) < eps0))
    throw Error(ErrorCode::OutOfDisk, "|lambda| = " + std::to_string(std::abs(lambda)) +
                                          " outside the working disk of radius " +
                                          std::to_string(eps0));
  if (!(std::abs(lambda) < 2.0))
    throw Error(ErrorCode::OutOfDisk, "|lambda| must stay below 2 for the principal arcsin");
  const double sk = std::sqrt(static_cast<double>(k));
  SpectralPoint sp;
  sp.k = k;
  sp.threshold = th;
  sp.sign = (th == Threshold::Minus) ? 1 : -1;
  sp.lambda = lambda;
  sp.u = lambda * lambda;
  sp.omega = t_minus(k) + sp.u * sk;
  sp.z = (th == Threshold::Minus) ? sp.omega : t_plus(k) - sp.u * sk;
  sp.phi = 2.0 * std::asin(0.5 * lambda);
  sp.w = std::exp(kI * sp.phi);
  return sp;
}

Complex SpectralPoint::two_sin_phi() const {
  if (std::abs(w) < kBranchTol) throw Error(ErrorCode::BranchFailure, "w vanished");
  return kI * (1.0 / w - w);
}

double printed_sine_projection_constant() { return 0.5 * std::sqrt(2.0 / std::numbers::pi); }

Complex fourier_coefficient(int n, const SpectralPoint& sp) {
  const Complex s = sp.two_sin_phi();
  if (std::abs(s) < 1e-15) throw Error(ErrorCode::BranchFailure, "2 sin(phi) = 0");
  return kI * std::pow(sp.w, std::abs(n)) / s;
}

Complex sine_projected_coefficient(int j, int l, const SpectralPoint& sp, double c) {
  const Complex s = sp.two_sin_phi();
  if (std::abs(s) < 1e-15) throw Error(ErrorCode::BranchFailure, "2 sin(phi) = 0");
  return c * kI * (std::pow(sp.w, std::abs(j - l)) - std::pow(sp.w, j + l + 2)) / s;
}

}  // namespace spectree
