#pragma once

#include "spectree/types.hpp"

namespace spectree {

enum class Threshold { Minus, Plus };

const char* to_string(Threshold th);

/// t_-(k) = k + 1 - 2 sqrt(k), t_+(k) = k + 1 + 2 sqrt(k).
double t_minus(int k);
double t_plus(int k);

/// Coupled coordinates of a spectral parameter.
///
/// `z` is the point the caller asked about. `omega` is where the free
/// resolvent is actually evaluated: omega = z at the minus threshold and
/// omega = 2(k+1) - z at the plus threshold, which moves z_{t+}(lambda) onto
/// z_{t-}(lambda). u, phi and w = e^{i phi} always refer to omega:
///   u = (omega + 2 sqrt(k) - (k+1)) / sqrt(k) = 2 - 2 cos(phi),
///   lambda = 2 sin(phi / 2), so u = lambda^2.
struct SpectralPoint {
  int k = 1;
  Threshold threshold = Threshold::Minus;
  int sign = 1;  // +1 at the minus threshold, -1 at the plus threshold
  Complex lambda{};
  Complex z{};
  Complex omega{};
  Complex u{};
  Complex phi{};
  Complex w{};

  /// Physical-sheet point from z off [t_-, t_+]; Im(phi) > 0, |w| < 1.
  static SpectralPoint from_z(int k, Complex z);

  /// z_{t-}(lambda) = t_- + lambda^2 sqrt(k) or z_{t+}(lambda) = t_+ - lambda^2 sqrt(k),
  /// phi = 2 asin(lambda / 2) on the principal branch. Requires |lambda| < eps0.
  static SpectralPoint from_lambda(int k, Complex lambda, Threshold th, double eps0 = 0.3);

  /// 2 sin(phi) = i (1/w - w) = lambda sqrt(4 - lambda^2).
  Complex two_sin_phi() const;
};

/// Prefactor multiplying the sine-projected bracket. Fixed by quadrature, see
/// tests/test_resolvent.cpp; the alternative printed normalization is kept
/// for the calibration record.
inline constexpr double kSineProjectionConstant = 1.0;
double printed_sine_projection_constant();  // 0.5 * sqrt(2 / pi)

/// i e^{i|n| phi} / (2 sin phi), the n-th Fourier coefficient of
/// (2 - 2 cos(theta) - u)^{-1}.
Complex fourier_coefficient(int n, const SpectralPoint& sp);

/// c * i (e^{i|j-l| phi} - e^{i(j+l+2) phi}) / (2 sin phi), the coefficient
/// (1/pi) int sin((j+1)t) sin((l+1)t) / (2 - 2cos t - u) dt for c = 1.
Complex sine_projected_coefficient(int j, int l, const SpectralPoint& sp,
                                   double c = kSineProjectionConstant);

}  // namespace spectree
