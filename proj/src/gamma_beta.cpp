#include "spectree/gamma_beta.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "spectree/error.hpp"

namespace spectree {

namespace {

constexpr int kMaxTerms = 16;

// Maclaurin coefficients of Phi(x) = 2 asin(x/2) (odd powers only).
std::array<double, kMaxTerms + 2> phi_series() {
  std::array<double, kMaxTerms + 2> s{};
  // asin(y) = sum_m (2m)! / (4^m (m!)^2 (2m+1)) y^{2m+1}
  double c = 1.0;  // (2m)! / (4^m (m!)^2)
  for (int m = 0; 2 * m + 1 < static_cast<int>(s.size()); ++m) {
    if (m > 0) c *= (2.0 * m - 1.0) / (2.0 * m);
    s[2 * m + 1] = 2.0 * c / (2.0 * m + 1.0) / std::pow(2.0, 2 * m + 1);
  }
  return s;
}

// Maclaurin coefficients of (4 - x^2)^{-1/2} (even powers only).
std::array<double, kMaxTerms + 2> inv_sqrt_series() {
  std::array<double, kMaxTerms + 2> q{};
  double c = 1.0;  // binom(2n, n) / 4^n
  for (int n = 0; 2 * n < static_cast<int>(q.size()); ++n) {
    if (n > 0) c *= (2.0 * n - 1.0) / (2.0 * n);
    q[2 * n] = 0.5 * c / std::pow(4.0, n);
  }
  return q;
}

}  // namespace

std::pair<Complex, Complex> bracket_series(int a, Complex lambda, int terms) {
  if (terms < 1 || terms > kMaxTerms)
    throw Error(ErrorCode::InvalidParameter, "series length outside 1..16");
  static const auto s = phi_series();
  static const auto q = inv_sqrt_series();
  // e_m: coefficients of exp(i a Phi(x)); m e_m = sum_i i * (i a s_i) e_{m-i}.
  std::array<Complex, kMaxTerms + 2> e{};
  e[0] = 1.0;
  for (int m = 1; m <= terms; ++m) {
    Complex acc{};
    for (int i = 1; i <= m; ++i) acc += static_cast<double>(i) * kI * (a * s[i]) * e[m - i];
    e[m] = acc / static_cast<double>(m);
  }
  // f_a = ((E - 1)/x) * (4 - x^2)^{-1/2}; coefficient of x^m is sum_{p + 2n = m} e_{p+1} q_{2n}.
  Complex f{}, df{};
  Complex xm = 1.0, xm1 = 0.0;  // x^m and x^{m-1}
  for (int m = 0; m < terms; ++m) {
    Complex c{};
    for (int n2 = 0; n2 <= m; n2 += 2) c += e[m - n2 + 1] * q[n2];
    f += c * xm;
    if (m > 0) df += static_cast<double>(m) * c * xm1;
    xm1 = xm;
    xm *= lambda;
  }
  return {f, df};
}

std::pair<Complex, Complex> bracket_exact(int a, Complex lambda) {
  const Complex r = std::sqrt(4.0 - lambda * lambda);
  const Complex phi = 2.0 * std::asin(0.5 * lambda);
  const Complex E = std::exp(kI * static_cast<double>(a) * phi);
  const Complex h = 1.0 / (lambda * r);
  const Complex dphi = 2.0 / r;
  const Complex dh = -(4.0 - 2.0 * lambda * lambda) / (lambda * lambda * r * r * r);
  const Complex f = (E - 1.0) * h;
  const Complex df = kI * static_cast<double>(a) * dphi * E * h + (E - 1.0) * dh;
  return {f, df};
}

std::pair<Complex, Complex> bracket_with_derivative(int a, Complex lambda) {
  if (a == 0) return {Complex{}, Complex{}};
  if (!(std::abs(lambda) < 2.0))
    throw Error(ErrorCode::OutOfDisk, "bracket functions need |lambda| < 2");
  if (std::abs(lambda) < kSeriesRadius) return bracket_series(a, lambda);
  return bracket_exact(a, lambda);
}

Complex bracket(int a, Complex lambda) { return bracket_with_derivative(a, lambda).first; }

GammaBeta gamma_beta(int j, int l, Complex lambda) {
  GammaBeta g;
  g.j = j;
  g.l = l;
  g.lambda = lambda;
  g.gamma = bracket(j + l + 2, lambda);
  g.beta = bracket(std::abs(j - l), lambda);
  return g;
}

}  // namespace spectree
