#pragma once

#include <utility>

#include "spectree/types.hpp"

namespace spectree {

/// Below this |lambda| the bracket functions switch to their Maclaurin series.
inline constexpr double kSeriesRadius = 1e-3;
inline constexpr int kSeriesTerms = 8;

/// f_a(lambda) = (e^{i a Phi(lambda)} - 1) / (lambda sqrt(4 - lambda^2)),
/// Phi(lambda) = 2 asin(lambda / 2). Entire in |lambda| < 2 once the removable
/// singularity at 0 is filled in; f_a(0) = i a / 2.
Complex bracket(int a, Complex lambda);

/// f_a and d f_a / d lambda.
std::pair<Complex, Complex> bracket_with_derivative(int a, Complex lambda);

/// Closed-form and series evaluations, exposed for the seam tests.
std::pair<Complex, Complex> bracket_exact(int a, Complex lambda);
std::pair<Complex, Complex> bracket_series(int a, Complex lambda, int terms = kSeriesTerms);

struct GammaBeta {
  int j = 0;
  int l = 0;
  Complex lambda{};
  Complex gamma{};  // f_{j+l+2}
  Complex beta{};   // f_{|j-l|}
};

GammaBeta gamma_beta(int j, int l, Complex lambda);

}  // namespace spectree
