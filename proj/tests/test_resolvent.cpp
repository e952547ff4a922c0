#include <doctest.h>

#include "oracles.hpp"
#include "spectree/decomposition.hpp"
#include "spectree/error.hpp"
#include "spectree/gamma_beta.hpp"
#include "spectree/operators.hpp"
#include "spectree/resolvent.hpp"
#include "spectree/spectral_point.hpp"

using namespace spectree;

namespace {

double rel_frob(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_SUITE("resolvent") {
  TEST_CASE("spectral point from z picks the physical root") {
    for (int k : {1, 2, 5}) {
      for (Complex z : {Complex(t_minus(k) - 0.3), Complex(t_minus(k) + 0.2, 0.1),
                        Complex(t_plus(k) + 0.4), Complex(2.0, -0.5)}) {
        const SpectralPoint sp = SpectralPoint::from_z(k, z);
        CHECK(std::abs(sp.w) < 1.0);
        CHECK(std::abs(sp.w + 1.0 / sp.w - (2.0 - sp.u)) < 1e-12);
        CHECK(std::abs(sp.lambda * sp.lambda - sp.u) < 1e-12);
        CHECK(std::abs(2.0 - 2.0 * std::cos(sp.phi) - sp.u) < 1e-12);
        // the subtree Green's function is w / sqrt(k)
        CHECK(std::abs(oracle::subtree_green(k, z) - sp.w / std::sqrt(double(k))) < 1e-10);
        CHECK(std::abs(sp.two_sin_phi() - 2.0 * std::sin(sp.phi)) < 1e-12);
      }
    }
    CHECK_THROWS_AS(SpectralPoint::from_z(2, 3.0), Error);
  }

  TEST_CASE("spectral point from lambda, both thresholds") {
    const int k = 3;
    const Complex lam(0.05, 0.08);
    const SpectralPoint m = SpectralPoint::from_lambda(k, lam, Threshold::Minus);
    const SpectralPoint p = SpectralPoint::from_lambda(k, lam, Threshold::Plus);
    CHECK(std::abs(m.z - (t_minus(k) + lam * lam * std::sqrt(3.0))) < 1e-14);
    CHECK(std::abs(p.omega - m.z) < 1e-14);
    CHECK(std::abs(p.z - (2.0 * (k + 1) - m.z)) < 1e-14);
    CHECK(m.sign == 1);
    CHECK(p.sign == -1);
    // physical sheet: the round trip through z recovers lambda
    CHECK(std::abs(SpectralPoint::from_z(k, m.z).lambda - lam) < 1e-12);
    try {
      (void)SpectralPoint::from_lambda(k, 0.5, Threshold::Minus, 0.3);
      FAIL("expected OutOfDisk");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfDisk);
    }
  }

  TEST_CASE("Fourier coefficients agree with trapezoidal quadrature") {
    for (Complex z : {Complex(-0.5), Complex(0.05, 0.1), Complex(6.5), Complex(3.0, 0.4)}) {
      const SpectralPoint sp = SpectralPoint::from_z(2, z);
      for (int n = 0; n <= 6; ++n)
        CHECK(std::abs(fourier_coefficient(n, sp) - oracle::fourier(n, sp.u)) < 1e-10);
    }
  }

  TEST_CASE("sine-projected coefficients need constant 1, not the printed one") {
    const SpectralPoint sp = SpectralPoint::from_z(2, -0.4);
    double worst_one = 0.0, worst_printed = 0.0;
    for (int j = 0; j <= 4; ++j)
      for (int l = 0; l <= 4; ++l) {
        const Complex q = oracle::sine_projected(j, l, sp.u);
        worst_one = std::max(worst_one, std::abs(sine_projected_coefficient(j, l, sp) - q));
        worst_printed =
            std::max(worst_printed, std::abs(sine_projected_coefficient(
                                                 j, l, sp, printed_sine_projection_constant()) -
                                             q));
      }
    CHECK(worst_one < 1e-10);
    CHECK(worst_printed > 1e-3);
    CHECK(printed_sine_projection_constant() == doctest::Approx(0.5 * std::sqrt(2.0 / M_PI)));
  }

  TEST_CASE("bracket series matches an independent power-series expansion") {
    for (int a : {1, 2, 5, 9})
      for (Complex x : {Complex(1e-4), Complex(3e-4, 5e-4), Complex(0, -8e-4)}) {
        const Complex ref = oracle::bracket_series(a, x);
        CHECK(std::abs(bracket(a, x) - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
        CHECK(std::abs(bracket_series(a, x).first - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
      }
    CHECK(bracket(0, 0.01) == Complex(0.0));
    CHECK(std::abs(bracket(3, 0.0) - Complex(0, 1.5)) < 1e-15);  // i a / 2
  }

  TEST_CASE("bracket is continuous across the series seam and its derivative is exact") {
    for (int a = 1; a <= 12; ++a) {
      const Complex x(kSeriesRadius, 0.0);
      CHECK(std::abs(bracket_exact(a, x).first - bracket_series(a, x).first) < 1e-12);
      CHECK(std::abs(bracket_exact(a, x).second - bracket_series(a, x).second) < 1e-9);
      const Complex y(0.03, 0.02);
      const double h = 1e-6;
      const Complex fd = (bracket(a, y + h) - bracket(a, y - h)) / (2.0 * h);
      CHECK(std::abs(bracket_with_derivative(a, y).second - fd) < 1e-6);
    }
    const GammaBeta gb = gamma_beta(2, 5, 0.04);
    CHECK(gb.gamma == bracket(9, 0.04));
    CHECK(gb.beta == bracket(3, 0.04));
  }

  TEST_CASE("analytic kernel equals the transparent dense oracle") {
    for (int k : {1, 2, 3}) {
      const int R = k == 1 ? 10 : (k == 2 ? 6 : 4);
      const TreeGraph t(k, R);
      const SphericalBasis b(t);
      const oracle::Tree o(k, R);
      const double delta = std::max(1.0, 6.0 * std::log(double(k)));
      const Weights wt = weights(t, delta);
      for (Complex z : {Complex(t_minus(k) - 0.2), Complex(t_minus(k) + 0.1, -0.1),
                        Complex(t_plus(k) + 0.3, 0.05)}) {
        const SpectralPoint sp = SpectralPoint::from_z(k, z);
        const KernelMatrix K = weighted_resolvent_kernel(t, b, wt.e_minus, wt.e_minus, sp);
        const ComplexMatrix ref =
            wt.e_minus.asDiagonal() * oracle::resolvent(o, z, {}, true) * wt.e_minus.asDiagonal();
        CHECK(rel_frob(K.K, ref) < 1e-9);
        CHECK(K.prefactor == doctest::Approx(1.0 / std::sqrt(double(k))));
      }
      // the plus-threshold route goes through Theta
      const SpectralPoint pp = SpectralPoint::from_lambda(k, Complex(0.02, 0.1), Threshold::Plus);
      const KernelMatrix Kp = weighted_resolvent_kernel(t, b, wt.e_minus, wt.e_minus, pp);
      const ComplexMatrix refp = wt.e_minus.asDiagonal() * oracle::resolvent(o, pp.z, {}, true) *
                                 wt.e_minus.asDiagonal();
      CHECK(rel_frob(Kp.K, refp) < 1e-9);
    }
  }

  TEST_CASE("plain truncation is not the infinite-tree resolvent") {
    const TreeGraph t(2, 5);
    const SphericalBasis b(t);
    const SpectralPoint sp = SpectralPoint::from_z(2, t_minus(2) - 0.05);
    const RealVector one = RealVector::Ones(t.vertex_count());
    const KernelMatrix K = weighted_resolvent_kernel(t, b, one, one, sp);
    const ComplexMatrix trunc = dense_resolvent(t, sp.z, Diagonal(), Boundary::Truncated);
    const ComplexMatrix transp = dense_resolvent(t, sp.z, Diagonal(), Boundary::Transparent);
    CHECK(rel_frob(K.K, transp) < 1e-10);
    CHECK(rel_frob(K.K, trunc) > 1e-3);
    const ComplexMatrix ref = oracle::resolvent(oracle::Tree(2, 5), sp.z, {}, true);
    CHECK(rel_frob(transp, ref) < 1e-10);
  }

  TEST_CASE("tail bound") {
    const double d = 6.0 * std::log(2.0);
    const double b4 = tail_bound(2, d, 4, 0.1), b8 = tail_bound(2, d, 8, 0.1);
    CHECK(b4 > b8);
    CHECK(b8 > 0.0);
    CHECK_THROWS_AS(tail_bound(2, 1.0, 4, 0.1), Error);

    const TreeGraph t(2, 4);
    const SphericalBasis b(t);
    const Weights w = weights(t, d);
    KernelOptions opt;
    opt.delta = d;
    opt.tail_tolerance = 1e-30;
    const auto K = weighted_resolvent_kernel(t, b, w.e_minus, w.e_minus,
                                             SpectralPoint::from_z(2, -0.3), opt);
    CHECK(K.tail_estimate > 0.0);
    CHECK(K.truncation_warning);
  }
}
