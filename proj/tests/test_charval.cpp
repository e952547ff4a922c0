#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "spectree/charval.hpp"
#include "spectree/error.hpp"
#include "spectree/scan.hpp"

using namespace spectree;

namespace {

ComplexMatrix diag_family(Complex lam, const std::vector<Complex>& zeros, int n) {
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  for (std::size_t i = 0; i < zeros.size(); ++i) m(i, i) = lam - zeros[i];
  return m;
}

ComplexMatrix diag_family_d(const std::vector<Complex>& zeros, int n) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < zeros.size(); ++i) m(i, i) = 1.0;
  return m;
}

}  // namespace

TEST_SUITE("charval") {
  TEST_CASE("constant family has index 0") {
    const auto F = [](Complex) { return ComplexMatrix::Identity(4, 4).eval(); };
    const auto dF = [](Complex) { return ComplexMatrix::Zero(4, 4).eval(); };
    const IndexReport r = contour_index(F, dF, {0.0, 0.1, 64});
    CHECK(r.rounded == 0);
    CHECK(r.residual < 1e-12);
    CHECK(r.min_sv == doctest::Approx(1.0));
  }

  TEST_CASE("scalar winding") {
    const std::vector<Complex> z{0.05};
    const IndexReport r = contour_index([&](Complex l) { return diag_family(l, z, 3); },
                                        [&](Complex) { return diag_family_d(z, 3); },
                                        {0.0, 0.1, 128});
    CHECK(r.rounded == 1);
    CHECK(r.residual < 1e-10);
  }

  TEST_CASE("rank-one construction with two zeros inside") {
    const Complex a(0.02, 0.01), c(-0.03, 0.02);
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(5), v = Eigen::VectorXcd::Zero(5);
    u(0) = 1.0;
    v(0) = 1.0;
    // F = I + ((l-a)(l-c) - 1) u v^*: det F = (l-a)(l-c)
    const auto F = [&](Complex l) {
      return (ComplexMatrix::Identity(5, 5) + ((l - a) * (l - c) - 1.0) * u * v.adjoint()).eval();
    };
    const auto dF = [&](Complex l) { return ((2.0 * l - a - c) * u * v.adjoint()).eval(); };
    const IndexReport r = contour_index(F, dF, {0.0, 0.1, 128});
    CHECK(r.rounded == 2);
    CHECK(det_winding(MatrixFunction(F), ContourSpec{0.0, 0.1, 128}) == 2);
    CHECK(oracle::det_winding(F, 0.0, 0.1) == 2);
    CHECK(contour_index_fd(F, {0.0, 0.1, 128}).rounded == 2);
  }

  TEST_CASE("additivity over nested circles") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Complex> zeros;
      for (double r : {0.03, 0.06, 0.12, 0.15}) zeros.push_back(std::polar(r, ang(rng)));
      const auto F = [&](Complex l) { return diag_family(l, zeros, 6); };
      const auto dF = [&](Complex) { return diag_family_d(zeros, 6); };
      const long inner = contour_index(F, dF, {0.0, 0.05, 256}).rounded;
      const long outer = contour_index(F, dF, {0.0, 0.1, 256}).rounded;
      const long big = contour_index(F, dF, {0.0, 0.2, 256}).rounded;
      CHECK(inner == 1);
      CHECK(outer == 2);
      CHECK(big == 4);
      // the annulus between 0.05 and 0.1 holds outer - inner zeros
      CHECK(outer - inner == 1);
    }
  }

  TEST_CASE("singular node is reported, not rounded") {
    const std::vector<Complex> z{0.1};
    try {
      (void)contour_index([&](Complex l) { return diag_family(l, z, 2); },
                          [&](Complex) { return diag_family_d(z, 2); }, {0.0, 0.1, 64});
      FAIL("expected SingularOnContour");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularOnContour);
    }
  }

  TEST_CASE("zero close to the contour needs more nodes or fails") {
    const std::vector<Complex> z{Complex(0.0999, 0.0)};
    IndexOptions opt;
    opt.max_doublings = 0;
    bool threw = false;
    try {
      const IndexReport r = contour_index([&](Complex l) { return diag_family(l, z, 2); },
                                          [&](Complex) { return diag_family_d(z, 2); },
                                          {0.0, 0.1, 16}, opt);
      CHECK(r.residual < opt.residual_tol);
    } catch (const Error& e) {
      threw = true;
      CHECK(e.code() == ErrorCode::NonConvergent);
    }
    CHECK(threw);
  }

  TEST_CASE("riesz multiplicity") {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d.diagonal() << 1.0, 1.0, 3.0, 5.0;
    CHECK(riesz_multiplicity(d, 1.0, 0.2) == 2);
    ComplexMatrix jordan(3, 3);
    jordan << 2.0, 1.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 7.0;
    CHECK(riesz_multiplicity(jordan, 2.0, 0.3) == 2);
    try {
      (void)riesz_multiplicity(d, 2.0, 0.8);
      FAIL("expected NotIsolated");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotIsolated);
    }
  }

  TEST_CASE("spectrum of the free path matches the closed form with the root defect") {
    // k = 1, M = 0: -L + 2 - d0 on a path of n + 1 vertices
    const int n = 9;
    const TreeGraph t(1, n);
    const auto sp = spectrum(t, PotentialSpec::zero(2.5));
    REQUIRE(sp.size() == static_cast<std::size_t>(n + 1));
    std::vector<double> got, want;
    for (const auto& e : sp) got.push_back(e.value.real());
    for (int j = 1; j <= n + 1; ++j) want.push_back(2.0 - 2.0 * std::cos((2.0 * j - 1) * M_PI / (2 * n + 3)));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int j = 0; j <= n; ++j) CHECK(std::abs(got[j] - want[j]) < 1e-10);
    for (const auto& e : sp) CHECK(e.essential);
  }

  TEST_CASE("strong attractive potential produces an isolated eigenvalue below t_-") {
    const TreeGraph t(2, 6);
    const auto sp = spectrum(t, PotentialSpec::table({{0, -5.0}}, 6 * std::log(2.0)));
    int below = 0;
    for (const auto& e : sp)
      if (e.value.real() < t_minus(2) - 1e-6) {
        ++below;
        CHECK_FALSE(e.essential);
        CHECK_FALSE(e.window_minus);
      }
    CHECK(below == 1);
  }

  TEST_CASE("small scan certifies index 0 and streams rows") {
    const TreeGraph t(2, 6);
    const SphericalBasis b(t);
    ScanOptions opt;
    opt.grid = 6;
    opt.nodes = 64;
    std::size_t streamed = 0;
    opt.on_row = [&](const ScanRow&) { ++streamed; };
    const auto rep = absence_scan(t, b, PotentialSpec::radial_exp({0.3, 0.15}, 6 * std::log(2.0)), opt);
    CHECK(rep.all_zero);
    CHECK(rep.ladder.size() == ladder_radii(0.02, 0.2).size());
    CHECK(rep.rows.size() == 36);
    CHECK(streamed == 36);
    CHECK(rep.min_sv > 1e-4);
    for (const auto& l : rep.ladder) CHECK(l.report.residual < 0.05);
  }

  TEST_CASE("scan results do not depend on the job count") {
    const TreeGraph t(1, 30);
    const SphericalBasis b(t);
    ScanOptions opt;
    opt.grid = 5;
    opt.nodes = 64;
    const auto spec = PotentialSpec::radial_exp({0, 0.6}, 2.5);
    opt.jobs = 1;
    const auto a = absence_scan(t, b, spec, opt);
    opt.jobs = 3;
    const auto c = absence_scan(t, b, spec, opt);
    REQUIRE(a.rows.size() == c.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].lambda == c.rows[i].lambda);
      CHECK(a.rows[i].min_sv == c.rows[i].min_sv);
    }
  }

  TEST_CASE("ladder and grid geometry") {
    const auto r = ladder_radii(0.02, 0.2);
    REQUIRE(r.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(r[i] == doctest::Approx(0.02 * (1 << i)));
    const auto g = polar_grid(0.02, 0.2, 4);
    REQUIRE(g.size() == 16);
    CHECK(std::abs(g.front()) == doctest::Approx(0.02));
    CHECK(std::abs(g.back()) == doctest::Approx(0.2));
  }
}
