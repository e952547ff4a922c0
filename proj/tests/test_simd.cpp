#include <doctest.h>

#include <random>

#include "spectree/kernel_plan.hpp"
#include "spectree/simd/kernels.hpp"

using namespace spectree;
using simd::Isa;

namespace {

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa i : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (simd::isa_available(i)) out.push_back(i);
  return out;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("isa names round-trip") {
    for (Isa i : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      Isa back;
      REQUIRE(simd::parse_isa(simd::to_string(i), back));
      CHECK(back == i);
    }
    Isa dummy;
    CHECK_FALSE(simd::parse_isa("sse9", dummy));
    CHECK(simd::isa_available(Isa::Scalar));
    CHECK(simd::isa_available(simd::kernels().isa));
  }

  TEST_CASE("every available kernel agrees with the scalar one") {
    std::mt19937 rng(42);
    std::normal_distribution<double> g;
    const auto& ref = simd::kernels_for(Isa::Scalar);
    for (Isa isa : available()) {
      CAPTURE(simd::to_string(isa));
      const auto& kt = simd::kernels_for(isa);
      for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 101u}) {
        std::vector<double> p(n);
        std::vector<Complex> out0(n), dout0(n), x(n);
        for (std::size_t i = 0; i < n; ++i) {
          p[i] = g(rng);
          out0[i] = {g(rng), g(rng)};
          dout0[i] = {g(rng), g(rng)};
          x[i] = {g(rng), g(rng)};
        }
        const Complex c(g(rng), g(rng)), dc(g(rng), g(rng));

        auto a = out0, b = out0;
        ref.accumulate_scaled(a.data(), p.data(), n, c);
        kt.accumulate_scaled(b.data(), p.data(), n, c);
        CHECK(max_diff(a, b) < 1e-14);

        auto a1 = out0, a2 = dout0, b1 = out0, b2 = dout0;
        ref.accumulate_scaled2(a1.data(), a2.data(), p.data(), n, c, dc);
        kt.accumulate_scaled2(b1.data(), b2.data(), p.data(), n, c, dc);
        CHECK(max_diff(a1, b1) < 1e-14);
        CHECK(max_diff(a2, b2) < 1e-14);

        auto ya = out0, yb = out0;
        ref.axpy(ya.data(), x.data(), n, c);
        kt.axpy(yb.data(), x.data(), n, c);
        CHECK(max_diff(ya, yb) < 1e-14);
      }
    }
  }

  TEST_CASE("scalar reference against a plain loop") {
    const std::vector<double> p{1.0, -2.0, 0.5};
    std::vector<Complex> out{Complex(1, 1), Complex(0, 0), Complex(-1, 2)};
    const Complex c(0.5, -1.0);
    auto expect = out;
    for (std::size_t i = 0; i < 3; ++i) expect[i] += c * p[i];
    simd::scalar::accumulate_scaled(out.data(), p.data(), 3, c);
    CHECK(max_diff(out, expect) == 0.0);
  }

  TEST_CASE("kernel plans assemble identically under each isa") {
    const TreeGraph t(2, 6);
    const SphericalBasis b(t);
    std::vector<Vertex> all(static_cast<std::size_t>(t.vertex_count()));
    for (Vertex v = 0; v < t.vertex_count(); ++v) all[v] = v;
    const RealVector w = RealVector::Ones(t.vertex_count());
    const KernelPlan plan(b, all, all, w, w);
    const auto c = KernelCoefficients::hol(2, Complex(0.03, 0.05), plan.max_index(), true);
    const auto [K0, dK0] = plan.evaluate_with_derivative(c, &simd::kernels_for(Isa::Scalar));
    for (Isa isa : available()) {
      const auto& kt = simd::kernels_for(isa);
      const auto [K, dK] = plan.evaluate_with_derivative(c, &kt);
      CHECK((K - K0).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((dK - dK0).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((plan.evaluate(c, &kt) - K0).cwiseAbs().maxCoeff() < 1e-13);
    }
  }

  TEST_CASE("unavailable isa is refused") {
    for (Isa isa : {Isa::Avx2, Isa::Neon})
      if (!simd::isa_available(isa)) CHECK_THROWS(simd::kernels_for(isa));
  }
}
