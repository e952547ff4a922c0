#include "spectree/resolvent.hpp"

#include <algorithm>
#include <cmath>

#include "spectree/error.hpp"
#include "spectree/operators.hpp"

namespace spectree {

KernelMatrix weighted_resolvent_kernel(const TreeGraph& t, const SphericalBasis& b,
                                       const RealVector& A, const RealVector& B,
                                       const SpectralPoint& sp, const KernelOptions& opt) {
  if (sp.k != t.k()) throw Error(ErrorCode::InvalidParameter, "spectral point built for another k");
  if (A.size() != t.vertex_count() || B.size() != t.vertex_count())
    throw Error(ErrorCode::InvalidParameter, "weights must cover every vertex");
  std::vector<Vertex> all(static_cast<std::size_t>(t.vertex_count()));
  for (Vertex v = 0; v < t.vertex_count(); ++v) all[v] = v;
  KernelPlan plan(b, all, all, A, B);

  KernelMatrix out;
  out.point = sp;
  out.prefactor = 1.0 / std::sqrt(static_cast<double>(t.k()));
  out.K = plan.evaluate(KernelCoefficients::from_point(sp, plan.max_index()));
  if (sp.threshold == Threshold::Plus) {
    // (-L + k + 1 - z)^{-1} = -Theta (-L + k + 1 - omega)^{-1} Theta
    const RealVector th = theta(t);
    out.K = -(th.asDiagonal() * out.K * th.asDiagonal());
  }
  if (opt.delta > 0.0) {
    out.tail_estimate = tail_bound(t.k(), opt.delta, t.depth(), std::abs(sp.lambda));
    out.truncation_warning = opt.tail_tolerance > 0.0 && out.tail_estimate > opt.tail_tolerance;
  }
  return out;
}

double tail_bound(int k, double delta, int R, double lambda_max) {
  if (k < 1 || R < 0 || lambda_max < 0.0)
    throw Error(ErrorCode::InvalidParameter, "tail_bound needs k >= 1, R >= 0, lambda_max >= 0");
  const double lk = std::log(static_cast<double>(k));
  if (!(delta > 0.0) || (k >= 2 && delta < 6.0 * lk - 1e-12))
    throw Error(ErrorCode::AssumptionViolated, "decay rate below the admissible range");
  // |w|^{+-1} <= rho on the disk |lambda| <= lambda_max.
  const double rho = std::exp(2.0 * std::asinh(0.5 * lambda_max));
  // Entry bound for |v| = r, |v'| = r':
  //   e^{-delta s / 2} k^{-s/2 - 1/2} sum_{n <= m} k^n (m - n + 1) rho^{s - 2n} (1 + rho^2),
  // s = r + r', m = min(r, r'). Summed over the k^s pairs with r or r' > R.
  const double rate = delta - lk - 2.0 * std::log(std::max(rho, 1.0));
  if (!(rate > 0.0))
    throw Error(ErrorCode::AssumptionViolated, "tail does not decay at this lambda_max");
  const int far = R + static_cast<int>(std::ceil(80.0 / rate)) + 8;
  double total = 0.0;
  for (int r = 0; r <= far; ++r)
    for (int rp = 0; rp <= far; ++rp) {
      if (r <= R && rp <= R) continue;
      const int s = r + rp, m = std::min(r, rp);
      double inner = 0.0;
      for (int n = 0; n <= m; ++n)
        inner += std::pow(k, n) * (m - n + 1) * std::pow(rho, s - 2 * n);
      const double entry =
          std::exp(-0.5 * delta * s) * std::pow(k, -0.5 * s - 0.5) * inner * (1.0 + rho * rho);
      total += std::pow(k, s) * entry * entry;
    }
  return std::sqrt(total);
}

ComplexMatrix dense_resolvent(const TreeGraph& t, Complex z, const Diagonal& V,
                              Boundary boundary) {
  ComplexMatrix H = -adjacency(t);
  H.diagonal().array() += static_cast<double>(t.k() + 1) - z;
  if (V.size() != 0) {
    if (V.size() != t.vertex_count())
      throw Error(ErrorCode::InvalidParameter, "potential length does not match the tree");
    H.diagonal() += V;
  }
  if (boundary == Boundary::Transparent) {
    const SpectralPoint sp = SpectralPoint::from_z(t.k(), z);
    const auto leaves = t.sphere(t.depth());
    H.diagonal().segment(leaves.first, leaves.size()).array() -=
        std::sqrt(static_cast<double>(t.k())) * sp.w;
  }
  return H.partialPivLu().inverse();
}

}  // namespace spectree
