#pragma once

#include "spectree/decomposition.hpp"
#include "spectree/kernel_plan.hpp"
#include "spectree/spectral_point.hpp"
#include "spectree/types.hpp"

namespace spectree {

/// Weighted resolvent kernel A (-L + k + 1 - z)^{-1} B on the truncation,
/// with exact infinite-tree entries.
struct KernelMatrix {
  ComplexMatrix K;
  SpectralPoint point;
  double prefactor = 0.0;      // per-entry constant actually used, 1/sqrt(k)
  double tail_estimate = 0.0;  // 0 when no decay rate was supplied
  bool truncation_warning = false;
};

struct KernelOptions {
  double delta = 0.0;       // decay rate of the weights, enables the tail estimate
  double tail_tolerance = 0.0;
};

/// Weights A, B are real diagonals over all vertices. At a plus-threshold
/// point the kernel of the resolvent at z is returned, obtained from the
/// one at omega through Theta.
KernelMatrix weighted_resolvent_kernel(const TreeGraph& t, const SphericalBasis& b,
                                       const RealVector& A, const RealVector& B,
                                       const SpectralPoint& sp, const KernelOptions& opt = {});

/// Geometric estimate of the Hilbert-Schmidt mass of e_- G e_- carried by
/// pairs (v, v') with max(|v|, |v'|) > R, for |lambda| <= lambda_max.
double tail_bound(int k, double delta, int R, double lambda_max);

enum class Boundary {
  Truncated,    // plain compression to the ball
  Transparent,  // leaves get the exact self-energy of the discarded subtrees
};

/// Dense A (H - z)^{-1} B with H = -L + k + 1 + V on the truncation, solved by
/// LU. With Boundary::Transparent the diagonal on S_R is shifted by
/// -sqrt(k) w(z), which reproduces the infinite-tree resolvent exactly when
/// V is supported strictly inside the ball.
ComplexMatrix dense_resolvent(const TreeGraph& t, Complex z, const Diagonal& V,
                              Boundary boundary = Boundary::Truncated);

}  // namespace spectree
