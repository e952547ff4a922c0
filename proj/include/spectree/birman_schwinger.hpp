#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "spectree/decomposition.hpp"
#include "spectree/kernel_plan.hpp"
#include "spectree/potential.hpp"
#include "spectree/spectral_point.hpp"
#include "spectree/types.hpp"

namespace spectree {

struct PolarFactors {
  Diagonal J;           // M~/|M~| where nonzero, 1 elsewhere
  RealVector sqrt_abs;  // |M~|^{1/2}
};

PolarFactors polar_factors(const Diagonal& m);

/// Vertices carrying M~ up to the deepest sphere where |M~| >= cutoff.
struct BSSupport {
  std::vector<Vertex> vertices;
  Diagonal J;
  RealVector sqrt_abs;
  int depth = 0;  // R_support
};

inline constexpr double kSupportCutoff = 1e-14;

BSSupport bs_support(const TreeGraph& t, const PotentialSpec& spec,
                     double cutoff = kSupportCutoff, bool override_assumption = false);

struct BSOptions {
  std::optional<double> eps0;        // default: min(delta / 8, 0.3)
  bool allow_outside_disk = false;   // lift the eps0 restriction (|lambda| < 2 still applies)
  double cutoff = kSupportCutoff;
  bool override_assumption = false;
};

struct BSOperator {
  std::vector<Vertex> support;
  Diagonal J;
  RealVector sqrt_abs;
  ComplexMatrix matrix;
  Complex lambda{};
  int sign = 1;
  Threshold threshold = Threshold::Minus;
};

/// T_{sign M~}(z_{t-}(lambda)) = sign J sqrt|M~| G(z_{t-}(lambda)) sqrt|M~| on the
/// support. Threshold::Minus uses sign = +1. Threshold::Plus uses sign = -1 at
/// omega = z_{t-}(lambda), which is Theta-conjugate to the plus-threshold
/// operator T_{M~}(z_{t+}(lambda)). Built from the point form of the kernel;
/// lambda = 0 is rejected here and handled by hol_split.
BSOperator bs_operator(const TreeGraph& t, const SphericalBasis& b, const PotentialSpec& spec,
                       Complex lambda, Threshold th, const BSOptions& opt = {});

/// J sqrt|M~| G(z) sqrt|M~| for a physical z off the spectrum, straight from z.
BSOperator bs_operator_at_z(const TreeGraph& t, const SphericalBasis& b,
                            const PotentialSpec& spec, Complex z, const BSOptions& opt = {});

/// Hol(lambda) = (i / (2 sqrt(k))) sum (beta - gamma) P, assembled from the
/// bracket functions, so T_{+M~}(lambda) = kHolScale J Hol(lambda).
inline constexpr double kHolScale = 2.0;

struct HolSplit {
  ComplexMatrix hol;
  double reconstruction_residual = 0.0;  // NaN at lambda = 0, where T itself is undefined
};

HolSplit hol_split(const TreeGraph& t, const SphericalBasis& b, const PotentialSpec& spec,
                   Complex lambda, const BSOptions& opt = {});

/// Block-diagonal operator: blocks[i] repeated multiplicity[i] times.
struct BlockMatrix {
  std::vector<ComplexMatrix> blocks;
  std::vector<long> multiplicity;

  Eigen::Index dimension() const;
  ComplexMatrix expand() const;  // dense, for tests
};

/// lambda -> I + T(lambda) at one threshold, evaluated through the bracket
/// functions so lambda = 0 and the analytic derivative are available.
///
/// When M~ is constant on spheres the family commutes with the spherical
/// decomposition, and I + T splits into one small block per level n,
/// repeated dim Q_{n,n} times. This reduction is used automatically unless
/// disabled; the full support matrix is always available through T().
class BirmanSchwingerFamily {
 public:
  BirmanSchwingerFamily(const TreeGraph& t, const SphericalBasis& b, const PotentialSpec& spec,
                        Threshold th, const BSOptions& opt = {}, bool allow_reduction = true);

  int k() const { return k_; }
  int sign() const { return sign_; }
  Threshold threshold() const { return threshold_; }
  double eps0() const { return eps0_; }
  bool reduced() const { return reduced_; }
  const BSSupport& support() const { return support_; }

  ComplexMatrix T(Complex lambda) const;
  std::pair<ComplexMatrix, ComplexMatrix> T_with_derivative(Complex lambda) const;

  BlockMatrix F(Complex lambda) const;
  std::pair<BlockMatrix, BlockMatrix> F_with_derivative(Complex lambda) const;

 private:
  void check_lambda(Complex lambda) const;
  KernelCoefficients coefficients(Complex lambda, bool derivative) const;

  struct LevelBlock {
    int n;
    long multiplicity;
    std::vector<int> radii;
    RealVector weight;  // sqrt|M~| on each radius
    Diagonal phase;     // sign * J on each radius
  };

  int k_;
  int sign_;
  Threshold threshold_;
  double eps0_;
  bool allow_outside_;
  BSSupport support_;
  std::shared_ptr<const KernelPlan> plan_;
  bool reduced_ = false;
  std::vector<LevelBlock> levels_;
  int max_index_ = 2;
};

}  // namespace spectree
