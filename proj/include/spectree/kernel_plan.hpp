#pragma once

#include <utility>
#include <vector>

#include "spectree/decomposition.hpp"
#include "spectree/simd/kernels.hpp"
#include "spectree/spectral_point.hpp"
#include "spectree/types.hpp"

namespace spectree {

/// Spectral coefficients of the free resolvent in the lifted basis.
///
/// Between levels r and r' through the block M_n the resolvent of
/// -L + k + 1 - z has coefficient
///   (i / sqrt(k)) (F_b - F_a),  a = r + r' - 2n + 2,  b = |r - r'|,
/// where F_x = w^x / (2 sin phi) (point form) or F_x = f_x(lambda) (the
/// bracket functions, holomorphic through lambda = 0). Both give the same
/// differences; only the second is usable at lambda = 0.
struct KernelCoefficients {
  int k = 1;
  double scale = 1.0;  // 1 / sqrt(k)
  std::vector<Complex> F;
  std::vector<Complex> dF;  // empty unless built with the derivative

  Complex coef(int a, int b) const { return scale * kI * (F[b] - F[a]); }
  Complex dcoef(int a, int b) const { return scale * kI * (dF[b] - dF[a]); }
  bool has_derivative() const { return !dF.empty(); }

  static KernelCoefficients from_point(const SpectralPoint& sp, int max_index);
  static KernelCoefficients hol(int k, Complex lambda, int max_index, bool with_derivative);
};

/// Precomputed real blocks for the kernel between two vertex lists.
///
/// For rows at depth r and columns at depth r' the kernel is
///   sum_{n <= min(r, r')} coef(r + r' - 2n + 2, |r - r'|) * P_n,
///   P_n(v, v') = A(v) B(v') k^{n - (r + r')/2} chi_kernel_n(anc_n v, anc_n v'),
/// and P_n vanishes once n exceeds the depth of the common ancestor plus one.
/// Evaluation is a stream of complex-times-real accumulations.
class KernelPlan {
 public:
  KernelPlan(const SphericalBasis& basis, std::vector<Vertex> rows, std::vector<Vertex> cols,
             const RealVector& row_weight, const RealVector& col_weight);

  Eigen::Index rows() const { return static_cast<Eigen::Index>(rows_.size()); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(cols_.size()); }
  /// Largest a = r + r' + 2 needed from the coefficient table.
  int max_index() const { return max_index_; }
  std::size_t stored_doubles() const { return storage_.size(); }

  /// Uses the runtime-selected kernels unless a table is given.
  ComplexMatrix evaluate(const KernelCoefficients& c,
                         const simd::KernelTable* kern = nullptr) const;
  std::pair<ComplexMatrix, ComplexMatrix> evaluate_with_derivative(
      const KernelCoefficients& c, const simd::KernelTable* kern = nullptr) const;

 private:
  struct Block {
    int r = 0, rp = 0;
    Eigen::Index row0 = 0, col0 = 0, nrows = 0, ncols = 0;
    int nmax = -1;            // last stored level
    std::size_t offset = 0;   // into storage_, (nmax + 1) column-major slabs
  };

  std::vector<Vertex> rows_, cols_;
  std::vector<Block> blocks_;
  std::vector<double> storage_;
  int max_index_ = 2;
};

}  // namespace spectree
