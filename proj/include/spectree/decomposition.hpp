#pragma once

#include <vector>

#include "spectree/operators.hpp"
#include "spectree/tree.hpp"
#include "spectree/types.hpp"

namespace spectree {

/// Orthonormal bases of the spaces Q_{n,n} and their lifts E_m^{n,n+j}.
///
/// Q_{0,0} is spanned by the root. For n >= 1, Q_{n,n} is the orthogonal
/// complement in l2(S_n) of Pi l2(S_{n-1}), i.e. vectors summing to zero on
/// every sibling group. Sibling groups are disjoint and congruent, so one
/// orthonormal k x (k-1) frame G is computed and reused for every group and
/// every level. chi_m^{n,n} with m = g(k-1) + c is column c of G placed on the
/// children of the g-th vertex of S_{n-1}. The same chi is reused for all
/// lifts, so <chi_m^{n,n+j}, chi_q^{n,n+l}> = delta_{mq}.
class SphericalBasis {
 public:
  explicit SphericalBasis(const TreeGraph& t);

  const TreeGraph& tree() const { return tree_; }

  /// dim Q_{n,n}: 1 for n = 0, k^{n-1}(k-1) otherwise.
  Vertex dim(int n) const;

  /// Frame of one sibling group: k x (k-1), orthonormal, orthogonal to 1.
  const RealMatrix& group_frame() const { return frame_; }

  /// sum_m chi_m^{n,n}(a) chi_m^{n,n}(b) for a, b in S_n.
  double chi_kernel(int n, Vertex a, Vertex b) const;

  /// Dense E_m^{n,n+j}.
  RealVector lifted_vector(int n, int j, Vertex m) const;

  /// All E_m^{n,n+j} with n+j <= R as columns, column index j*dim(n) + m.
  SparseMatrix lifted_block(int n) const;

  /// Every lifted vector, blocks ordered by n.
  SparseMatrix basis_matrix() const;

 private:
  void add_column(std::vector<Eigen::Triplet<double>>& trip, int n, int j, Vertex m,
                  Eigen::Index col) const;

  TreeGraph tree_;
  RealMatrix frame_;
  RealMatrix frame_kernel_;  // frame_ * frame_^T
};

SphericalBasis build_spherical_basis(const TreeGraph& t);

/// P_n = sum_{j,m} E_m^{n,n+j} (E_m^{n,n+j})^*, dense.
ComplexMatrix projector(const SphericalBasis& b, int n);

/// Max deviation of <L E_m^{n,n+j}, E_q^{n,n+l}> from the free Jacobi matrix
/// sqrt(k)(delta_{j,l+1} + delta_{j+1,l}) delta_{mq}, rows and columns with
/// n + j = R excluded.
double verify_jacobi_form(const SphericalBasis& b, const TreeGraph& t, int n);

/// max |B^T B - I| over the full lifted basis.
double completeness_residual(const SphericalBasis& b);

}  // namespace spectree
