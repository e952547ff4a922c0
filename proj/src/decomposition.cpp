#include "spectree/decomposition.hpp"

#include <cmath>

#include "spectree/error.hpp"

namespace spectree {

namespace {

constexpr double kRankThreshold = 1e-8;

// Orthonormal basis of {x in R^k : sum x = 0} by modified Gram-Schmidt with
// one reorthogonalization pass over e_0..e_{k-1}. The rank is decided from
// the singular values of the projected candidates.
RealMatrix sibling_frame(int k) {
  const RealVector ones = RealVector::Constant(k, 1.0 / std::sqrt(static_cast<double>(k)));
  RealMatrix cand = RealMatrix::Identity(k, k) - ones * ones.transpose();
  Eigen::JacobiSVD<RealMatrix> svd(cand);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankThreshold * sv(0)) ++rank;
  if (k == 1) rank = 0;  // cand is exactly zero
  if (rank != k - 1)
    throw Error(ErrorCode::NumericalRankFailure,
                "sibling complement has rank " + std::to_string(rank) + ", expected " +
                    std::to_string(k - 1));

  RealMatrix frame(k, k - 1);
  Eigen::Index kept = 0;
  for (int i = 0; i < k && kept < k - 1; ++i) {
    RealVector v = RealVector::Unit(k, i);
    for (int pass = 0; pass < 2; ++pass) {
      v -= ones * ones.dot(v);
      for (Eigen::Index c = 0; c < kept; ++c) v -= frame.col(c) * frame.col(c).dot(v);
    }
    const double nrm = v.norm();
    if (nrm <= kRankThreshold) continue;
    frame.col(kept++) = v / nrm;
  }
  if (kept != k - 1)
    throw Error(ErrorCode::NumericalRankFailure, "Gram-Schmidt lost rank on a sibling group");
  return frame;
}

Vertex descend(Vertex v, int k, int j) {
  for (int i = 0; i < j; ++i) v = static_cast<Vertex>(k) * v + 1;
  return v;
}

Vertex ipow(Vertex k, int e) {
  Vertex r = 1;
  for (int i = 0; i < e; ++i) r *= k;
  return r;
}

}  // namespace

SphericalBasis::SphericalBasis(const TreeGraph& t) : tree_(t), frame_(sibling_frame(t.k())) {
  frame_kernel_ = frame_ * frame_.transpose();
}

Vertex SphericalBasis::dim(int n) const {
  if (n < 0 || n > tree_.depth())
    throw Error(ErrorCode::IndexOutOfRange, "level outside the truncation");
  if (n == 0) return 1;
  return ipow(tree_.k(), n - 1) * (tree_.k() - 1);
}

double SphericalBasis::chi_kernel(int n, Vertex a, Vertex b) const {
  if (n == 0) return 1.0;
  const int k = tree_.k();
  const Vertex pa = (a - 1) / k, pb = (b - 1) / k;
  if (pa != pb) return 0.0;
  return frame_kernel_(a - (k * pa + 1), b - (k * pb + 1));
}

void SphericalBasis::add_column(std::vector<Eigen::Triplet<double>>& trip, int n, int j, Vertex m,
                                Eigen::Index col) const {
  const int k = tree_.k();
  const double scale = std::pow(static_cast<double>(k), -0.5 * j);
  const Vertex span = ipow(k, j);
  if (n == 0) {
    const Vertex first = descend(0, k, j);
    for (Vertex v = first; v < first + span; ++v) trip.emplace_back(v, col, scale);
    return;
  }
  const Vertex group = m / (k - 1);
  const Eigen::Index c = m % (k - 1);
  const Vertex parent = tree_.sphere(n - 1).first + group;
  for (int i = 0; i < k; ++i) {
    const double val = frame_(i, c);
    if (val == 0.0) continue;
    const Vertex first = descend(static_cast<Vertex>(k) * parent + 1 + i, k, j);
    for (Vertex v = first; v < first + span; ++v) trip.emplace_back(v, col, scale * val);
  }
}

RealVector SphericalBasis::lifted_vector(int n, int j, Vertex m) const {
  if (n + j > tree_.depth() || j < 0) throw Error(ErrorCode::IndexOutOfRange, "lift beyond depth");
  if (m < 0 || m >= dim(n)) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
  std::vector<Eigen::Triplet<double>> trip;
  add_column(trip, n, j, m, 0);
  RealVector out = RealVector::Zero(tree_.vertex_count());
  for (const auto& e : trip) out(e.row()) = e.value();
  return out;
}

SparseMatrix SphericalBasis::lifted_block(int n) const {
  const Vertex d = dim(n);
  const int levels = tree_.depth() - n + 1;
  std::vector<Eigen::Triplet<double>> trip;
  for (int j = 0; j < levels; ++j)
    for (Vertex m = 0; m < d; ++m) add_column(trip, n, j, m, j * d + m);
  SparseMatrix B(tree_.vertex_count(), d * levels);
  B.setFromTriplets(trip.begin(), trip.end());
  return B;
}

SparseMatrix SphericalBasis::basis_matrix() const {
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::Index col = 0;
  for (int n = 0; n <= tree_.depth(); ++n) {
    const Vertex d = dim(n);
    for (int j = 0; n + j <= tree_.depth(); ++j)
      for (Vertex m = 0; m < d; ++m) add_column(trip, n, j, m, col++);
  }
  SparseMatrix B(tree_.vertex_count(), col);
  B.setFromTriplets(trip.begin(), trip.end());
  return B;
}

SphericalBasis build_spherical_basis(const TreeGraph& t) { return SphericalBasis(t); }

ComplexMatrix projector(const SphericalBasis& b, int n) {
  if (b.tree().vertex_count() > kDenseVertexCap)
    throw Error(ErrorCode::CapacityExceeded, "dense projector on a large tree");
  const SparseMatrix B = b.lifted_block(n);
  const SparseMatrix P = B * SparseMatrix(B.transpose());
  return ComplexMatrix(RealMatrix(P).cast<Complex>());
}

double verify_jacobi_form(const SphericalBasis& b, const TreeGraph& t, int n) {
  const SparseMatrix B = b.lifted_block(n);
  const SparseMatrix L = adjacency_sparse(t);
  const SparseMatrix M = SparseMatrix(B.transpose()) * (L * B);
  const Vertex d = b.dim(n);
  const int boundary = t.depth() - n;  // j index of S_R
  const double sk = std::sqrt(static_cast<double>(t.k()));

  std::vector<Eigen::Triplet<double>> trip;
  for (int j = 0; j + 1 <= boundary; ++j)
    for (Vertex m = 0; m < d; ++m) {
      trip.emplace_back((j + 1) * d + m, j * d + m, sk);
      trip.emplace_back(j * d + m, (j + 1) * d + m, sk);
    }
  SparseMatrix E(M.rows(), M.cols());
  E.setFromTriplets(trip.begin(), trip.end());
  const SparseMatrix D = M - E;

  double worst = 0.0;
  for (Eigen::Index c = 0; c < D.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(D, c); it; ++it) {
      if (it.row() / d == boundary || it.col() / d == boundary) continue;
      worst = std::max(worst, std::abs(it.value()));
    }
  return worst;
}

double completeness_residual(const SphericalBasis& b) {
  const SparseMatrix B = b.basis_matrix();
  if (B.cols() != b.tree().vertex_count())
    throw Error(ErrorCode::NumericalRankFailure, "lifted basis has the wrong size");
  SparseMatrix G = SparseMatrix(B.transpose()) * B;
  SparseMatrix I(G.rows(), G.cols());
  I.setIdentity();
  G -= I;
  double worst = 0.0;
  for (Eigen::Index c = 0; c < G.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(G, c); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace spectree
