#include "spectree/operators.hpp"

#include <cmath>
#include <vector>

#include "spectree/error.hpp"

namespace spectree {

namespace {

void require_dense(const TreeGraph& t) {
  if (t.vertex_count() > kDenseVertexCap)
    throw Error(ErrorCode::CapacityExceeded,
                "dense operator requested on " + std::to_string(t.vertex_count()) +
                    " vertices; use the sparse form");
}

}  // namespace

Eigen::VectorXi depths(const TreeGraph& t) {
  Eigen::VectorXi out(t.vertex_count());
  for (int r = 0; r <= t.depth(); ++r) {
    auto s = t.sphere(r);
    out.segment(s.first, s.size()).setConstant(r);
  }
  return out;
}

SparseMatrix raising_sparse(const TreeGraph& t) {
  const Vertex n = t.vertex_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n));
  for (Vertex w = 1; w < n; ++w) trip.emplace_back(w, (w - 1) / t.k(), 1.0);
  SparseMatrix P(n, n);
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

SparseMatrix adjacency_sparse(const TreeGraph& t) {
  SparseMatrix P = raising_sparse(t);
  SparseMatrix L = P + SparseMatrix(P.transpose());
  return L;
}

ComplexMatrix raising(const TreeGraph& t) {
  require_dense(t);
  return ComplexMatrix(raising_sparse(t).cast<Complex>());
}

ComplexMatrix lowering(const TreeGraph& t) { return raising(t).adjoint(); }

ComplexMatrix adjacency(const TreeGraph& t) {
  require_dense(t);
  return ComplexMatrix(adjacency_sparse(t).cast<Complex>());
}

DegreeTerms degree_terms(const TreeGraph& t) {
  const Vertex n = t.vertex_count();
  DegreeTerms out;
  out.d0 = RealVector::Zero(n);
  out.d0(0) = 1.0;
  out.d = RealVector::Constant(n, t.k() + 1.0) - out.d0;
  out.graph_degree = RealVector::Constant(n, t.k() + 1.0);
  out.graph_degree(0) = (t.depth() > 0) ? t.k() : 0.0;
  if (t.depth() > 0) {
    auto leaves = t.sphere(t.depth());
    out.graph_degree.segment(leaves.first, leaves.size()).setOnes();
  }
  return out;
}

ComplexMatrix laplacian(const TreeGraph& t) {
  ComplexMatrix m = -adjacency(t);
  m.diagonal() += degree_terms(t).d.cast<Complex>();
  return m;
}

Diagonal potential_matrix(const TreeGraph& t, const PotentialSpec& spec,
                          bool override_assumption) {
  if (!override_assumption) spec.check(t);
  Diagonal m = Diagonal::Zero(t.vertex_count());
  if (spec.kind == PotentialKind::RadialExp) {
    for (int r = 0; r <= t.depth(); ++r) {
      auto s = t.sphere(r);
      m.segment(s.first, s.size()).setConstant(spec.amplitude * std::exp(-spec.delta * r));
    }
  } else {
    for (const auto& e : spec.values)
      if (e.v < t.vertex_count()) m(e.v) = e.value;
  }
  return m;
}

Diagonal m_tilde(const TreeGraph& t, const PotentialSpec& spec, bool override_assumption) {
  Diagonal m = potential_matrix(t, spec, override_assumption);
  m(0) -= 1.0;
  return m;
}

ComplexMatrix perturbed_laplacian(const TreeGraph& t, const PotentialSpec& spec,
                                  bool override_assumption) {
  ComplexMatrix m = -adjacency(t);
  m.diagonal().array() += static_cast<double>(t.k() + 1);
  m.diagonal() += m_tilde(t, spec, override_assumption);
  return m;
}

RealVector theta(const TreeGraph& t) {
  RealVector out(t.vertex_count());
  for (int r = 0; r <= t.depth(); ++r) {
    auto s = t.sphere(r);
    out.segment(s.first, s.size()).setConstant((r % 2 == 0) ? 1.0 : -1.0);
  }
  return out;
}

Weights weights(const TreeGraph& t, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParameter, "weight rate must be positive");
  const RealVector r = depths(t).cast<double>();
  return {(-0.5 * delta * r).array().exp().matrix(), (0.5 * delta * r).array().exp().matrix()};
}

}  // namespace spectree
