#pragma once

#include <Eigen/SparseCore>

#include "spectree/potential.hpp"
#include "spectree/tree.hpp"
#include "spectree/types.hpp"

namespace spectree {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Dense operators are refused above this many vertices; use the sparse form.
inline constexpr Vertex kDenseVertexCap = 10'000;

/// Adjacency L of the truncated tree.
ComplexMatrix adjacency(const TreeGraph& t);
SparseMatrix adjacency_sparse(const TreeGraph& t);

/// Raising operator Pi carries S_r into S_{r+1}: (Pi f)(w) = f(parent(w)),
/// and vanishes on the root. Lowering is its adjoint.
ComplexMatrix raising(const TreeGraph& t);
ComplexMatrix lowering(const TreeGraph& t);
SparseMatrix raising_sparse(const TreeGraph& t);

struct DegreeTerms {
  RealVector d;             // k + 1 - d0, the infinite-tree degree
  RealVector d0;            // indicator of the root
  RealVector graph_degree;  // degree inside the truncation (leaves have 1)
};

DegreeTerms degree_terms(const TreeGraph& t);

/// -Delta = -L + diag(d), formed with the infinite-tree degree so the result
/// is the compression of the infinite operator.
ComplexMatrix laplacian(const TreeGraph& t);

Diagonal potential_matrix(const TreeGraph& t, const PotentialSpec& spec,
                          bool override_assumption = false);

/// M~ = -d0 + M.
Diagonal m_tilde(const TreeGraph& t, const PotentialSpec& spec, bool override_assumption = false);

/// -Delta_{M~} = -L + k + 1 + M~ on the truncation.
ComplexMatrix perturbed_laplacian(const TreeGraph& t, const PotentialSpec& spec,
                                  bool override_assumption = false);

/// (Theta f)(v) = (-1)^{|v|} f(v).
RealVector theta(const TreeGraph& t);

struct Weights {
  RealVector e_minus;
  RealVector e_plus;
};

/// e_{+-}(v) = exp(+-(delta/2)|v|).
Weights weights(const TreeGraph& t, double delta);

/// Depth of every vertex, for vectorized weight construction.
Eigen::VectorXi depths(const TreeGraph& t);

}  // namespace spectree
