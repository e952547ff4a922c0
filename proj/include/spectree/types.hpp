#pragma once

#include <complex>

#include <Eigen/Dense>

namespace spectree {

using Complex = std::complex<double>;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Multiplication operators on l2 of the vertex set are kept as their
/// diagonal; `as_matrix` materializes one when a dense form is needed.
using Diagonal = ComplexVector;

inline ComplexMatrix as_matrix(const Diagonal& d) { return d.asDiagonal(); }

inline constexpr Complex kI{0.0, 1.0};

}  // namespace spectree
