#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "spectree/birman_schwinger.hpp"
#include "spectree/potential.hpp"
#include "spectree/spectral_point.hpp"
#include "spectree/tree.hpp"
#include "spectree/types.hpp"

namespace spectree {

struct ContourSpec {
  Complex center{};
  double radius = 0.1;
  int nodes = 256;
};

struct IndexOptions {
  double residual_tol = 0.1;
  double min_sv_tol = 1e-10;
  int max_doublings = 2;
};

struct IndexReport {
  Complex raw{};
  long rounded = 0;
  double residual = 0.0;
  double min_sv = 0.0;  // smallest singular value of F over the nodes
  int nodes = 0;        // nodes actually used after doubling
};

using MatrixFunction = std::function<ComplexMatrix(Complex)>;
using BlockFunction = std::function<BlockMatrix(Complex)>;
using BlockFunctionWithDerivative = std::function<std::pair<BlockMatrix, BlockMatrix>(Complex)>;

/// (1/2 pi i) oint Tr[F^{-1} F'] d lambda by the trapezoidal rule on a circle.
/// Throws SingularOnContour when F is numerically singular at a node and
/// NonConvergent when the result is not within residual_tol of an integer
/// after doubling the nodes max_doublings times.
IndexReport contour_index(const BlockFunctionWithDerivative& F, const ContourSpec& c,
                          const IndexOptions& opt = {});
IndexReport contour_index(const MatrixFunction& F, const MatrixFunction& dF,
                          const ContourSpec& c, const IndexOptions& opt = {});

/// Same, with F' from complex central differences of step 1e-6 * radius.
IndexReport contour_index_fd(const MatrixFunction& F, const ContourSpec& c,
                             const IndexOptions& opt = {});

/// Winding number of det F along the circle, by phase unwrapping with
/// adaptive refinement wherever the phase jumps by more than pi/2.
long det_winding(const BlockFunction& F, const ContourSpec& c);
long det_winding(const MatrixFunction& F, const ContourSpec& c);

double smallest_singular_value(const ComplexMatrix& m);
double smallest_singular_value(const BlockMatrix& m);

struct ResonanceIndicator {
  std::vector<Complex> eigs;  // eigenvalues of T(lambda), with multiplicity
  double dist_to_minus_one = 0.0;
  double norm = 0.0;          // spectral norm of T(lambda)
  bool flagged = false;       // dist < 1e-6 (1 + norm)
};

ResonanceIndicator resonance_indicator(const BirmanSchwingerFamily& family, Complex lambda);
ResonanceIndicator resonance_indicator(const TreeGraph& t, const SphericalBasis& b,
                                       const PotentialSpec& spec, Complex lambda, Threshold th,
                                       const BSOptions& opt = {});

/// Rank of the Riesz projector of `op` at z0, by quadrature on |zeta - z0| = radius
/// and singular-value thresholding at 0.5. Throws NotIsolated unless every
/// eigenvalue is within radius/2 of z0 or at least 2 radius away.
long riesz_multiplicity(const ComplexMatrix& op, Complex z0, double radius, int nodes = 128);

struct SpectrumEntry {
  Complex value{};
  bool essential = false;     // inside [t_-, t_+] up to 1e-10
  bool window_minus = false;  // within eps0^2 sqrt(k) of t_-
  bool window_plus = false;
};

/// Eigenvalues of the truncated -Delta_{M~}, sorted by real part.
std::vector<SpectrumEntry> spectrum(const TreeGraph& t, const PotentialSpec& spec,
                                    double eps0 = -1.0, bool override_assumption = false);

}  // namespace spectree
