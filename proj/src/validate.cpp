#include "spectree/validate.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "spectree/birman_schwinger.hpp"
#include "spectree/decomposition.hpp"
#include "spectree/gamma_beta.hpp"
#include "spectree/operators.hpp"
#include "spectree/resolvent.hpp"

namespace spectree {

namespace {

// Trapezoid on [0, 2pi) of a periodic integrand.
template <class F>
Complex periodic_trapezoid(F f, int nodes) {
  Complex s{};
  for (int j = 0; j < nodes; ++j) s += f(2.0 * std::numbers::pi * j / nodes);
  return s * (2.0 * std::numbers::pi / nodes);
}

void add(std::vector<CheckResult>& out, std::string name, double value, double tol) {
  out.push_back({std::move(name), value <= tol, value, tol});
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(int k, int depth, long dense_cap) {
  std::vector<CheckResult> out;
  const TreeGraph t = build_tree(k, depth);
  const double sk = std::sqrt(static_cast<double>(k));

  // tree
  {
    double bad = 0;
    Vertex expect = 0, width = 1;
    for (int r = 0; r <= depth; ++r, width *= k) {
      if (t.sphere_size(r) != width) ++bad;
      expect += width;
    }
    if (t.vertex_count() != expect) ++bad;
    for (Vertex v = 1; v < t.vertex_count(); ++v) {
      if (t.vertex_depth(t.parent(v)) != t.vertex_depth(v) - 1) ++bad;
      auto ch = t.children(t.parent(v));
      if (!ch.contains(v)) ++bad;
    }
    add(out, "tree.layout", bad, 0.0);
  }

  const SparseMatrix L = adjacency_sparse(t);
  const SparseMatrix P = raising_sparse(t);
  {
    add(out, "operators.adjacency_symmetric", (L - SparseMatrix(L.transpose())).norm(), 0.0);
    add(out, "operators.raising_plus_lowering", (P + SparseMatrix(P.transpose()) - L).norm(), 0.0);
    const SparseMatrix PtP = SparseMatrix(P.transpose()) * P;
    const double tr = PtP.diagonal().sum();
    add(out, "operators.trace_PtP",
        std::abs(tr - k * double(t.vertex_count() - t.sphere_size(depth))), 0.0);
    const RealVector th = theta(t);
    const SparseMatrix TLT = th.asDiagonal() * L * th.asDiagonal();
    add(out, "operators.theta_anticommutes", (TLT + L).norm(), 0.0);
  }
  if (t.vertex_count() <= dense_cap) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(RealMatrix(L), Eigen::EigenvaluesOnly);
    const double ext = es.eigenvalues().cwiseAbs().maxCoeff();
    add(out, "operators.spectrum_confined", std::max(0.0, ext - 2.0 * sk), 1e-10);

    const PotentialSpec spec = PotentialSpec::radial_exp({0.3, 0.15}, std::max(1.0, 6 * std::log(k)));
    const Complex z(1.3, 0.4);
    ComplexMatrix H = perturbed_laplacian(t, spec);
    H.diagonal().array() -= z;
    const ComplexMatrix thd = theta(t).cast<Complex>().asDiagonal();
    ComplexMatrix rhs = adjacency(t);
    rhs.diagonal().array() += -(k + 1.0) + 2.0 * (k + 1.0) - z;
    rhs.diagonal() += m_tilde(t, spec);
    add(out, "operators.theta_conjugation", (thd * H * thd - rhs).cwiseAbs().maxCoeff(), 1e-10);
  }

  // decomposition
  const SphericalBasis b(t);
  {
    double bad = 0;
    for (int r = 0; r <= depth; ++r) {
      Vertex total = 0;
      for (int l = 0; l <= r; ++l) total += b.dim(l);
      if (total != t.sphere_size(r)) ++bad;
    }
    add(out, "decomposition.triangular_dimensions", bad, 0.0);
    add(out, "decomposition.completeness", completeness_residual(b), 1e-10);
    double worst = 0.0;
    for (int n = 0; n <= depth; ++n) worst = std::max(worst, verify_jacobi_form(b, t, n));
    add(out, "decomposition.jacobi_form", worst, 1e-10);
  }
  if (t.vertex_count() <= 600) {
    ComplexMatrix sum = ComplexMatrix::Zero(t.vertex_count(), t.vertex_count());
    double idem = 0.0;
    for (int n = 0; n <= depth; ++n) {
      const ComplexMatrix Pn = projector(b, n);
      idem = std::max(idem, (Pn * Pn - Pn).cwiseAbs().maxCoeff());
      sum += Pn;
    }
    add(out, "decomposition.projectors_idempotent", idem, 1e-10);
    add(out, "decomposition.projectors_resolve_identity",
        (sum - ComplexMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff(), 1e-10);
  }

  // resolvent
  {
    double worst = 0.0;
    for (Complex u : {Complex(-2), Complex(-1), Complex(-0.25), Complex(5), Complex(4.5),
                      Complex(0.5, 0.5)}) {
      const Complex z = sk * u - 2.0 * sk + (k + 1.0);
      const SpectralPoint sp = SpectralPoint::from_z(k, z);
      for (int n = 0; n <= 12; ++n) {
        const Complex q = periodic_trapezoid(
            [&](double th) { return std::exp(kI * (n * th)) / (2.0 - 2.0 * std::cos(th) - u); },
            2048) / (2.0 * std::numbers::pi);
        worst = std::max(worst, std::abs(q - fourier_coefficient(n, sp)));
      }
    }
    add(out, "resolvent.fourier_vs_quadrature", worst, 1e-10);
  }
  if (t.vertex_count() <= dense_cap) {
    const double delta = std::max(1.0, 6 * std::log(k));
    const Weights wts = weights(t, delta);
    const Complex z = t_minus(k) - 0.5;
    const SpectralPoint sp = SpectralPoint::from_z(k, z);
    const KernelMatrix K = weighted_resolvent_kernel(t, b, wts.e_minus, wts.e_minus, sp);
    const ComplexMatrix G = dense_resolvent(t, z, Diagonal(), Boundary::Transparent);
    const ComplexMatrix ref = wts.e_minus.asDiagonal() * G * wts.e_minus.asDiagonal();
    add(out, "resolvent.kernel_vs_dense", (K.K - ref).norm() / ref.norm(), 1e-6);
  }

  // birman-schwinger
  {
    double seam = 0.0;
    for (int a = 1; a <= 2 * depth + 2; ++a)
      seam = std::max(seam, std::abs(bracket_exact(a, kSeriesRadius).first -
                                     bracket_series(a, kSeriesRadius).first));
    add(out, "birman_schwinger.series_seam", seam, 1e-12);
  }
  if (t.vertex_count() <= dense_cap) {
    const PotentialSpec spec =
        PotentialSpec::radial_exp({0.3, 0.15}, std::max(1.0, 6 * std::log(k)));
    const auto hs = hol_split(t, b, spec, Complex(0.01, 0.05));
    add(out, "birman_schwinger.hol_split", hs.reconstruction_residual, 1e-8);

    const Complex z = t_minus(k) - 0.7;
    const Diagonal mt = m_tilde(t, spec);
    const auto pf = polar_factors(mt);
    const ComplexMatrix G0 = dense_resolvent(t, z, Diagonal());
    const ComplexMatrix GM = dense_resolvent(t, z, mt);
    const ComplexMatrix S = pf.sqrt_abs.cast<Complex>().asDiagonal();
    const ComplexMatrix J = pf.J.asDiagonal();
    const ComplexMatrix I = ComplexMatrix::Identity(G0.rows(), G0.cols());
    const ComplexMatrix prod = (I + J * S * G0 * S) * (I - J * S * GM * S);
    add(out, "birman_schwinger.resolvent_identity", (prod - I).cwiseAbs().maxCoeff(), 1e-8);
  }
  return out;
}

}  // namespace spectree
