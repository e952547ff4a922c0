#include "spectree/charval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "spectree/error.hpp"
#include "spectree/operators.hpp"
#include "spectree/simd/kernels.hpp"

namespace spectree {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex node(const ContourSpec& c, int j, int n) {
  return c.center + c.radius * std::exp(kI * (kTwoPi * j / n));
}

BlockMatrix single(ComplexMatrix m) {
  BlockMatrix b;
  b.blocks.push_back(std::move(m));
  b.multiplicity.push_back(1);
  return b;
}

struct NodeValue {
  Complex trace;
  double min_sv;
};

NodeValue integrand(const BlockMatrix& F, const BlockMatrix& dF) {
  NodeValue out{Complex{}, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < F.blocks.size(); ++i) {
    out.min_sv = std::min(out.min_sv, smallest_singular_value(F.blocks[i]));
    Eigen::PartialPivLU<ComplexMatrix> lu(F.blocks[i]);
    out.trace += static_cast<double>(F.multiplicity[i]) * lu.solve(dF.blocks[i]).trace();
  }
  return out;
}

void validate(const ContourSpec& c) {
  if (!(c.radius > 0.0)) throw Error(ErrorCode::InvalidParameter, "contour radius must be > 0");
  if (c.nodes < 16) throw Error(ErrorCode::InvalidParameter, "contour needs at least 16 nodes");
}

// Unit phase of det F.
Complex det_phase(const BlockMatrix& F) {
  Complex ph = 1.0;
  for (std::size_t i = 0; i < F.blocks.size(); ++i) {
    Eigen::PartialPivLU<ComplexMatrix> lu(F.blocks[i]);
    Complex p = lu.permutationP().determinant();
    const auto& LU = lu.matrixLU();
    for (Eigen::Index d = 0; d < LU.rows(); ++d) {
      const double a = std::abs(LU(d, d));
      if (a == 0.0) throw Error(ErrorCode::SingularOnContour, "det F vanishes on the contour");
      p *= LU(d, d) / a;
    }
    ph *= std::pow(p, static_cast<double>(F.multiplicity[i]));
  }
  return ph;
}

double unwrap(const BlockFunction& F, const ContourSpec& c, double t0, Complex p0, double t1,
              Complex p1, int depth) {
  const double d = std::arg(p1 / p0);
  if (std::abs(d) <= 0.5 * std::numbers::pi) return d;
  if (depth == 0)
    throw Error(ErrorCode::NonConvergent, "determinant phase could not be resolved");
  const double tm = 0.5 * (t0 + t1);
  const Complex pm = det_phase(F(c.center + c.radius * std::exp(kI * tm)));
  return unwrap(F, c, t0, p0, tm, pm, depth - 1) + unwrap(F, c, tm, pm, t1, p1, depth - 1);
}

}  // namespace

double smallest_singular_value(const ComplexMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  if (m.rows() <= 16) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().minCoeff();
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues().minCoeff();
}

double smallest_singular_value(const BlockMatrix& m) {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& b : m.blocks) s = std::min(s, smallest_singular_value(b));
  return s;
}

IndexReport contour_index(const BlockFunctionWithDerivative& F, const ContourSpec& c,
                          const IndexOptions& opt) {
  validate(c);
  Complex sum{};   // sum over nodes of Tr[F^{-1}F'] e^{it}
  Complex half{};  // same over the even nodes, i.e. the rule with n / 2 nodes
  double min_sv = std::numeric_limits<double>::infinity();
  int n = c.nodes;
  auto visit = [&](int j, int total) {
    const Complex lam = node(c, j, total);
    auto [Fv, dFv] = F(lam);
    const NodeValue v = integrand(Fv, dFv);
    min_sv = std::min(min_sv, v.min_sv);
    if (!(v.min_sv > opt.min_sv_tol))
      throw Error(ErrorCode::SingularOnContour,
                  "smallest singular value " + std::to_string(v.min_sv) + " at lambda = (" +
                      std::to_string(lam.real()) + ", " + std::to_string(lam.imag()) + ")");
    const Complex term = v.trace * std::exp(kI * (kTwoPi * j / total));
    sum += term;
    if (j % 2 == 0) half += term;
  };
  for (int j = 0; j < n; ++j) visit(j, n);

  IndexReport rep;
  for (int round = 0;; ++round) {
    rep.raw = c.radius * sum / static_cast<double>(n);
    rep.rounded = std::lround(rep.raw.real());
    rep.residual = std::abs(rep.raw - Complex(static_cast<double>(rep.rounded), 0.0));
    rep.min_sv = min_sv;
    rep.nodes = n;
    // A zero close to the contour aliases the trapezoidal sum onto a wrong
    // integer with a small residual. The coarser rule exposes it.
    const double drift =
        n % 2 == 0 ? std::abs(rep.raw - c.radius * half / static_cast<double>(n / 2)) : 0.0;
    if (rep.residual < opt.residual_tol && drift < opt.residual_tol) return rep;
    if (round == opt.max_doublings)
      throw Error(ErrorCode::NonConvergent,
                  "index residual " + std::to_string(rep.residual) + ", drift from the " +
                      std::to_string(n / 2) + "-node rule " + std::to_string(drift) + " after " +
                      std::to_string(n) + " nodes");
    half = sum;
    for (int j = 1; j < 2 * n; j += 2) visit(j, 2 * n);  // old nodes are the even ones
    n *= 2;
  }
}

IndexReport contour_index(const MatrixFunction& F, const MatrixFunction& dF,
                          const ContourSpec& c, const IndexOptions& opt) {
  return contour_index(
      [&](Complex l) { return std::make_pair(single(F(l)), single(dF(l))); }, c, opt);
}

IndexReport contour_index_fd(const MatrixFunction& F, const ContourSpec& c,
                             const IndexOptions& opt) {
  const double h = 1e-6 * c.radius;
  return contour_index(
      [&](Complex l) {
        ComplexMatrix d = (F(l + h) - F(l - h)) / (2.0 * h);
        return std::make_pair(single(F(l)), single(std::move(d)));
      },
      c, opt);
}

long det_winding(const BlockFunction& F, const ContourSpec& c) {
  validate(c);
  const int n = c.nodes;
  std::vector<Complex> ph(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j < n; ++j) ph[j] = det_phase(F(node(c, j, n)));
  ph[n] = ph[0];
  double total = 0.0;
  for (int j = 0; j < n; ++j)
    total += unwrap(F, c, kTwoPi * j / n, ph[j], kTwoPi * (j + 1) / n, ph[j + 1], 12);
  return std::lround(total / kTwoPi);
}

long det_winding(const MatrixFunction& F, const ContourSpec& c) {
  return det_winding([&](Complex l) { return single(F(l)); }, c);
}

ResonanceIndicator resonance_indicator(const BirmanSchwingerFamily& family, Complex lambda) {
  ResonanceIndicator out;
  const BlockMatrix F = family.F(lambda);
  out.dist_to_minus_one = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < F.blocks.size(); ++i) {
    ComplexMatrix T = F.blocks[i];
    T.diagonal().array() -= 1.0;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(T, false);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::NonConvergent, "eigenvalues of T did not converge");
    for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e) {
      const Complex mu = es.eigenvalues()(e);
      out.dist_to_minus_one = std::min(out.dist_to_minus_one, std::abs(mu + 1.0));
      out.eigs.insert(out.eigs.end(), static_cast<std::size_t>(F.multiplicity[i]), mu);
    }
    if (T.rows() <= 16) {
      out.norm = std::max(out.norm, Eigen::JacobiSVD<ComplexMatrix>(T).singularValues()(0));
    } else {
      out.norm = std::max(out.norm, Eigen::BDCSVD<ComplexMatrix>(T).singularValues()(0));
    }
  }
  out.flagged = out.dist_to_minus_one < 1e-6 * (1.0 + out.norm);
  return out;
}

ResonanceIndicator resonance_indicator(const TreeGraph& t, const SphericalBasis& b,
                                       const PotentialSpec& spec, Complex lambda, Threshold th,
                                       const BSOptions& opt) {
  return resonance_indicator(BirmanSchwingerFamily(t, b, spec, th, opt), lambda);
}

long riesz_multiplicity(const ComplexMatrix& op, Complex z0, double radius, int nodes) {
  if (op.rows() != op.cols()) throw Error(ErrorCode::InvalidParameter, "operator must be square");
  validate({z0, radius, nodes});
  Eigen::ComplexEigenSolver<ComplexMatrix> es(op, false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NonConvergent, "eigenvalues did not converge");
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double d = std::abs(es.eigenvalues()(i) - z0);
    if (d > 0.5 * radius && d < 2.0 * radius)
      throw Error(ErrorCode::NotIsolated, "eigenvalue at distance " + std::to_string(d) +
                                              " of z0 is neither inside nor well outside");
  }
  // P = (1/2 pi i) oint (zeta - op)^{-1} d zeta
  const auto& kern = simd::kernels();
  const Eigen::Index n = op.rows();
  ComplexMatrix P = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < nodes; ++j) {
    const Complex e = std::exp(kI * (kTwoPi * j / nodes));
    ComplexMatrix A = -op;
    A.diagonal().array() += z0 + radius * e;
    const ComplexMatrix R = A.partialPivLu().inverse();
    kern.axpy(P.data(), R.data(), static_cast<std::size_t>(P.size()), radius * e / double(nodes));
  }
  Eigen::BDCSVD<ComplexMatrix> svd(P);
  long rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 0.5) ++rank;
  return rank;
}

std::vector<SpectrumEntry> spectrum(const TreeGraph& t, const PotentialSpec& spec, double eps0,
                                    bool override_assumption) {
  if (eps0 < 0.0) eps0 = default_epsilon0(spec.delta);
  const ComplexMatrix H = perturbed_laplacian(t, spec, override_assumption);
  std::vector<Complex> vals;
  if (H.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(H.real(), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) vals.emplace_back(es.eigenvalues()(i));
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(H, false);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::NonConvergent, "eigenvalues did not converge");
    vals.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  }
  std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  const double lo = t_minus(t.k()), hi = t_plus(t.k());
  const double win = eps0 * eps0 * std::sqrt(static_cast<double>(t.k()));
  std::vector<SpectrumEntry> out;
  out.reserve(vals.size());
  for (Complex v : vals) {
    SpectrumEntry e;
    e.value = v;
    e.essential = std::abs(v.imag()) <= 1e-10 && v.real() >= lo - 1e-10 && v.real() <= hi + 1e-10;
    e.window_minus = std::abs(v - lo) < win;
    e.window_plus = std::abs(v - hi) < win;
    out.push_back(e);
  }
  return out;
}

}  // namespace spectree
