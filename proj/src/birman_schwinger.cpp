#include "spectree/birman_schwinger.hpp"

#include <cmath>
#include <limits>

#include "spectree/error.hpp"
#include "spectree/operators.hpp"

namespace spectree {

PolarFactors polar_factors(const Diagonal& m) {
  PolarFactors p;
  p.J = Diagonal::Ones(m.size());
  p.sqrt_abs = RealVector::Zero(m.size());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double a = std::abs(m(i));
    if (a == 0.0) continue;
    p.J(i) = m(i) / a;
    p.sqrt_abs(i) = std::sqrt(a);
  }
  return p;
}

BSSupport bs_support(const TreeGraph& t, const PotentialSpec& spec, double cutoff,
                     bool override_assumption) {
  const Diagonal mt = m_tilde(t, spec, override_assumption);
  BSSupport s;
  for (int r = 0; r <= t.depth(); ++r) {
    const auto sph = t.sphere(r);
    for (Vertex v = sph.first; v < sph.last; ++v)
      if (std::abs(mt(v)) >= cutoff) s.depth = r;
  }
  for (Vertex v = 0; v < t.sphere(s.depth).last; ++v)
    if (mt(v) != Complex{}) s.vertices.push_back(v);
  if (s.vertices.empty())
    throw Error(ErrorCode::InvalidParameter, "M~ vanishes identically on the truncation");
  Diagonal restricted(static_cast<Eigen::Index>(s.vertices.size()));
  for (std::size_t i = 0; i < s.vertices.size(); ++i) restricted(i) = mt(s.vertices[i]);
  auto pf = polar_factors(restricted);
  s.J = pf.J;
  s.sqrt_abs = pf.sqrt_abs;
  return s;
}

namespace {

double working_radius(const PotentialSpec& spec, const BSOptions& opt) {
  if (opt.allow_outside_disk) return 2.0;
  return opt.eps0 ? *opt.eps0 : default_epsilon0(spec.delta);
}

KernelPlan support_plan(const SphericalBasis& b, const BSSupport& s) {
  return KernelPlan(b, s.vertices, s.vertices, s.sqrt_abs, s.sqrt_abs);
}

}  // namespace

BSOperator bs_operator(const TreeGraph& t, const SphericalBasis& b, const PotentialSpec& spec,
                       Complex lambda, Threshold th, const BSOptions& opt) {
  const SpectralPoint sp = SpectralPoint::from_lambda(t.k(), lambda, th, working_radius(spec, opt));
  const BSSupport s = bs_support(t, spec, opt.cutoff, opt.override_assumption);
  const KernelPlan plan = support_plan(b, s);
  BSOperator op;
  op.support = s.vertices;
  op.J = s.J;
  op.sqrt_abs = s.sqrt_abs;
  op.lambda = lambda;
  op.sign = sp.sign;
  op.threshold = th;
  op.matrix = static_cast<double>(sp.sign) * s.J.asDiagonal() *
              plan.evaluate(KernelCoefficients::from_point(sp, plan.max_index()));
  return op;
}

BSOperator bs_operator_at_z(const TreeGraph& t, const SphericalBasis& b,
                            const PotentialSpec& spec, Complex z, const BSOptions& opt) {
  const SpectralPoint sp = SpectralPoint::from_z(t.k(), z);
  const BSSupport s = bs_support(t, spec, opt.cutoff, opt.override_assumption);
  const KernelPlan plan = support_plan(b, s);
  BSOperator op;
  op.support = s.vertices;
  op.J = s.J;
  op.sqrt_abs = s.sqrt_abs;
  op.lambda = sp.lambda;
  op.matrix = s.J.asDiagonal() * plan.evaluate(KernelCoefficients::from_point(sp, plan.max_index()));
  return op;
}

HolSplit hol_split(const TreeGraph& t, const SphericalBasis& b, const PotentialSpec& spec,
                   Complex lambda, const BSOptions& opt) {
  const double eps0 = working_radius(spec, opt);
  if (!(std::abs(lambda) < eps0)) throw Error(ErrorCode::OutOfDisk, "lambda outside the disk");
  const BSSupport s = bs_support(t, spec, opt.cutoff, opt.override_assumption);
  const KernelPlan plan = support_plan(b, s);
  HolSplit out;
  out.hol = 0.5 * plan.evaluate(KernelCoefficients::hol(t.k(), lambda, plan.max_index(), false));
  if (lambda == Complex{}) {
    out.reconstruction_residual = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const SpectralPoint sp = SpectralPoint::from_lambda(t.k(), lambda, Threshold::Minus, eps0);
  const ComplexMatrix T =
      s.J.asDiagonal() * plan.evaluate(KernelCoefficients::from_point(sp, plan.max_index()));
  out.reconstruction_residual = (T - kHolScale * s.J.asDiagonal() * out.hol).norm();
  return out;
}

Eigen::Index BlockMatrix::dimension() const {
  Eigen::Index d = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) d += blocks[i].rows() * multiplicity[i];
  return d;
}

ComplexMatrix BlockMatrix::expand() const {
  const Eigen::Index d = dimension();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  Eigen::Index at = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (long c = 0; c < multiplicity[i]; ++c) {
      out.block(at, at, blocks[i].rows(), blocks[i].cols()) = blocks[i];
      at += blocks[i].rows();
    }
  return out;
}

BirmanSchwingerFamily::BirmanSchwingerFamily(const TreeGraph& t, const SphericalBasis& b,
                                             const PotentialSpec& spec, Threshold th,
                                             const BSOptions& opt, bool allow_reduction)
    : k_(t.k()),
      sign_(th == Threshold::Minus ? 1 : -1),
      threshold_(th),
      eps0_(working_radius(spec, opt)),
      allow_outside_(opt.allow_outside_disk),
      support_(bs_support(t, spec, opt.cutoff, opt.override_assumption)) {
  plan_ = std::make_shared<const KernelPlan>(support_plan(b, support_));
  max_index_ = plan_->max_index();
  if (!allow_reduction || !spec.is_radial(t)) return;

  // Radial M~: one value per sphere. The support is a union of whole spheres.
  std::vector<int> radii;
  std::vector<double> weight;
  std::vector<Complex> phase;
  for (std::size_t i = 0; i < support_.vertices.size(); ++i) {
    const int r = t.vertex_depth(support_.vertices[i]);
    if (!radii.empty() && radii.back() == r) continue;
    radii.push_back(r);
    weight.push_back(support_.sqrt_abs(i));
    phase.push_back(static_cast<double>(sign_) * support_.J(i));
  }
  for (int n = 0; n <= support_.depth; ++n) {
    const long mult = static_cast<long>(b.dim(n));
    if (mult == 0) continue;
    LevelBlock lb;
    lb.n = n;
    lb.multiplicity = mult;
    for (std::size_t i = 0; i < radii.size(); ++i)
      if (radii[i] >= n) lb.radii.push_back(radii[i]);
    if (lb.radii.empty()) continue;
    lb.weight.resize(lb.radii.size());
    lb.phase.resize(lb.radii.size());
    const std::size_t skip = radii.size() - lb.radii.size();
    for (std::size_t i = 0; i < lb.radii.size(); ++i) {
      lb.weight(i) = weight[skip + i];
      lb.phase(i) = phase[skip + i];
    }
    levels_.push_back(std::move(lb));
  }
  reduced_ = true;
}

void BirmanSchwingerFamily::check_lambda(Complex lambda) const {
  if (!(std::abs(lambda) < eps0_))
    throw Error(ErrorCode::OutOfDisk, "|lambda| = " + std::to_string(std::abs(lambda)) +
                                          " outside the working disk");
}

KernelCoefficients BirmanSchwingerFamily::coefficients(Complex lambda, bool derivative) const {
  check_lambda(lambda);
  return KernelCoefficients::hol(k_, lambda, max_index_, derivative);
}

ComplexMatrix BirmanSchwingerFamily::T(Complex lambda) const {
  return static_cast<double>(sign_) * support_.J.asDiagonal() *
         plan_->evaluate(coefficients(lambda, false));
}

std::pair<ComplexMatrix, ComplexMatrix> BirmanSchwingerFamily::T_with_derivative(
    Complex lambda) const {
  auto [K, dK] = plan_->evaluate_with_derivative(coefficients(lambda, true));
  const Diagonal phase = static_cast<double>(sign_) * support_.J;
  return {phase.asDiagonal() * K, phase.asDiagonal() * dK};
}

BlockMatrix BirmanSchwingerFamily::F(Complex lambda) const {
  BlockMatrix out;
  if (!reduced_) {
    ComplexMatrix M = T(lambda);
    M.diagonal().array() += 1.0;
    out.blocks.push_back(std::move(M));
    out.multiplicity.push_back(1);
    return out;
  }
  const auto c = coefficients(lambda, false);
  for (const auto& lb : levels_) {
    const Eigen::Index m = static_cast<Eigen::Index>(lb.radii.size());
    ComplexMatrix B(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i) {
        const int r = lb.radii[i], rp = lb.radii[j];
        B(i, j) = lb.phase(i) * lb.weight(i) * lb.weight(j) *
                  c.coef(r + rp - 2 * lb.n + 2, std::abs(r - rp));
      }
    B.diagonal().array() += 1.0;
    out.blocks.push_back(std::move(B));
    out.multiplicity.push_back(lb.multiplicity);
  }
  return out;
}

std::pair<BlockMatrix, BlockMatrix> BirmanSchwingerFamily::F_with_derivative(
    Complex lambda) const {
  BlockMatrix F, dF;
  if (!reduced_) {
    auto [M, dM] = T_with_derivative(lambda);
    M.diagonal().array() += 1.0;
    F.blocks.push_back(std::move(M));
    F.multiplicity.push_back(1);
    dF.blocks.push_back(std::move(dM));
    dF.multiplicity.push_back(1);
    return {F, dF};
  }
  const auto c = coefficients(lambda, true);
  for (const auto& lb : levels_) {
    const Eigen::Index m = static_cast<Eigen::Index>(lb.radii.size());
    ComplexMatrix B(m, m), dB(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i) {
        const int r = lb.radii[i], rp = lb.radii[j];
        const int a = r + rp - 2 * lb.n + 2, bb = std::abs(r - rp);
        const Complex s = lb.phase(i) * lb.weight(i) * lb.weight(j);
        B(i, j) = s * c.coef(a, bb);
        dB(i, j) = s * c.dcoef(a, bb);
      }
    B.diagonal().array() += 1.0;
    F.blocks.push_back(std::move(B));
    F.multiplicity.push_back(lb.multiplicity);
    dF.blocks.push_back(std::move(dB));
    dF.multiplicity.push_back(lb.multiplicity);
  }
  return {F, dF};
}

}  // namespace spectree
