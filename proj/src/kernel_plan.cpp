#include "spectree/kernel_plan.hpp"

#include <algorithm>
#include <cmath>

#include "spectree/error.hpp"
#include "spectree/gamma_beta.hpp"
#include "spectree/simd/kernels.hpp"

namespace spectree {

KernelCoefficients KernelCoefficients::from_point(const SpectralPoint& sp, int max_index) {
  KernelCoefficients c;
  c.k = sp.k;
  c.scale = 1.0 / std::sqrt(static_cast<double>(sp.k));
  const Complex s = sp.two_sin_phi();
  if (std::abs(s) < 1e-15) throw Error(ErrorCode::BranchFailure, "2 sin(phi) = 0");
  c.F.resize(static_cast<std::size_t>(max_index) + 1);
  Complex p = 1.0 / s;
  for (auto& f : c.F) {
    f = p;
    p *= sp.w;
  }
  return c;
}

KernelCoefficients KernelCoefficients::hol(int k, Complex lambda, int max_index,
                                           bool with_derivative) {
  KernelCoefficients c;
  c.k = k;
  c.scale = 1.0 / std::sqrt(static_cast<double>(k));
  c.F.resize(static_cast<std::size_t>(max_index) + 1);
  if (with_derivative) c.dF.resize(c.F.size());
  for (int a = 0; a <= max_index; ++a) {
    auto [f, df] = bracket_with_derivative(a, lambda);
    c.F[a] = f;
    if (with_derivative) c.dF[a] = df;
  }
  return c;
}

namespace {

struct Group {
  int r;
  Eigen::Index first, count;
};

std::vector<Group> group_by_depth(const TreeGraph& t, const std::vector<Vertex>& vs) {
  std::vector<Group> out;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(vs.size()); ++i) {
    const int r = t.vertex_depth(vs[i]);
    if (!out.empty() && out.back().r == r) {
      ++out.back().count;
    } else {
      if (!out.empty() && out.back().r > r)
        throw Error(ErrorCode::InvalidParameter, "kernel vertices must be sorted by depth");
      out.push_back({r, i, 1});
    }
  }
  return out;
}

// Depth of the last common ancestor of v (depth r) and v' (depth rp).
int common_depth(const TreeGraph& t, Vertex v, int r, Vertex vp, int rp) {
  const int k = t.k();
  while (r > rp) { v = (v - 1) / k; --r; }
  while (rp > r) { vp = (vp - 1) / k; --rp; }
  while (v != vp) {
    v = (v - 1) / k;
    vp = (vp - 1) / k;
    --r;
  }
  return r;
}

}  // namespace

KernelPlan::KernelPlan(const SphericalBasis& basis, std::vector<Vertex> rows,
                       std::vector<Vertex> cols, const RealVector& row_weight,
                       const RealVector& col_weight)
    : rows_(std::move(rows)), cols_(std::move(cols)) {
  const TreeGraph& t = basis.tree();
  if (row_weight.size() != static_cast<Eigen::Index>(rows_.size()) ||
      col_weight.size() != static_cast<Eigen::Index>(cols_.size()))
    throw Error(ErrorCode::InvalidParameter, "weight length does not match the vertex list");
  const auto rg = group_by_depth(t, rows_);
  const auto cg = group_by_depth(t, cols_);
  const double k = t.k();

  for (const auto& a : rg)
    for (const auto& b : cg) {
      Block blk;
      blk.r = a.r;
      blk.rp = b.r;
      blk.row0 = a.first;
      blk.col0 = b.first;
      blk.nrows = a.count;
      blk.ncols = b.count;
      max_index_ = std::max(max_index_, a.r + b.r + 2);

      // Levels that can carry a nonzero: up to (common depth + 1), capped.
      const int nlim = std::min(a.r, b.r);
      std::vector<int> cdepth(static_cast<std::size_t>(a.count * b.count));
      int deepest = -1;
      for (Eigen::Index j = 0; j < b.count; ++j)
        for (Eigen::Index i = 0; i < a.count; ++i) {
          const int c = common_depth(t, rows_[a.first + i], a.r, cols_[b.first + j], b.r);
          cdepth[j * a.count + i] = c;
          deepest = std::max(deepest, std::min(c + 1, nlim));
        }
      blk.nmax = deepest;
      blk.offset = storage_.size();
      const std::size_t slab = static_cast<std::size_t>(a.count * b.count);
      storage_.resize(storage_.size() + slab * (blk.nmax + 1), 0.0);

      for (int n = 0; n <= blk.nmax; ++n) {
        double* P = storage_.data() + blk.offset + slab * n;
        const double level = std::pow(k, n - 0.5 * (a.r + b.r));
        for (Eigen::Index j = 0; j < b.count; ++j)
          for (Eigen::Index i = 0; i < a.count; ++i) {
            const int c = cdepth[j * a.count + i];
            if (n > c + 1) continue;
            const Vertex v = rows_[a.first + i], vp = cols_[b.first + j];
            const double q = basis.chi_kernel(n, t.ancestor(v, n), t.ancestor(vp, n));
            P[j * a.count + i] = row_weight(a.first + i) * col_weight(b.first + j) * level * q;
          }
      }
      blocks_.push_back(blk);
    }
}

ComplexMatrix KernelPlan::evaluate(const KernelCoefficients& c,
                                 const simd::KernelTable* table) const {
  if (static_cast<int>(c.F.size()) <= max_index_)
    throw Error(ErrorCode::InvalidParameter, "coefficient table too short for this plan");
  const auto& kern = table ? *table : simd::kernels();
  ComplexMatrix out = ComplexMatrix::Zero(rows(), cols());
  for (const auto& blk : blocks_) {
    const std::size_t slab = static_cast<std::size_t>(blk.nrows * blk.ncols);
    const int b = std::abs(blk.r - blk.rp);
    for (int n = 0; n <= blk.nmax; ++n) {
      const Complex coef = c.coef(blk.r + blk.rp - 2 * n + 2, b);
      const double* P = storage_.data() + blk.offset + slab * n;
      for (Eigen::Index j = 0; j < blk.ncols; ++j)
        kern.accumulate_scaled(&out(blk.row0, blk.col0 + j), P + j * blk.nrows,
                               static_cast<std::size_t>(blk.nrows), coef);
    }
  }
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> KernelPlan::evaluate_with_derivative(
    const KernelCoefficients& c, const simd::KernelTable* table) const {
  if (!c.has_derivative())
    throw Error(ErrorCode::InvalidParameter, "coefficients were built without derivatives");
  if (static_cast<int>(c.F.size()) <= max_index_)
    throw Error(ErrorCode::InvalidParameter, "coefficient table too short for this plan");
  const auto& kern = table ? *table : simd::kernels();
  ComplexMatrix out = ComplexMatrix::Zero(rows(), cols());
  ComplexMatrix dout = ComplexMatrix::Zero(rows(), cols());
  for (const auto& blk : blocks_) {
    const std::size_t slab = static_cast<std::size_t>(blk.nrows * blk.ncols);
    const int b = std::abs(blk.r - blk.rp);
    for (int n = 0; n <= blk.nmax; ++n) {
      const int a = blk.r + blk.rp - 2 * n + 2;
      const Complex coef = c.coef(a, b), dcoef = c.dcoef(a, b);
      const double* P = storage_.data() + blk.offset + slab * n;
      for (Eigen::Index j = 0; j < blk.ncols; ++j)
        kern.accumulate_scaled2(&out(blk.row0, blk.col0 + j), &dout(blk.row0, blk.col0 + j),
                                P + j * blk.nrows, static_cast<std::size_t>(blk.nrows), coef,
                                dcoef);
    }
  }
  return {out, dout};
}

}  // namespace spectree
