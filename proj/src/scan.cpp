#include "spectree/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spectree/error.hpp"
#include "spectree/parallel.hpp"

namespace spectree {

std::vector<double> ladder_radii(double r_min, double r_max) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw Error(ErrorCode::InvalidParameter, "annulus needs 0 < r_min < r_max");
  std::vector<double> out;
  for (double r = r_min; r <= r_max * (1.0 + 1e-12); r *= 2.0) out.push_back(r);
  return out;
}

std::vector<Complex> polar_grid(double r_min, double r_max, int grid) {
  if (grid < 2) throw Error(ErrorCode::InvalidParameter, "grid must be >= 2");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(grid) * grid);
  const double ratio = std::log(r_max / r_min) / (grid - 1);
  for (int i = 0; i < grid; ++i) {
    const double r = r_min * std::exp(ratio * i);
    for (int j = 0; j < grid; ++j)
      out.push_back(std::polar(r, 2.0 * std::numbers::pi * j / grid));
  }
  return out;
}

ScanReport absence_scan(const TreeGraph& t, const SphericalBasis& b, const PotentialSpec& spec,
                        const ScanOptions& opt) {
  spec.check(t);
  BirmanSchwingerFamily family(t, b, spec, opt.threshold, opt.bs, opt.radial_reduction);
  if (!(opt.r_max < family.eps0()))
    throw Error(ErrorCode::OutOfDisk, "annulus reaches beyond the working disk");

  ScanReport rep;
  rep.threshold = opt.threshold;
  const auto radii = ladder_radii(opt.r_min, opt.r_max);
  rep.ladder.resize(radii.size());
  auto F = [&](Complex l) { return family.F_with_derivative(l); };
  parallel_for(radii.size(), opt.jobs, [&](std::size_t i) {
    LadderEntry e;
    e.requested_radius = radii[i];
    double r = radii[i];
    for (int attempt = 0;; ++attempt) {
      try {
        e.report = contour_index(F, {Complex{}, r, opt.nodes}, opt.index);
        break;
      } catch (const Error& err) {
        if (err.code() != ErrorCode::SingularOnContour || attempt == opt.max_nudges) throw;
        r *= 1.0 + 1e-3;
      }
    }
    e.radius = r;
    rep.ladder[i] = e;
  });

  const auto pts = polar_grid(opt.r_min, opt.r_max, opt.grid);
  rep.rows.resize(pts.size());
  // Chunks keep rows streaming in grid order even when evaluated in parallel.
  const std::size_t chunk = static_cast<std::size_t>(std::max(opt.grid, 1));
  for (std::size_t start = 0; start < pts.size(); start += chunk) {
    const std::size_t stop = std::min(pts.size(), start + chunk);
    parallel_for(stop - start, opt.jobs, [&](std::size_t i) {
      const Complex lam = pts[start + i];
      const ResonanceIndicator ind = resonance_indicator(family, lam);
      rep.rows[start + i] = {lam, ind.dist_to_minus_one,
                             smallest_singular_value(family.F(lam))};
    });
    if (opt.on_row)
      for (std::size_t i = start; i < stop; ++i) opt.on_row(rep.rows[i]);
  }

  rep.min_sv = std::numeric_limits<double>::infinity();
  for (const auto& row : rep.rows) rep.min_sv = std::min(rep.min_sv, row.min_sv);
  rep.all_zero = std::all_of(rep.ladder.begin(), rep.ladder.end(),
                             [](const LadderEntry& e) { return e.report.rounded == 0; });
  return rep;
}

}  // namespace spectree
