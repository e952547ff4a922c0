#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "spectree/charval.hpp"

namespace spectree {

struct ScanRow {
  Complex lambda{};
  double dist_to_minus_one = 0.0;
  double min_sv = 0.0;
};

struct LadderEntry {
  double requested_radius = 0.0;
  double radius = 0.0;  // after nudging away from singular nodes
  IndexReport report;
};

struct ScanOptions {
  double r_min = 0.02;
  double r_max = 0.2;
  int grid = 32;  // grid x grid polar points
  Threshold threshold = Threshold::Minus;
  int nodes = 256;
  IndexOptions index;
  BSOptions bs;
  bool radial_reduction = true;
  int jobs = 1;
  int max_nudges = 3;
  /// Called for each grid row in grid order, as soon as it is available.
  std::function<void(const ScanRow&)> on_row;
};

struct ScanReport {
  Threshold threshold = Threshold::Minus;
  std::vector<LadderEntry> ladder;
  std::vector<ScanRow> rows;
  double min_sv = 0.0;  // over the grid
  bool all_zero = false;
};

/// Radii r_min, 2 r_min, 4 r_min, ... not exceeding r_max.
std::vector<double> ladder_radii(double r_min, double r_max);

/// Polar grid: `grid` radii spaced geometrically over [r_min, r_max] times
/// `grid` equispaced angles, radius-major.
std::vector<Complex> polar_grid(double r_min, double r_max, int grid);

/// Contour indices of I + T on the ladder circles and the grid of
/// (dist_to_minus_one, min_sv) values over the annulus.
ScanReport absence_scan(const TreeGraph& t, const SphericalBasis& b, const PotentialSpec& spec,
                        const ScanOptions& opt);

}  // namespace spectree
