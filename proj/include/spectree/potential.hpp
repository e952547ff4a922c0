#pragma once

#include <optional>
#include <vector>

#include "spectree/tree.hpp"
#include "spectree/types.hpp"

namespace spectree {

enum class PotentialKind { RadialExp, Table };

struct TableEntry {
  Vertex v = 0;
  Complex value{};
};

/// Complex multiplication potential M on the tree together with its decay
/// certificate |M(v)| <= C exp(-delta |v|).
///
/// radial-exp: M(v) = amplitude * exp(-delta |v|).
/// table:      M(v) = listed value, zero for unlisted vertices.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::RadialExp;
  Complex amplitude{};
  double delta = 1.0;
  std::vector<TableEntry> values;
  std::optional<double> C;  // estimated from the truncation when absent

  static PotentialSpec zero(double delta);
  static PotentialSpec radial_exp(Complex amplitude, double delta);
  static PotentialSpec table(std::vector<TableEntry> values, double delta,
                             std::optional<double> C = std::nullopt);

  Complex value_at(const TreeGraph& t, Vertex v) const;

  /// C if supplied, otherwise max_v |M(v)| e^{delta |v|} over the truncation.
  double decay_constant(const TreeGraph& t) const;

  /// delta > 0 for k = 1, delta >= 6 ln k for k >= 2 (up to 1e-12).
  bool satisfies_assumption(int k) const;

  /// Throws AssumptionViolated if the decay rate or the certificate fails.
  void check(const TreeGraph& t) const;

  /// True when M is constant on every sphere of the truncation.
  bool is_radial(const TreeGraph& t) const;
};

/// Deepest sphere on which |M| >= cutoff, for choosing the truncation.
/// The root is always included because of the -d0 term.
int support_depth(const PotentialSpec& spec, int k, double cutoff = 1e-14);

/// Default radius of the working lambda disk.
double default_epsilon0(double delta);

}  // namespace spectree
