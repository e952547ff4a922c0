#include "spectree/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectree/error.hpp"

namespace spectree {

namespace {
constexpr double kAssumptionSlack = 1e-12;
}

PotentialSpec PotentialSpec::zero(double delta) { return radial_exp(0.0, delta); }

PotentialSpec PotentialSpec::radial_exp(Complex amplitude, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParameter, "delta must be positive");
  PotentialSpec s;
  s.kind = PotentialKind::RadialExp;
  s.amplitude = amplitude;
  s.delta = delta;
  return s;
}

PotentialSpec PotentialSpec::table(std::vector<TableEntry> values, double delta,
                                   std::optional<double> C) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParameter, "delta must be positive");
  if (C && *C < 0.0) throw Error(ErrorCode::InvalidParameter, "decay constant C must be >= 0");
  for (const auto& e : values)
    if (e.v < 0) throw Error(ErrorCode::InvalidParameter, "negative vertex in potential table");
  std::sort(values.begin(), values.end(),
            [](const TableEntry& a, const TableEntry& b) { return a.v < b.v; });
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i].v == values[i - 1].v)
      throw Error(ErrorCode::InvalidParameter,
                  "vertex " + std::to_string(values[i].v) + " listed twice in potential table");
  PotentialSpec s;
  s.kind = PotentialKind::Table;
  s.values = std::move(values);
  s.delta = delta;
  s.C = C;
  return s;
}

Complex PotentialSpec::value_at(const TreeGraph& t, Vertex v) const {
  if (kind == PotentialKind::RadialExp)
    return amplitude * std::exp(-delta * t.vertex_depth(v));
  t.check_vertex(v);
  auto it = std::lower_bound(values.begin(), values.end(), v,
                             [](const TableEntry& e, Vertex x) { return e.v < x; });
  return (it != values.end() && it->v == v) ? it->value : Complex{};
}

double PotentialSpec::decay_constant(const TreeGraph& t) const {
  if (C) return *C;
  if (kind == PotentialKind::RadialExp) return std::abs(amplitude);
  double c = 0.0;
  for (const auto& e : values) {
    if (e.v >= t.vertex_count()) continue;  // outside the truncation
    c = std::max(c, std::abs(e.value) * std::exp(delta * t.vertex_depth(e.v)));
  }
  return c;
}

bool PotentialSpec::satisfies_assumption(int k) const {
  if (k == 1) return delta > 0.0;
  return delta >= 6.0 * std::log(static_cast<double>(k)) - kAssumptionSlack;
}

void PotentialSpec::check(const TreeGraph& t) const {
  if (!satisfies_assumption(t.k()))
    throw Error(ErrorCode::AssumptionViolated,
                "decay rate delta=" + std::to_string(delta) + " below the required " +
                    (t.k() == 1 ? std::string("0") : std::to_string(6.0 * std::log(t.k()))));
  const double c = decay_constant(t);
  auto certify = [&](Vertex v, Complex m) {
    const double bound = c * std::exp(-delta * t.vertex_depth(v));
    if (std::abs(m) > bound * (1.0 + 1e-12) + 1e-300)
      throw Error(ErrorCode::AssumptionViolated,
                  "decay certificate fails at vertex " + std::to_string(v));
  };
  if (kind == PotentialKind::Table) {
    for (const auto& e : values)
      if (e.v < t.vertex_count()) certify(e.v, e.value);
  } else {
    for (int r = 0; r <= t.depth(); ++r) certify(t.sphere(r).first, value_at(t, t.sphere(r).first));
  }
}

bool PotentialSpec::is_radial(const TreeGraph& t) const {
  if (kind == PotentialKind::RadialExp || t.k() == 1) return true;
  for (int r = 0; r <= t.depth(); ++r) {
    auto s = t.sphere(r);
    const Complex first = value_at(t, s.first);
    for (Vertex v = s.first + 1; v < s.last; ++v)
      if (value_at(t, v) != first) return false;
  }
  return true;
}

int support_depth(const PotentialSpec& spec, int k, double cutoff) {
  if (spec.kind == PotentialKind::RadialExp) {
    const double a = std::abs(spec.amplitude);
    if (a < cutoff) return 0;
    return static_cast<int>(std::floor(std::log(a / cutoff) / spec.delta));
  }
  int deepest = 0;
  for (const auto& e : spec.values) {
    if (std::abs(e.value) < cutoff) continue;
    // depth of a breadth-first index in the full k-ary layout
    int d = 0;
    for (Vertex v = e.v; v > 0; v = (v - 1) / k) ++d;
    deepest = std::max(deepest, d);
  }
  return deepest;
}

double default_epsilon0(double delta) { return std::min(delta / 8.0, 0.3); }

}  // namespace spectree
