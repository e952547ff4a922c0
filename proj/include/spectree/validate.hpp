#pragma once

#include <string>
#include <vector>

namespace spectree {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured residual or count
  double tolerance = 0.0;
};

/// Structural and numerical invariants of every module on one (k, depth)
/// truncation. Dense checks are skipped above `dense_cap` vertices.
std::vector<CheckResult> run_invariant_suite(int k, int depth, long dense_cap = 2000);

}  // namespace spectree
