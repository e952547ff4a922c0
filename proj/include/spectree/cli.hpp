#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "spectree/spectral_point.hpp"
#include "spectree/types.hpp"

namespace spectree {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitCertification = 2,
};

struct RunConfig {
  std::string command;  // validate | kernel | scan | spectrum | index
  int k = 2;
  std::optional<int> depth;
  std::string potential;  // inline JSON or path
  Threshold threshold = Threshold::Minus;
  double r_min = 0.02;
  double r_max = 0.2;
  int grid = 32;
  Complex center{};
  double radius = 0.1;
  int nodes = 256;
  std::optional<Complex> z;
  std::optional<Complex> lambda;
  std::optional<double> delta;
  std::optional<double> eps0;
  double residual_tol = 0.1;
  double min_sv_tol = 1e-10;
  std::string out;  // empty: stdout
  int jobs = 1;
};

/// "re" or "re,im".
Complex parse_complex(const std::string& s);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (flags override a --config TOML file) and calls run().
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spectree
