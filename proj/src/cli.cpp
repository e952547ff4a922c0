#include "spectree/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "spectree/birman_schwinger.hpp"
#include "spectree/charval.hpp"
#include "spectree/error.hpp"
#include "spectree/io.hpp"
#include "spectree/operators.hpp"
#include "spectree/parallel.hpp"
#include "spectree/resolvent.hpp"
#include "spectree/scan.hpp"
#include "spectree/validate.hpp"

namespace spectree {

Complex parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "expected 're' or 're,im', got '" + s + "'");
  }
}

namespace {

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::SingularOnContour:
    case ErrorCode::NonConvergent:
    case ErrorCode::NotIsolated:
    case ErrorCode::NumericalRankFailure:
      return kExitCertification;
    default:
      return kExitUsage;
  }
}

// Output stream: the --out file, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error(ErrorCode::InvalidParameter, "cannot write '" + path + "'");
    os_ = file_.get();
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

PotentialSpec require_potential(const RunConfig& cfg) {
  if (cfg.potential.empty()) throw Error(ErrorCode::InvalidParameter, "--potential is required");
  return load_potential(cfg.potential);
}

int depth_for(const RunConfig& cfg, const PotentialSpec& spec) {
  if (cfg.depth) return *cfg.depth;
  return std::max(1, support_depth(spec, cfg.k));
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_invariant_suite(cfg.k, cfg.depth.value_or(6));
  bool ok = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  value=" << format_double(r.value)
        << "  tol=" << format_double(r.tolerance) << '\n';
    ok = ok && r.pass;
  }
  out << (ok ? "all invariants pass" : "invariant failures") << " (" << results.size()
      << " checks)\n";
  return ok ? kExitOk : kExitCertification;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& out) {
  const int depth = cfg.depth.value_or(8);
  const TreeGraph t = build_tree(cfg.k, depth);
  const SphericalBasis b(t);
  const double delta = cfg.delta.value_or(std::max(1.0, 6.0 * std::log(cfg.k)));
  SpectralPoint sp;
  if (cfg.lambda)
    sp = SpectralPoint::from_lambda(cfg.k, *cfg.lambda, cfg.threshold, cfg.eps0.value_or(2.0));
  else
    sp = SpectralPoint::from_z(cfg.k, cfg.z.value_or(Complex(t_minus(cfg.k) - 0.5, 0.0)));
  const Weights w = weights(t, delta);
  const KernelMatrix K = weighted_resolvent_kernel(t, b, w.e_minus, w.e_minus, sp, {delta, 0.0});
  const ComplexMatrix G = dense_resolvent(t, sp.z, Diagonal(), Boundary::Transparent);
  const ComplexMatrix ref = w.e_minus.asDiagonal() * G * w.e_minus.asDiagonal();
  const double max_err = (K.K - ref).cwiseAbs().maxCoeff();
  const double rel = (K.K - ref).norm() / ref.norm();
  Json j{{"k", cfg.k},
         {"depth", depth},
         {"z", complex_to_json(sp.z)},
         {"delta", delta},
         {"prefactor", K.prefactor},
         {"max_abs_error", max_err},
         {"rel_frobenius_error", rel},
         {"tail_estimate", K.tail_estimate}};
  out << dump_json(j) << '\n';
  return rel <= 1e-6 ? kExitOk : kExitCertification;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PotentialSpec spec = require_potential(cfg);
  const TreeGraph t = build_tree(cfg.k, depth_for(cfg, spec));
  const SphericalBasis b(t);
  Sink sink(cfg.out, out);
  const bool to_file = !(cfg.out.empty() || cfg.out == "-");
  *sink << kScanCsvHeader << '\n';
  ScanOptions opt;
  opt.r_min = cfg.r_min;
  opt.r_max = cfg.r_max;
  opt.grid = cfg.grid;
  opt.threshold = cfg.threshold;
  opt.nodes = cfg.nodes;
  opt.index.residual_tol = cfg.residual_tol;
  opt.index.min_sv_tol = cfg.min_sv_tol;
  opt.bs.eps0 = cfg.eps0;
  opt.jobs = cfg.jobs;
  opt.on_row = [&](const ScanRow& row) { write_scan_row(*sink, row); };
  ScanReport rep;
  try {
    rep = absence_scan(t, b, spec, opt);
  } catch (...) {
    (*sink).flush();
    throw;
  }
  Json ladder = Json::array();
  for (const auto& e : rep.ladder)
    ladder.push_back({{"radius", e.radius}, {"report", index_report_to_json(e.report)}});
  Json summary{{"threshold", to_string(rep.threshold)},
               {"ladder", ladder},
               {"grid_min_sv", rep.min_sv},
               {"all_indices_zero", rep.all_zero}};
  if (to_file)
    out << dump_json(summary) << '\n';
  else
    err << dump_json(summary) << '\n';
  return rep.all_zero ? kExitOk : kExitCertification;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const PotentialSpec spec = require_potential(cfg);
  const TreeGraph t = build_tree(cfg.k, cfg.depth.value_or(8));
  Sink sink(cfg.out, out);
  write_spectrum_csv(*sink, spectrum(t, spec, cfg.eps0.value_or(default_epsilon0(spec.delta))));
  return kExitOk;
}

int cmd_index(const RunConfig& cfg, std::ostream& out) {
  const PotentialSpec spec = require_potential(cfg);
  spec.check(build_tree(cfg.k, 0));
  const TreeGraph t = build_tree(cfg.k, depth_for(cfg, spec));
  const SphericalBasis b(t);
  BSOptions bs;
  bs.eps0 = cfg.eps0;
  BirmanSchwingerFamily family(t, b, spec, cfg.threshold, bs);
  IndexOptions io;
  io.residual_tol = cfg.residual_tol;
  io.min_sv_tol = cfg.min_sv_tol;
  const IndexReport r = contour_index([&](Complex l) { return family.F_with_derivative(l); },
                                      {cfg.center, cfg.radius, cfg.nodes}, io);
  out << dump_json(index_report_to_json(r)) << '\n';
  return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.k < 1) throw Error(ErrorCode::InvalidParameter, "--k must be >= 1");
    if (cfg.command == "validate") return cmd_validate(cfg, out);
    if (cfg.command == "kernel") return cmd_kernel(cfg, out);
    if (cfg.command == "scan") return cmd_scan(cfg, out, err);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "index") return cmd_index(cfg, out);
    throw Error(ErrorCode::InvalidParameter, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    err << "spectree " << cfg.command << ": " << e.what() << '\n';
    return exit_for(e);
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perturbed Laplacians on regular rooted trees: kernels, Birman-Schwinger "
               "operators and characteristic-value counts near the thresholds."};
  app.set_config("--config", "",
                 "TOML file with option defaults, one [command] table per subcommand; flags "
                 "take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.jobs = default_jobs();
  std::string threshold = "minus", center, z, lambda;
  std::optional<int> depth;
  std::optional<double> delta, eps0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "branching factor")->capture_default_str();
    sub->add_option("--depth", depth, "truncation radius R");
    sub->add_option("--jobs", cfg.jobs, "worker threads (default: SPECTREE_JOBS or cores)");
  };
  auto with_potential = [&](CLI::App* sub) {
    sub->add_option("--potential", cfg.potential, "potential JSON, inline or file path");
    sub->add_option("--threshold", threshold, "minus | plus")->capture_default_str();
    sub->add_option("--eps0", eps0, "radius of the working lambda disk");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };

  auto* v = app.add_subcommand("validate", "run the invariant suite");
  common(v);
  auto* kn = app.add_subcommand("kernel", "analytic kernel against the dense oracle");
  common(kn);
  kn->add_option("--z", z, "spectral point re[,im]");
  kn->add_option("--lambda", lambda, "threshold parameter re[,im]");
  kn->add_option("--threshold", threshold, "minus | plus")->capture_default_str();
  kn->add_option("--delta", delta, "weight rate (default max(1, 6 ln k))");
  auto* sc = app.add_subcommand("scan", "absence-of-resonances scan");
  common(sc);
  with_potential(sc);
  sc->add_option("--rmin", cfg.r_min)->capture_default_str();
  sc->add_option("--rmax", cfg.r_max)->capture_default_str();
  sc->add_option("--grid", cfg.grid)->capture_default_str();
  sc->add_option("--nodes", cfg.nodes)->capture_default_str();
  sc->add_option("--residual-tol", cfg.residual_tol)->capture_default_str();
  sc->add_option("--min-sv-tol", cfg.min_sv_tol)->capture_default_str();
  auto* sp = app.add_subcommand("spectrum", "eigenvalues of the truncated perturbed Laplacian");
  common(sp);
  with_potential(sp);
  auto* ix = app.add_subcommand("index", "contour index of I + T(lambda)");
  common(ix);
  with_potential(ix);
  ix->add_option("--center", center, "circle center re[,im]");
  ix->add_option("--radius", cfg.radius)->capture_default_str();
  ix->add_option("--nodes", cfg.nodes)->capture_default_str();
  ix->add_option("--residual-tol", cfg.residual_tol)->capture_default_str();
  ix->add_option("--min-sv-tol", cfg.min_sv_tol)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream so, se;
    const int code = app.exit(e, so, se);
    out << so.str();
    err << se.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  try {
    cfg.depth = depth;
    cfg.delta = delta;
    cfg.eps0 = eps0;
    cfg.threshold = threshold_from_string(threshold);
    if (!center.empty()) cfg.center = parse_complex(center);
    if (!z.empty()) cfg.z = parse_complex(z);
    if (!lambda.empty()) cfg.lambda = parse_complex(lambda);
    if (cfg.jobs < 1) throw Error(ErrorCode::InvalidParameter, "--jobs must be >= 1");
  } catch (const Error& e) {
    err << "spectree: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace spectree
