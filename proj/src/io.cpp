#include "spectree/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "spectree/error.hpp"

namespace spectree {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const Json& j) {
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) return "null";
      return format_double(x);
    }
    case Json::value_t::object: {
      std::string out = "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump() + ':' + dump_json(it.value());
      }
      return out + '}';
    }
    case Json::value_t::array: {
      std::string out = "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        out += dump_json(j[i]);
      }
      return out + ']';
    }
    default:
      return j.dump();
  }
}

Json complex_to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "complex value must be {re, im}");
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

PotentialSpec potential_from_json(const Json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const double delta = j.at("delta").get<double>();
    if (kind == "radial-exp") {
      PotentialSpec p = PotentialSpec::radial_exp(complex_from_json(j.at("amplitude")), delta);
      if (j.contains("C")) p.C = j.at("C").get<double>();
      return p;
    }
    if (kind == "table") {
      std::vector<TableEntry> vals;
      for (const auto& e : j.at("values"))
        vals.push_back({e.at("v").get<Vertex>(), {e.value("re", 0.0), e.value("im", 0.0)}});
      std::optional<double> C;
      if (j.contains("C")) C = j.at("C").get<double>();
      return PotentialSpec::table(std::move(vals), delta, C);
    }
    throw Error(ErrorCode::ParseError, "unknown potential kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("potential JSON: ") + e.what());
  }
}

Json potential_to_json(const PotentialSpec& p) {
  Json j;
  j["delta"] = p.delta;
  if (p.kind == PotentialKind::RadialExp) {
    j["kind"] = "radial-exp";
    j["amplitude"] = complex_to_json(p.amplitude);
  } else {
    j["kind"] = "table";
    Json vals = Json::array();
    for (const auto& e : p.values)
      vals.push_back({{"v", e.v}, {"re", e.value.real()}, {"im", e.value.imag()}});
    j["values"] = vals;
  }
  if (p.C) j["C"] = *p.C;
  return j;
}

PotentialSpec load_potential(const std::string& text_or_path) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text_or_path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open potential file '" + text_or_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("potential JSON: ") + e.what());
  }
  return potential_from_json(j);
}

Threshold threshold_from_string(const std::string& s) {
  if (s == "minus") return Threshold::Minus;
  if (s == "plus") return Threshold::Plus;
  throw Error(ErrorCode::ParseError, "threshold must be 'minus' or 'plus', got '" + s + "'");
}

Json spectral_point_to_json(const SpectralPoint& sp) {
  return Json{{"k", sp.k},
              {"lambda", complex_to_json(sp.lambda)},
              {"threshold", to_string(sp.threshold)},
              {"z", complex_to_json(sp.z)}};
}

SpectralPoint spectral_point_from_json(const Json& j, double eps0) {
  try {
    return SpectralPoint::from_lambda(j.at("k").get<int>(), complex_from_json(j.at("lambda")),
                                      threshold_from_string(j.value("threshold", "minus")), eps0);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("spectral point JSON: ") + e.what());
  }
}

Json index_report_to_json(const IndexReport& r) {
  return Json{{"raw", complex_to_json(r.raw)},
              {"rounded", r.rounded},
              {"residual", r.residual},
              {"min_sv", r.min_sv},
              {"nodes", r.nodes}};
}

IndexReport index_report_from_json(const Json& j) {
  try {
    IndexReport r;
    r.raw = complex_from_json(j.at("raw"));
    r.rounded = j.at("rounded").get<long>();
    r.residual = j.at("residual").get<double>();
    r.min_sv = j.at("min_sv").get<double>();
    r.nodes = j.value("nodes", 0);
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("index report JSON: ") + e.what());
  }
}

void write_scan_row(std::ostream& os, const ScanRow& row) {
  os << format_double(row.lambda.real()) << ',' << format_double(row.lambda.imag()) << ','
     << format_double(row.dist_to_minus_one) << ',' << format_double(row.min_sv) << '\n';
}

std::vector<ScanRow> read_scan_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kScanCsvHeader)
    throw Error(ErrorCode::ParseError, "scan CSV header mismatch");
  std::vector<ScanRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double v[4];
    std::stringstream ss(line);
    std::string cell;
    for (double& x : v) {
      if (!std::getline(ss, cell, ','))
        throw Error(ErrorCode::ParseError, "short scan CSV row: " + line);
      try {
        x = std::stod(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad number in scan CSV: " + cell);
      }
    }
    rows.push_back({{v[0], v[1]}, v[2], v[3]});
  }
  return rows;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumEntry>& entries) {
  os << kSpectrumCsvHeader << '\n';
  for (const auto& e : entries)
    os << format_double(e.value.real()) << ',' << format_double(e.value.imag()) << ','
       << int(e.essential) << ',' << int(e.window_minus) << ',' << int(e.window_plus) << '\n';
}

}  // namespace spectree
