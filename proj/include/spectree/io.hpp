#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "spectree/charval.hpp"
#include "spectree/potential.hpp"
#include "spectree/scan.hpp"
#include "spectree/spectral_point.hpp"

namespace spectree {

using Json = nlohmann::json;

/// %.17g, so every double survives a text round trip.
std::string format_double(double x);

/// Serializes like Json::dump but prints floating-point numbers with %.17g.
std::string dump_json(const Json& j);

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

/// {"kind":"radial-exp","amplitude":{"re":..,"im":..},"delta":..}
/// {"kind":"table","values":[{"v":0,"re":..,"im":..},...],"delta":..,"C":..}
PotentialSpec potential_from_json(const Json& j);
Json potential_to_json(const PotentialSpec& p);

/// Inline JSON text or a path to a JSON file.
PotentialSpec load_potential(const std::string& text_or_path);

/// {"k":2,"lambda":{"re":0.0,"im":0.1},"threshold":"minus"}
Json spectral_point_to_json(const SpectralPoint& sp);
SpectralPoint spectral_point_from_json(const Json& j, double eps0 = 0.3);

Threshold threshold_from_string(const std::string& s);

/// {"raw":{"re":..,"im":..},"rounded":0,"residual":..,"min_sv":..}
Json index_report_to_json(const IndexReport& r);
IndexReport index_report_from_json(const Json& j);

inline constexpr const char* kScanCsvHeader = "re_lambda,im_lambda,dist_minus_one,min_sv";
void write_scan_row(std::ostream& os, const ScanRow& row);
std::vector<ScanRow> read_scan_csv(std::istream& is);

inline constexpr const char* kSpectrumCsvHeader = "re,im,essential,window_minus,window_plus";
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumEntry>& entries);

}  // namespace spectree
