#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fzeta/explicit.hpp"
#include "fzeta/operator.hpp"
#include "fzeta/strings.hpp"
#include "fzeta/universality.hpp"

namespace fzeta {

/// Shortest-safe round-trip text: 17 significant digits, '.' decimal point.
std::string format_double(double x);

/// Locale-independent parsers; throw ParseError.
double parse_double(const std::string& text);
std::int64_t parse_int(const std::string& text);
/// "2", "-1.5e-3", "2+3i", "0.5-1e-2i", "3i".
cplx parse_complex(const std::string& text);

/// A string definition file: a named family with parameters or explicit atoms.
struct StringDefinition {
  std::optional<ClosedForm> kind;  // empty for an explicit atom list
  std::vector<Atom> atoms;
  double truncation = 1e3;  // atoms are generated up to this scale

  bool operator==(const StringDefinition& other) const;
  /// The string with atoms up to max(truncation, at_least).
  GeneralizedString materialize(double at_least = 0.0) const;
};

StringDefinition parse_string_definition(const nlohmann::json& doc);
StringDefinition read_string_definition(const std::string& path);
nlohmann::json string_definition_to_json(const StringDefinition& def);

/// Rows of numbers under a header; '\n' line ends.
void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

nlohmann::json scan_to_json(const ScanResult& r);
void write_scan_csv(std::ostream& os, const ScanResult& r);

/// CSV with header t,re,im on a uniform grid.
SampledFunction read_grid_file(const std::string& path, double c);
void write_grid_csv(std::ostream& os, const SampledFunction& f);

/// CSV with header re_s,im_s,re,im holding target values at box nodes.
std::vector<std::pair<cplx, cplx>> read_target_file(const std::string& path);

}  // namespace fzeta
