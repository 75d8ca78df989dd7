#include "fzeta/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fzeta {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double json_number(const nlohmann::json& v, const char* what) {
  if (v.is_string()) return parse_double(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw Error(ErrorKind::ParseError, std::string("expected a number for ") + what);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path, const std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != header) {
    throw Error(ErrorKind::ParseError, path + ": unexpected header");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw Error(ErrorKind::ParseError, path + ": wrong number of columns");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || t.empty()) throw Error(ErrorKind::ParseError, "not a number: '" + text + "'");
  return v;
}

std::int64_t parse_int(const std::string& text) {
  const std::string t = trim(text);
  std::int64_t v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty()) {
    throw Error(ErrorKind::ParseError, "not an integer: '" + text + "'");
  }
  return v;
}

cplx parse_complex(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw Error(ErrorKind::ParseError, "empty complex number");
  if (t.back() != 'i') return {parse_double(t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](const std::string& s) {
    if (s == "+" || s.empty()) return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {parse_double(body.substr(0, split)), imag_of(body.substr(split))};
}

bool StringDefinition::operator==(const StringDefinition& other) const {
  if (truncation != other.truncation || atoms != other.atoms) return false;
  if (kind.has_value() != other.kind.has_value()) return false;
  return !kind || closed_form_name(*kind) == closed_form_name(*other.kind);
}

GeneralizedString StringDefinition::materialize(double at_least) const {
  if (!kind) return GeneralizedString::from_atoms(atoms);
  return builtin_string(*kind, std::max(truncation, at_least));
}

StringDefinition parse_string_definition(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "string definition must be a JSON object");
  StringDefinition def;
  if (doc.contains("atoms")) {
    if (doc.contains("kind")) throw Error(ErrorKind::ParseError, "use either 'kind' or 'atoms', not both");
    const auto& arr = doc.at("atoms");
    if (!arr.is_array() || arr.empty()) throw Error(ErrorKind::ParseError, "'atoms' must be a non-empty array");
    for (const auto& a : arr) {
      if (!a.is_array() || a.size() < 2 || a.size() > 3) {
        throw Error(ErrorKind::ParseError, "each atom is [x, w_re] or [x, w_re, w_im]");
      }
      const double x = json_number(a[0], "atom scale");
      const double wr = json_number(a[1], "atom weight");
      const double wi = a.size() == 3 ? json_number(a[2], "atom weight") : 0.0;
      def.atoms.push_back({x, cplx(wr, wi)});
    }
    def.truncation = std::numeric_limits<double>::infinity();
    GeneralizedString::from_atoms(def.atoms);
    return def;
  }
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    throw Error(ErrorKind::ParseError, "string definition needs 'kind' or 'atoms'");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  const nlohmann::json params = doc.value("params", nlohmann::json::object());
  if (!params.is_object()) throw Error(ErrorKind::ParseError, "'params' must be an object");
  std::vector<std::string> known{"truncation"};
  auto param = [&](const char* key) {
    known.emplace_back(key);
    if (!params.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing parameter '") + key + "'");
    return json_number(params.at(key), key);
  };
  if (params.contains("truncation")) def.truncation = param("truncation");
  if (kind == "cantor") {
    def.kind = cantor_form();
  } else if (kind == "self_similar") {
    def.kind = family::SelfSimilar{param("scale"), param("multiplicity")};
  } else if (kind == "harmonic") {
    def.kind = family::Harmonic{};
  } else if (kind == "prime_harmonic") {
    const double p = param("p");
    if (p != std::floor(p)) throw Error(ErrorKind::ParseError, "prime must be an integer");
    def.kind = family::PrimeHarmonic{static_cast<std::int64_t>(p)};
  } else if (kind == "prime_string") {
    def.kind = family::PrimeString{};
  } else if (kind == "moebius") {
    def.kind = family::MoebiusString{};
  } else {
    throw Error(ErrorKind::ParseError, "unknown string kind '" + kind + "'");
  }
  for (const auto& [key, value] : params.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorKind::ParseError, "parameter '" + key + "' does not apply to kind '" + kind + "'");
    }
  }
  builtin_string(*def.kind, def.truncation);
  return def;
}

StringDefinition read_string_definition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return parse_string_definition(doc);
}

nlohmann::json string_definition_to_json(const StringDefinition& def) {
  nlohmann::json doc;
  if (!def.kind) {
    doc["atoms"] = nlohmann::json::array();
    for (const Atom& a : def.atoms) {
      doc["atoms"].push_back({format_double(a.x), format_double(a.w.real()), format_double(a.w.imag())});
    }
    return doc;
  }
  nlohmann::json params = nlohmann::json::object();
  params["truncation"] = format_double(def.truncation);
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::SelfSimilar>) {
          doc["kind"] = "self_similar";
          params["scale"] = format_double(f.scale);
          params["multiplicity"] = format_double(f.multiplicity);
        } else if constexpr (std::is_same_v<F, family::Harmonic>) {
          doc["kind"] = "harmonic";
        } else if constexpr (std::is_same_v<F, family::PrimeHarmonic>) {
          doc["kind"] = "prime_harmonic";
          params["p"] = std::to_string(f.p);
        } else if constexpr (std::is_same_v<F, family::PrimeString>) {
          doc["kind"] = "prime_string";
        } else if constexpr (std::is_same_v<F, family::MoebiusString>) {
          doc["kind"] = "moebius";
        } else {
          throw Error(ErrorKind::UnsupportedKind, "finite families are written as atom lists");
        }
      },
      *def.kind);
  doc["params"] = params;
  return doc;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_double(row[j]);
    os << '\n';
  }
}

nlohmann::json scan_to_json(const ScanResult& r) {
  nlohmann::json doc;
  doc["base"] = r.base;
  doc["target"] = r.target;
  doc["tau_step"] = format_double(r.tau_step);
  doc["window"] = format_double(r.window);
  doc["tau_star"] = format_double(r.tau_star);
  doc["J_star"] = format_double(r.J_star);
  doc["grid_tau_star"] = format_double(r.grid_tau_star);
  doc["grid_J_star"] = format_double(r.grid_J_star);
  nlohmann::json density = nlohmann::json::array();
  for (const auto& [eps, frac] : r.density) density.push_back({{"eps", format_double(eps)}, {"fraction", format_double(frac)}});
  doc["density"] = density;
  nlohmann::json taus = nlohmann::json::array(), J = nlohmann::json::array();
  for (double t : r.taus) taus.push_back(format_double(t));
  for (double j : r.J) J.push_back(format_double(j));
  doc["taus"] = taus;
  doc["J"] = J;
  doc["notes"] = r.notes;
  return doc;
}

void write_scan_csv(std::ostream& os, const ScanResult& r) {
  std::vector<std::vector<double>> rows;
  rows.reserve(r.J.size());
  for (std::size_t k = 0; k < r.J.size(); ++k) rows.push_back({r.taus[k], r.J[k]});
  write_csv(os, {"tau", "J"}, rows);
}

SampledFunction read_grid_file(const std::string& path, double c) {
  const auto rows = read_numeric_csv(path, {"t", "re", "im"});
  if (rows.size() < 2) throw Error(ErrorKind::ParseError, path + ": grid needs at least two rows");
  const double t0 = rows.front()[0];
  const double step = rows[1][0] - t0;
  if (!(step > 0.0)) throw Error(ErrorKind::ParseError, path + ": grid must be increasing");
  std::vector<cplx> values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - (t0 + static_cast<double>(i) * step)) > 1e-9 * std::max(1.0, std::abs(rows[i][0]))) {
      throw Error(ErrorKind::ParseError, path + ": grid is not uniform");
    }
    values.emplace_back(rows[i][1], rows[i][2]);
  }
  const double t_max = t0 + static_cast<double>(rows.size() - 1) * step;
  return SampledFunction(t0, t_max, step, c, std::move(values));
}

void write_grid_csv(std::ostream& os, const SampledFunction& f) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < f.size(); ++i) rows.push_back({f.t(i), f.values()[i].real(), f.values()[i].imag()});
  write_csv(os, {"t", "re", "im"}, rows);
}

std::vector<std::pair<cplx, cplx>> read_target_file(const std::string& path) {
  const auto rows = read_numeric_csv(path, {"re_s", "im_s", "re", "im"});
  std::vector<std::pair<cplx, cplx>> out;
  for (const auto& r : rows) out.emplace_back(cplx(r[0], r[1]), cplx(r[2], r[3]));
  return out;
}

}  // namespace fzeta
