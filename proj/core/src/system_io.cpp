#include "projdim/system_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "projdim/error.hpp"

namespace projdim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::validation, what); }

Rational rational_field(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  fail(where + ": expected a \"p/q\" string");
}

Matrix3 matrix_field(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where + ": expected 3 rows");
  std::array<Rational, 9> e;
  for (int r = 0; r < 3; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 3) fail(where + ": row " + std::to_string(r) + " needs 3 entries");
    for (int c = 0; c < 3; ++c)
      e[static_cast<std::size_t>(3 * r + c)] =
          rational_field(row[static_cast<std::size_t>(c)], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return Matrix3::from_rationals(e);
}

}  // namespace

SystemSpec parse_system(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("system document must be an object");
  static const std::set<std::string> known{"label", "matrices", "probabilities", "conjugator", "sosc_assumed"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) fail("unknown field '" + key + "'");

  SystemSpec sys;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail("label must be a string");
    sys.label = doc["label"].get<std::string>();
  }
  if (!doc.contains("matrices") || !doc["matrices"].is_array()) fail("matrices must be an array");
  for (std::size_t i = 0; i < doc["matrices"].size(); ++i)
    sys.alphabet.push_back(matrix_field(doc["matrices"][i], "matrices[" + std::to_string(i) + "]"));
  if (doc.contains("probabilities")) {
    if (!doc["probabilities"].is_array()) fail("probabilities must be an array");
    for (std::size_t i = 0; i < doc["probabilities"].size(); ++i)
      sys.probabilities.push_back(rational_field(doc["probabilities"][i], "probabilities[" + std::to_string(i) + "]"));
  } else if (!sys.alphabet.empty()) {
    sys.probabilities.assign(sys.alphabet.size(), Rational(1, static_cast<long long>(sys.alphabet.size())));
  }
  if (doc.contains("conjugator") && !doc["conjugator"].is_null())
    sys.conjugator = matrix_field(doc["conjugator"], "conjugator");
  if (doc.contains("sosc_assumed")) {
    if (!doc["sosc_assumed"].is_boolean()) fail("sosc_assumed must be a boolean");
    sys.sosc_assumed = doc["sosc_assumed"].get<bool>();
  }
  sys.validate();
  return sys;
}

SystemSpec load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open system file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

std::string system_to_json(const SystemSpec& sys) {
  // one matrix row per line; json::dump would put every entry on its own line
  auto row_text = [](const Matrix3& m, int r) {
    json row = json::array();
    for (int c = 0; c < 3; ++c) row.push_back(to_string(m.entry(r, c)));
    return row.dump();
  };
  auto matrix_text = [&](const Matrix3& m, const std::string& indent) {
    return "[" + row_text(m, 0) + ",\n" + indent + " " + row_text(m, 1) + ",\n" + indent + " " + row_text(m, 2) + "]";
  };
  std::ostringstream o;
  o << "{\n  \"label\": " << json(sys.label).dump() << ",\n  \"matrices\": [\n";
  for (std::size_t i = 0; i < sys.size(); ++i)
    o << "    " << matrix_text(sys.alphabet[i], "    ") << (i + 1 < sys.size() ? ",\n" : "\n");
  json ps = json::array();
  for (const auto& p : sys.probabilities) ps.push_back(to_string(p));
  o << "  ],\n  \"probabilities\": " << ps.dump() << ",\n";
  if (sys.conjugator) o << "  \"conjugator\": " << matrix_text(*sys.conjugator, "  ") << ",\n";
  o << "  \"sosc_assumed\": " << (sys.sosc_assumed ? "true" : "false") << "\n}\n";
  return o.str();
}

void save_system(const SystemSpec& sys, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write system file '" + path.string() + "'");
  out << system_to_json(sys);
}

}  // namespace projdim
