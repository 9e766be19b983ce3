#include "dhlab/measure_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dhlab {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw InvalidMeasure(where + "." + key + ": unknown field");
  }
}

double number_field(const json& obj, const char* key, const std::string& where, bool required,
                    double fallback) {
  const std::string name = where + "." + key;
  if (!obj.contains(key)) {
    if (required) throw InvalidMeasure(name + ": missing field");
    return fallback;
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) throw InvalidMeasure(name + ": expected a number");
  return v.get<double>();
}

int integer_field(const json& obj, const char* key, const std::string& where) {
  const std::string name = where + "." + key;
  if (!obj.contains(key)) return 0;
  const auto& v = obj.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d) return static_cast<int>(d);
  }
  throw InvalidMeasure(name + ": expected an integer");
}

}  // namespace

RadialMeasure parse_measure(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidMeasure(std::string("measure file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidMeasure("measure: expected a JSON object");
  reject_unknown(doc, {"atoms", "densities"}, "measure");

  std::vector<Atom> atoms;
  std::vector<Density> densities;
  if (doc.contains("atoms")) {
    const auto& arr = doc.at("atoms");
    if (!arr.is_array()) throw InvalidMeasure("atoms: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "atoms[" + std::to_string(i) + "]";
      const auto& obj = arr[i];
      if (!obj.is_object()) throw InvalidMeasure(where + ": expected an object");
      reject_unknown(obj, {"t", "w"}, where);
      atoms.push_back({number_field(obj, "t", where, true, 0.0),
                       number_field(obj, "w", where, true, 0.0)});
    }
  }
  if (doc.contains("densities")) {
    const auto& arr = doc.at("densities");
    if (!arr.is_array()) throw InvalidMeasure("densities: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "densities[" + std::to_string(i) + "]";
      const auto& obj = arr[i];
      if (!obj.is_object()) throw InvalidMeasure(where + ": expected an object");
      reject_unknown(obj, {"c", "beta", "lam", "cutoff"}, where);
      Density d;
      d.c = number_field(obj, "c", where, true, 1.0);
      d.beta = number_field(obj, "beta", where, true, 1.0);
      d.lam = integer_field(obj, "lam", where);
      d.cutoff = number_field(obj, "cutoff", where, false, 0.0);
      densities.push_back(d);
    }
  }
  return RadialMeasure(std::move(atoms), std::move(densities));
}

RadialMeasure load_measure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidMeasure("cannot open measure file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure(buf.str());
}

std::string to_json(const RadialMeasure& m) {
  json doc;
  doc["atoms"] = json::array();
  doc["densities"] = json::array();
  for (const auto& a : m.atoms()) doc["atoms"].push_back({{"t", a.t}, {"w", a.w}});
  for (const auto& d : m.densities()) {
    json obj = {{"c", d.c}, {"beta", d.beta}, {"lam", d.lam}};
    if (d.cutoff > 0.0) obj["cutoff"] = d.cutoff;
    doc["densities"].push_back(obj);
  }
  return doc.dump();
}

}  // namespace dhlab
