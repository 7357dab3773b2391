#include "ballmap/mapfile.hpp"

#include <fstream>
#include <stdexcept>

namespace ballmap {

namespace {

CPoly poly_from_records(const nlohmann::json& arr, int n, const char* label) {
  if (!arr.is_array()) throw std::invalid_argument(std::string(label) + " must be an array");
  CPoly out(n);
  for (const auto& rec : arr) {
    if (!rec.is_object() || !rec.contains("exponents") || !rec.contains("coeff"))
      throw std::invalid_argument(std::string(label) + " records need exponents and coeff");
    const auto& ex = rec["exponents"];
    const auto& co = rec["coeff"];
    if (!ex.is_array() || static_cast<int>(ex.size()) != n)
      throw std::invalid_argument(std::string(label) + " exponents must have length n");
    if (!co.is_array() || co.size() != 2)
      throw std::invalid_argument(std::string(label) + " coeff must be [re, im]");
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) {
      if (!ex[i].is_number_integer() || ex[i].get<int>() < 0)
        throw std::invalid_argument(std::string(label) + " exponents must be nonnegative integers");
      e[i] = ex[i].get<int>();
    }
    out.add_coeff(e, cd(co[0].get<double>(), co[1].get<double>()));
  }
  return out;
}

nlohmann::json poly_to_records(const CPoly& h) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : h.terms()) {
    nlohmann::json rec;
    rec["exponents"] = e;
    rec["coeff"] = {c.real(), c.imag()};
    arr.push_back(rec);
  }
  return arr;
}

}  // namespace

MapFileData map_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("map file must be a JSON object");
  for (const char* key : {"n", "N", "numerator", "denominator"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("map file missing field ") + key);
  int n = j["n"].get<int>();
  int N = j["N"].get<int>();
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const auto& num = j["numerator"];
  if (!num.is_array() || static_cast<int>(num.size()) != N)
    throw std::invalid_argument("numerator must be an array of N component records");

  MapFileData out;
  PolyMap p;
  p.n = n;
  for (int i = 0; i < N; ++i) p.comps.push_back(poly_from_records(num[i], n, "numerator"));
  CPoly g = poly_from_records(j["denominator"], n, "denominator");
  out.map = make_map(std::move(p), std::move(g));
  if (j.contains("metadata")) {
    const auto& md = j["metadata"];
    if (md.contains("name")) out.name = md["name"].get<std::string>();
    if (md.contains("notes")) out.notes = md["notes"].get<std::string>();
  }
  return out;
}

MapFileData read_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open map file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return map_from_json(j);
}

nlohmann::json map_to_json(const RationalBallMap& f, const std::string& name,
                           const std::string& notes) {
  nlohmann::json j;
  j["n"] = f.n();
  j["N"] = f.N();
  nlohmann::json num = nlohmann::json::array();
  for (const auto& c : f.p.comps) num.push_back(poly_to_records(c));
  j["numerator"] = num;
  j["denominator"] = poly_to_records(f.g);
  if (!name.empty() || !notes.empty()) {
    nlohmann::json md;
    if (!name.empty()) md["name"] = name;
    if (!notes.empty()) md["notes"] = notes;
    j["metadata"] = md;
  }
  return j;
}

void write_map_file(const std::string& path, const RationalBallMap& f, const std::string& name,
                    const std::string& notes) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write map file: " + path);
  out << map_to_json(f, name, notes).dump(2) << "\n";
}

}  // namespace ballmap
