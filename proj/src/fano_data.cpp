#include "bott/fano_data.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <map>
#include <sstream>

#ifndef BOTT_DEFAULT_DATA_DIR
#define BOTT_DEFAULT_DATA_DIR "data"
#endif

namespace bott {

namespace fs = std::filesystem;

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

LatticeVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an integer list");
  LatticeVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw Error("expected an integer list");
    v(static_cast<Eigen::Index>(i)) = j[i].get<long>();
  }
  return v;
}

Json vector_to_json(const LatticeVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_long(v(i)));
  return out;
}

bool expect_property(const std::string& p) { return p == "ample" || p == "nef"; }

std::string require_property(const Json& j) {
  std::string p = field(j, "property").get<std::string>();
  if (!expect_property(p)) throw Error("unknown property \"" + p + "\"");
  return p;
}

std::vector<std::string> fan_basis(const std::string& fan_name) {
  return load_fan(resolve_fan_path(fan_name)).picard().names;
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("BOTT_DATA_DIR"); env && *env) return env;
  return BOTT_DEFAULT_DATA_DIR;
}

long chi_tangent_screen(const InvariantRecord& r) {
  return to_long(chi_tangent_from_invariants(r.degree, r.b2, r.h21));
}

std::vector<InvariantRecord> parse_invariant_table(std::istream& in, std::size_t expected_rows) {
  std::vector<InvariantRecord> rows;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> cells;
    for (std::string c; ls >> c;) cells.push_back(c);
    if (cells.empty() || cells[0][0] == '#') continue;
    if (cells[0] == "id") {
      if (cells != std::vector<std::string>{"id", "degree", "b2", "h21"})
        throw Error("line " + std::to_string(lineno) + ": header must be id, degree, b2, h21");
      continue;
    }
    if (cells.size() != 4) throw Error("line " + std::to_string(lineno) + ": expected 4 columns");
    InvariantRecord r;
    r.id = cells[0];
    try {
      r.degree = std::stol(cells[1]);
      r.b2 = std::stol(cells[2]);
      r.h21 = std::stol(cells[3]);
    } catch (const std::exception&) {
      throw Error("line " + std::to_string(lineno) + ": non-integer entry in row " + r.id);
    }
    if (r.degree <= 0 || r.degree % 2 != 0) throw Error("row " + r.id + ": degree must be even and positive");
    if (r.b2 < 1) throw Error("row " + r.id + ": b2 must be at least 1");
    if (r.h21 < 0) throw Error("row " + r.id + ": negative h21");
    if (!seen.insert(r.id).second) throw Error("duplicate id " + r.id);
    rows.push_back(r);
  }
  if (rows.size() != expected_rows)
    throw Error("expected " + std::to_string(expected_rows) + " rows, found " + std::to_string(rows.size()));
  return rows;
}

std::vector<InvariantRecord> load_invariant_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_invariant_table(in);
}

ScreenPartition screen_nonnegative(const std::vector<InvariantRecord>& records) {
  ScreenPartition out;
  for (const auto& r : records) (chi_tangent_screen(r) < 0 ? out.negative : out.nonnegative).push_back(r);
  return out;
}

Fan fan_from_json(const Json& j) {
  const int rank = field(j, "rank").get<int>();
  std::vector<LatticeVector> rays;
  for (const auto& r : field(j, "rays")) {
    rays.push_back(vector_from_json(r));
    if (rays.back().size() != rank) throw Error("ray " + to_string(rays.back()) + " has the wrong length");
  }
  std::vector<std::vector<int>> cones;
  for (const auto& c : field(j, "max_cones")) {
    std::vector<int> idx;
    for (const auto& x : c) {
      int i = x.get<int>();
      if (i < 0 || i >= static_cast<int>(rays.size())) throw Error("cone index out of range");
      idx.push_back(i);
    }
    cones.push_back(idx);
  }
  std::vector<std::pair<std::string, LatticeVector>> basis;
  if (j.contains("basis_map")) {
    const Json& b = j.at("basis_map");
    if (b.is_object()) {
      for (const auto& [name, v] : b.items()) basis.emplace_back(name, vector_from_json(v));
    } else {
      for (const auto& e : b) basis.emplace_back(e.at(0).get<std::string>(), vector_from_json(e.at(1)));
    }
    for (const auto& [name, v] : basis)
      if (v.size() != static_cast<Eigen::Index>(rays.size()))
        throw Error("basis_map entry " + name + " has the wrong length");
  }
  std::string id = j.value("id", std::string());
  Fan fan(rank, std::move(rays), std::move(cones), std::move(basis), id);
  FanValidationReport rep = validate_fan(fan);
  if (!rep.ok()) {
    std::string msg = "invalid fan " + id + ":";
    for (const auto& v : rep.violations) msg += " " + v + ";";
    throw Error(msg);
  }
  if (j.value("toric_fano", false) && !is_ample(fan, anticanonical_divisor(fan)))
    throw Error("fan " + id + " is flagged toric_fano but -K is not ample");
  return fan;
}

Json fan_to_json(const Fan& fan) {
  Json j;
  j["rank"] = fan.rank();
  j["rays"] = Json::array();
  for (const auto& r : fan.rays()) j["rays"].push_back(vector_to_json(r));
  j["max_cones"] = Json::array();
  for (ConeMask m : fan.max_cones()) j["max_cones"].push_back(mask_indices(m));
  Json b = Json::object();
  for (const auto& [name, v] : fan.basis_map()) b[name] = vector_to_json(v);
  j["basis_map"] = b;
  j["id"] = fan.id();
  return j;
}

Fan load_fan(const std::string& path) {
  try {
    return fan_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string resolve_fan_path(const std::string& name) {
  if (name.find('/') != std::string::npos || fs::exists(name)) return name;
  std::string file = name;
  if (file.size() < 5 || file.substr(file.size() - 5) != ".json") file += ".json";
  fs::path p = fs::path(data_dir()) / "fans" / file;
  if (!fs::exists(p)) throw Error("unknown fan " + name);
  return p.string();
}

std::vector<std::string> bundled_toric_fano_fans() {
  std::vector<std::pair<std::string, std::string>> found;
  for (const auto& e : fs::directory_iterator(fs::path(data_dir()) / "fans")) {
    if (e.path().extension() != ".json") continue;
    Json j = read_json(e.path().string());
    if (j.value("toric_fano", false)) found.emplace_back(j.value("id", std::string()), e.path().string());
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return id_less(a.first, b.first); });
  std::vector<std::string> out;
  for (auto& f : found) out.push_back(f.second);
  return out;
}

LatticeVector parse_class(const std::string& text, const std::vector<std::string>& basis) {
  LatticeVector v = LatticeVector::Zero(static_cast<Eigen::Index>(basis.size()));
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("empty class");
  if (s == "0") return v;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    long sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw Error("cannot parse class \"" + text + "\"");
    }
    first = false;
    long coeff = 1;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > start) coeff = std::stol(s.substr(start, pos - start));
    if (pos < s.size() && s[pos] == '*') ++pos;
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (basis[b].size() > best_len && s.compare(pos, basis[b].size(), basis[b]) == 0) {
        best = static_cast<int>(b);
        best_len = basis[b].size();
      }
    if (best < 0) {
      if (pos > start && (pos == s.size() || s[pos] == '+' || s[pos] == '-'))
        throw Error("class \"" + text + "\" has a constant term");
      throw Error("unknown basis name in \"" + text + "\"");
    }
    pos += best_len;
    v(best) += sign * coeff;
  }
  return v;
}

LatticeVector parse_class(const Json& j, const std::vector<std::string>& basis) {
  if (j.is_string()) return parse_class(j.get<std::string>(), basis);
  if (j.is_array()) {
    LatticeVector v = vector_from_json(j);
    if (v.size() != static_cast<Eigen::Index>(basis.size())) throw Error("class has the wrong length");
    return v;
  }
  if (j.is_object()) {
    if (j.contains("class")) return parse_class(j.at("class"), basis);
    LatticeVector v = LatticeVector::Zero(static_cast<Eigen::Index>(basis.size()));
    for (const auto& [name, c] : j.items()) {
      auto it = std::find(basis.begin(), basis.end(), name);
      if (it == basis.end()) throw Error("unknown basis name " + name);
      v(it - basis.begin()) += c.get<long>();
    }
    return v;
  }
  throw Error("cannot parse class " + j.dump());
}

std::string format_class(const LatticeVector& cls, const std::vector<std::string>& basis) {
  std::string out;
  for (Eigen::Index i = 0; i < cls.size(); ++i) {
    const Integer& c = cls(i);
    if (c == 0) continue;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    Integer a = c < 0 ? Integer(-c) : c;
    if (a != 1) out += a.str();
    out += basis[static_cast<std::size_t>(i)];
  }
  return out.empty() ? "0" : out;
}

Json chow_to_json(const ChowModel3& m) {
  Json j;
  j["basis"] = m.basis;
  Json t = Json::array();
  for (const auto& mat : m.triple) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < mat.rows(); ++r) rows.push_back(vector_to_json(mat.row(r).transpose()));
    t.push_back(rows);
  }
  j["triple"] = t;
  j["c1"] = vector_to_json(m.c1);
  j["c2_pairing"] = vector_to_json(m.c2_pairing);
  j["c3"] = to_long(m.c3);
  return j;
}

// Triple products are either dense ([[[...]]], one matrix per basis class) or
// sparse: {"H,H,E": -1, ...} with unlisted entries zero.
ChowModel3 chow_from_json(const Json& j) {
  ChowModel3 m;
  m.basis = field(j, "basis").get<std::vector<std::string>>();
  const auto k = static_cast<Eigen::Index>(m.basis.size());
  const Json& triple = field(j, "triple");
  if (triple.is_object()) {
    m.triple.assign(static_cast<std::size_t>(k), IntMatrix::Zero(k, k));
    std::map<std::vector<int>, Integer> given;
    for (const auto& [key, value] : triple.items()) {
      std::vector<int> idx;
      std::string name;
      std::istringstream parts(key);
      while (std::getline(parts, name, ',')) {
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        auto it = std::find(m.basis.begin(), m.basis.end(), name);
        if (it == m.basis.end()) throw Error("unknown basis name " + name + " in triple products");
        idx.push_back(static_cast<int>(it - m.basis.begin()));
      }
      if (idx.size() != 3) throw Error("triple product key needs three names: " + key);
      std::sort(idx.begin(), idx.end());
      const Integer v = value.get<long>();
      auto [prev, fresh] = given.emplace(idx, v);
      if (!fresh && prev->second != v) throw Error("conflicting triple product " + key);
      do {
        m.triple[static_cast<std::size_t>(idx[0])](idx[1], idx[2]) = v;
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
  } else {
    for (const auto& mat : triple) {
      IntMatrix t(k, k);
      if (static_cast<Eigen::Index>(mat.size()) != k) throw Error("inconsistent Chern data");
      for (Eigen::Index r = 0; r < k; ++r) {
        LatticeVector row = vector_from_json(mat[static_cast<std::size_t>(r)]);
        if (row.size() != k) throw Error("inconsistent Chern data");
        t.row(r) = row.transpose();
      }
      m.triple.push_back(t);
    }
  }
  m.c1 = parse_class(field(j, "c1"), m.basis);
  m.c2_pairing = parse_class(field(j, "c2_pairing"), m.basis);
  m.c3 = field(j, "c3").get<long>();
  m.check();
  return m;
}

ChowModel3 build_model(const Json& spec) {
  if (spec.is_string()) return model_by_name(spec.get<std::string>());
  const std::string type = field(spec, "type").get<std::string>();
  if (type == "quadric3") return quadric3();
  if (type == "flag_W") return flag_W();
  if (type == "quintic_V5") return quintic_V5();
  if (type == "toric") return toric_chow(load_fan(resolve_fan_path(field(spec, "fan").get<std::string>())));
  if (type == "hypersurface") {
    Fan ambient = load_fan(resolve_fan_path(field(spec, "ambient").get<std::string>()));
    return hypersurface_chow(ambient, parse_class(field(spec, "class"), ambient.picard().names));
  }
  if (type == "blowup_point") return blowup_point(build_model(field(spec, "base")), spec.value("name", std::string()));
  if (type == "blowup_curve") {
    ChowModel3 base = build_model(field(spec, "base"));
    LatticeVector degrees = parse_class(field(spec, "curve"), base.basis);
    return blowup_curve(base, degrees, spec.value("genus", 0), spec.value("name", std::string()));
  }
  if (type == "explicit") return chow_from_json(spec);
  throw Error("unknown model type " + type);
}

ChowModel3 model_by_name(const std::string& name) {
  if (name == "quadric3") return quadric3();
  if (name == "flag_W") return flag_W();
  if (name == "quintic_V5") return quintic_V5();
  if (name.rfind("toric:", 0) == 0) return toric_chow(load_fan(resolve_fan_path(name.substr(6))));
  throw Error("unknown model " + name);
}

IntMatrix CaseFile::intersection_matrix() const {
  IntMatrix m(static_cast<Eigen::Index>(picard_basis.size()), static_cast<Eigen::Index>(curves.size()));
  for (std::size_t c = 0; c < curves.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = curves[c].degrees;
  return m;
}

CaseFile case_from_json(const Json& j) {
  CaseFile cf;
  cf.id = field(j, "id").get<std::string>();
  cf.description = j.value("description", std::string());
  cf.assumed = j.value("assumed", std::vector<std::string>());

  if (j.contains("counterexample")) {
    const Json& ce = j.at("counterexample");
    Counterexample c;
    c.model = field(ce, "model");
    c.p = ce.value("p", 2);
    c.expected_chi = field(ce, "expected_chi").get<long>();
    ChowModel3 m = build_model(c.model);
    c.L = parse_class(field(ce, "L"), m.basis);
    cf.counterexample = c;
  }
  if (j.contains("toric_fano_fan")) cf.toric_fano_fan = j.at("toric_fano_fan").get<std::string>();
  if (j.contains("chow_model")) cf.chow_model = j.at("chow_model");
  if (j.contains("degree")) cf.degree = j.at("degree").get<long>();
  if (!j.contains("picard_basis")) return cf;

  cf.picard_basis = j.at("picard_basis").get<std::vector<std::string>>();
  const auto& basis = cf.picard_basis;
  const auto k = static_cast<Eigen::Index>(basis.size());
  cf.minus_K = parse_class(field(j, "minus_K"), basis);

  const Json& table = field(j, "intersection_table");
  auto columns = field(table, "columns").get<std::vector<std::string>>();
  for (const auto& c : columns) cf.curves.push_back({c, LatticeVector::Zero(k)});
  std::vector<bool> have(basis.size(), false);
  for (const auto& row : field(table, "rows")) {
    std::string name = row.at(0).get<std::string>();
    auto it = std::find(basis.begin(), basis.end(), name);
    if (it == basis.end()) throw Error(cf.id + ": table row " + name + " is not a basis divisor");
    auto b = static_cast<std::size_t>(it - basis.begin());
    if (have[b]) throw Error(cf.id + ": table row " + name + " repeated");
    have[b] = true;
    LatticeVector vals = vector_from_json(row.at(1));
    if (vals.size() != static_cast<Eigen::Index>(columns.size()))
      throw Error(cf.id + ": table row " + name + " has the wrong length");
    for (std::size_t c = 0; c < columns.size(); ++c)
      cf.curves[c].degrees(static_cast<Eigen::Index>(b)) = vals(static_cast<Eigen::Index>(c));
  }
  for (std::size_t b = 0; b < basis.size(); ++b)
    if (!have[b]) throw Error(cf.id + ": table has no row for " + basis[b]);

  for (const auto& g : field(j, "claimed_nef_generators")) cf.claimed_nef_generators.push_back(parse_class(g, basis));
  if (j.contains("base_ample")) cf.base_ample = parse_class(j.at("base_ample"), basis);
  cf.unit_degree = j.value("unit_degree", false);

  if (j.contains("toric_ambient")) {
    const Json& a = j.at("toric_ambient");
    ToricAmbient amb;
    amb.fan = field(a, "fan").get<std::string>();
    amb.part = a.value("part", 0);
    std::vector<std::string> ab = fan_basis(amb.fan);
    if (a.contains("minus_K")) amb.minus_K = parse_class(a.at("minus_K"), ab);
    if (a.contains("S1")) amb.S1 = parse_class(a.at("S1"), ab);
    if (a.contains("S2")) amb.S2 = parse_class(a.at("S2"), ab);
    if (a.contains("L")) amb.L = parse_class(a.at("L"), ab);
    if (amb.part != 0 && (!amb.S1 || !amb.S2 || !amb.L))
      throw Error(cf.id + ": complete-intersection data needs S1, S2 and L");
    if (amb.part < 0 || amb.part > 3) throw Error(cf.id + ": part must be 1, 2 or 3");
    for (const auto& f : a.value("facts", Json::array()))
      amb.facts.push_back({f.value("label", std::string()), parse_class(field(f, "class"), ab), require_property(f),
                           f.value("expected", true)});
    if (a.contains("restriction")) {
      const Json& r = a.at("restriction");
      RestrictionData rd;
      rd.surface_fan = field(r, "surface_fan").get<std::string>();
      std::vector<std::string> sb = fan_basis(rd.surface_fan);
      rd.map = IntMatrix::Zero(static_cast<Eigen::Index>(sb.size()), static_cast<Eigen::Index>(ab.size()));
      for (const auto& [name, img] : field(r, "map").items()) {
        auto it = std::find(ab.begin(), ab.end(), name);
        if (it == ab.end()) throw Error(cf.id + ": restriction map names unknown class " + name);
        rd.map.col(it - ab.begin()) = parse_class(img, sb);
      }
      for (const auto& c : field(r, "checks"))
        rd.checks.push_back({c.value("label", std::string()), parse_class(field(c, "class"), ab),
                             parse_class(field(c, "restricted"), sb), require_property(c), c.value("expected", true)});
      amb.restriction = rd;
    }
    if (amb.part == 3 && !amb.restriction) throw Error(cf.id + ": part 3 needs restriction data");
    cf.toric_ambient = amb;
  }
  return cf;
}

CaseFile load_case(const std::string& path) {
  try {
    CaseFile cf = case_from_json(read_json(path));
    cf.source = path;
    return cf;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

bool id_less(const std::string& a, const std::string& b) {
  auto key = [](const std::string& s) -> std::optional<std::pair<long, long>> {
    long x = 0, y = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "(%ld.%ld%c", &x, &y, &tail) == 3 && tail == ')') return std::make_pair(x, y);
    return std::nullopt;
  };
  auto ka = key(a), kb = key(b);
  if (ka && kb) return *ka < *kb;
  if (ka || kb) return static_cast<bool>(ka);
  return a < b;
}

std::vector<std::string> bundled_case_files() {
  // Positive cases first, then the Riemann-Roch counterexamples; each by id.
  std::vector<std::string> out;
  for (const char* sub : {"cases", "counterexamples"}) {
    fs::path dir = fs::path(data_dir()) / sub;
    if (!fs::exists(dir)) continue;
    std::vector<std::pair<std::string, std::string>> found;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".json")
        found.emplace_back(read_json(e.path().string()).value("id", std::string()), e.path().string());
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return id_less(a.first, b.first); });
    for (auto& f : found) out.push_back(f.second);
  }
  return out;
}

}  // namespace bott
