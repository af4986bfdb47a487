#pragma once

#include "bott/chow.hpp"
#include "bott/fan.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bott {

using Json = nlohmann::ordered_json;

// Root of the bundled data: $BOTT_DATA_DIR if set, else the source tree copy.
std::string data_dir();

struct InvariantRecord {
  std::string id;
  long degree = 0;
  long b2 = 0;
  long h21 = 0;
};

// 1/2 (-K)^3 - 18 + b2 - h21, i.e. chi(T_X).
long chi_tangent_screen(const InvariantRecord& r);

std::vector<InvariantRecord> parse_invariant_table(std::istream& in, std::size_t expected_rows = 105);
std::vector<InvariantRecord> load_invariant_table(const std::string& path);

struct ScreenPartition {
  std::vector<InvariantRecord> negative;
  std::vector<InvariantRecord> nonnegative;
};

ScreenPartition screen_nonnegative(const std::vector<InvariantRecord>& records);

// Fans. A fan flagged toric_fano must be smooth, complete, with -K ample.
Fan fan_from_json(const Json& j);
Json fan_to_json(const Fan& fan);
Fan load_fan(const std::string& path);
// Bare names ("P3", "fano_2.35") resolve under data_dir()/fans.
std::string resolve_fan_path(const std::string& name);
std::vector<std::string> bundled_toric_fano_fans();

// Divisor classes in a named basis: "2H-E1", {"H": 2, "E1": -1}, or a list.
LatticeVector parse_class(const std::string& text, const std::vector<std::string>& basis);
LatticeVector parse_class(const Json& j, const std::vector<std::string>& basis);
inline LatticeVector parse_class(const char* text, const std::vector<std::string>& basis) {
  return parse_class(std::string(text), basis);
}
std::string format_class(const LatticeVector& cls, const std::vector<std::string>& basis);

Json chow_to_json(const ChowModel3& m);
ChowModel3 chow_from_json(const Json& j);
// Builds a model from a recipe: {"type": "quadric3" | "flag_W" | "quintic_V5" |
// "toric" | "hypersurface" | "blowup_point" | "blowup_curve" | "explicit", ...}.
ChowModel3 build_model(const Json& spec);
// Short names used on the command line: quadric3, flag_W, quintic_V5, toric:<fan>.
ChowModel3 model_by_name(const std::string& name);

struct CaseCurve {
  std::string name;
  LatticeVector degrees;  // against picard_basis
};

// Nef/ample assertion about a class on some toric variety.
struct ClassFact {
  std::string label;
  LatticeVector cls;
  std::string property;  // "ample" or "nef"
  bool expected = true;
};

// Restriction of ambient classes to the toric surface S1.
struct RestrictionData {
  std::string surface_fan;
  IntMatrix map;  // surface classes x ambient classes
  struct Item {
    std::string label;
    LatticeVector ambient_class;
    LatticeVector stated_class;  // as written for the surface
    std::string property;
    bool expected = true;
  };
  std::vector<Item> checks;
};

struct ToricAmbient {
  std::string fan;
  std::optional<LatticeVector> minus_K;  // as stated, checked against the fan
  int part = 0;  // 1 or 2: ambient conditions only; 3: restriction to S1
  std::optional<LatticeVector> S1, S2, L;
  std::vector<ClassFact> facts;
  std::optional<RestrictionData> restriction;
};

struct Counterexample {
  Json model;
  int p = 2;
  LatticeVector L;
  long expected_chi = 0;
};

struct CaseFile {
  std::string id;
  std::string description;
  std::vector<std::string> picard_basis;
  LatticeVector minus_K;
  std::vector<CaseCurve> curves;
  std::vector<LatticeVector> claimed_nef_generators;
  std::optional<LatticeVector> base_ample;
  bool unit_degree = false;  // -K has degree 1 on every curve
  std::optional<ToricAmbient> toric_ambient;
  std::optional<Counterexample> counterexample;
  std::optional<std::string> toric_fano_fan;
  // Independent construction of X whose c1 and c1^3 must agree with minus_K
  // and the tabulated degree.
  std::optional<Json> chow_model;
  std::optional<long> degree;
  std::vector<std::string> assumed;
  std::string source;  // path it was loaded from

  // Curve degrees as columns, one row per basis divisor.
  IntMatrix intersection_matrix() const;
};

CaseFile case_from_json(const Json& j);
CaseFile load_case(const std::string& path);
// Sorted by id; ids compare numerically, so (3.9) < (3.10).
std::vector<std::string> bundled_case_files();
bool id_less(const std::string& a, const std::string& b);

}  // namespace bott
