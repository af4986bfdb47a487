#pragma once

#include "bott/fano_data.hpp"

#include <string>
#include <vector>

namespace bott {

struct Check {
  std::string name;
  std::string status;  // "pass", "fail", "n/a" or "error"
  std::string expected;
  std::string computed;
  std::string detail;

  bool pass() const { return status == "pass" || status == "n/a"; }
};

struct CaseReport {
  std::string id;
  std::string description;
  std::vector<Check> checks;
  std::vector<std::string> assumed;

  bool overall() const;
  Json to_json() const;
  std::string to_text() const;
};

Check verify_dual_cone(const CaseFile& cf);
Check verify_nef_monoid(const CaseFile& cf);
Check verify_generators_in_dual(const CaseFile& cf);
Check verify_unit_degree(const CaseFile& cf);
Check verify_decomposition(const CaseFile& cf);
// One check per hypothesis of the complete-intersection criterion, then the
// extra ambient facts; a single "n/a" check when the case has no ambient.
std::vector<Check> verify_ci_lemma(const CaseFile& cf);
Check verify_counterexample(const CaseFile& cf);
// c1 and c1^3 of the case's Chow model against minus_K and the degree.
Check verify_chow_model(const CaseFile& cf);
// bott_check for -K and for every ample claimed generator of a toric Fano fan.
std::vector<Check> verify_toric_fano(const Fan& fan);

CaseReport verify_case(const CaseFile& cf);
// Screen split of the invariant table against {"negative_count",
// "nonnegative_count", "nonnegative_ids"}.
CaseReport verify_screen(const std::string& table_path, const std::string& expected_path);
CaseReport verify_toric_fano_file(const std::string& fan_path);
// Loads and verifies each file, case or toric Fano fan; load errors become
// failed reports. Output order follows the input whatever the thread count.
std::vector<CaseReport> verify_all(const std::vector<std::string>& paths, unsigned threads = 0);

}  // namespace bott
