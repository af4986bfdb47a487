#include <doctest.h>

#include "bott/case_verifier.hpp"

#include <algorithm>

using namespace bott;

namespace {

std::string test_data(const std::string& name) { return std::string(BOTT_TEST_DATA_DIR) + "/" + name; }

const Check* find(const CaseReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("bundled cases pass") {
  for (const auto& path : bundled_case_files()) {
    CaseReport r = verify_case(load_case(path));
    CAPTURE(r.to_text());
    CHECK(r.overall());
  }
}

TEST_CASE("negative control: a wrong nef generator is pinpointed") {
  CaseReport r = verify_case(load_case(test_data("corrupted_case.json")));
  CHECK_FALSE(r.overall());
  const Check* dual = find(r, "dual_cone");
  REQUIRE(dual);
  CHECK(dual->status == "fail");
  CHECK(dual->computed.find("A+2B-E") != std::string::npos);
  CHECK(dual->expected.find("2A+2B-E") != std::string::npos);
  // The wrong class is still nef, so the containment check passes.
  const Check* inside = find(r, "generators_in_dual");
  REQUIRE(inside);
  CHECK(inside->status == "pass");
  CHECK(find(r, "nef_monoid")->status == "fail");
  CHECK(r.to_json()["overall"] == false);
}

TEST_CASE("a toy case on P1 x P1") {
  CaseFile cf = load_case(test_data("toy_case.json"));
  CHECK(verify_dual_cone(cf).status == "pass");
  CHECK(verify_nef_monoid(cf).status == "pass");
  CHECK(verify_generators_in_dual(cf).status == "pass");
  CHECK(verify_unit_degree(cf).status == "n/a");
  Check dec = verify_decomposition(cf);
  CHECK(dec.status == "pass");
  CHECK(dec.detail.find("50 ample classes sampled, 0 without nef remainder") != std::string::npos);
  auto ci = verify_ci_lemma(cf);
  REQUIRE(ci.size() == 1);
  CHECK(ci[0].status == "n/a");
  CHECK(ci[0].pass());

  CaseReport r = verify_case(cf);
  CHECK(r.overall());
  CHECK(find(r, "bott: -K = 2A+2B"));

  SUBCASE("unit degree claimed but false") {
    cf.unit_degree = true;
    CHECK(verify_unit_degree(cf).status == "fail");
  }
  SUBCASE("missing base class") {
    cf.base_ample.reset();
    Check c = verify_decomposition(cf);
    CHECK(c.status == "error");
    CHECK(c.detail.find("missing base_ample") != std::string::npos);
    CHECK_FALSE(verify_case(cf).overall());
  }
  SUBCASE("base class not of degree one") {
    cf.base_ample = lattice_vector({2, 1});
    CHECK(verify_decomposition(cf).status == "fail");
  }
}

TEST_CASE("counterexample files") {
  for (const auto& path : bundled_case_files()) {
    CaseFile cf = load_case(path);
    if (!cf.counterexample) continue;
    Check c = verify_counterexample(cf);
    CHECK(c.status == "pass");
    CHECK(c.computed == std::to_string(cf.counterexample->expected_chi));
    cf.counterexample->expected_chi += 1;
    CHECK(verify_counterexample(cf).status == "fail");
  }
}

TEST_CASE("Chow model cross-check catches a wrong degree") {
  CaseFile cf = load_case(data_dir() + "/cases/case_3.15.json");
  CHECK(verify_chow_model(cf).status == "pass");
  cf.degree = 30;
  CHECK(verify_chow_model(cf).status == "fail");
}

TEST_CASE("complete-intersection hypotheses") {
  CaseFile cf = load_case(data_dir() + "/cases/case_3.15.json");
  auto checks = verify_ci_lemma(cf);
  std::vector<std::string> names;
  for (const auto& c : checks) {
    names.push_back(c.name);
    CHECK(c.status == "pass");
  }
  for (const char* want : {"ambient -K", "ci: L ample", "ci: L-S1 ample", "ci: L-S2 ample", "ci: L-S1-S2 nef"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());

  // L - S1 - S2 = A is nef; make it fail by shrinking L.
  cf.toric_ambient->L = lattice_vector({0, 3});
  bool failed = false;
  for (const auto& c : verify_ci_lemma(cf))
    if (c.name == "ci: L-S1-S2 nef") failed = c.status == "fail";
  CHECK(failed);
}

TEST_CASE("screen and aggregation") {
  CaseReport s = verify_screen(data_dir() + "/mm105.tsv", data_dir() + "/screen_expected.json");
  CHECK(s.overall());
  CHECK_FALSE(verify_screen("/nonexistent.tsv", data_dir() + "/screen_expected.json").overall());

  std::vector<std::string> paths = bundled_case_files();
  auto fans = bundled_toric_fano_fans();
  paths.insert(paths.end(), fans.begin(), fans.begin() + 4);
  paths.push_back(test_data("corrupted_case.json"));
  paths.push_back("/nonexistent/case.json");

  auto one = verify_all(paths, 1);
  auto many = verify_all(paths, 8);
  auto again = verify_all(paths, 3);
  REQUIRE(one.size() == paths.size());
  REQUIRE(many.size() == paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    CHECK(one[i].to_json() == many[i].to_json());
    CHECK(one[i].to_json() == again[i].to_json());
  }
  CHECK_FALSE(one[paths.size() - 2].overall());
  CHECK_FALSE(one.back().overall());
  long passing = std::count_if(one.begin(), one.end(), [](const CaseReport& r) { return r.overall(); });
  CHECK(passing == static_cast<long>(paths.size()) - 2);
}
