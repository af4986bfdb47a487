#include "bott/case_verifier.hpp"
#include "bott/cohomology.hpp"
#include "bott/fano_data.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using namespace bott;

namespace {

std::string format = "text";

std::string data_path(const std::string& rel) { return (std::filesystem::path(data_dir()) / rel).string(); }

// A list of vectors, or a cone object {"rank": r, "generators": [...]}.
std::vector<LatticeVector> parse_generators(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception&) {
    throw Error("cone must be a JSON list of integer vectors");
  }
  std::optional<long> rank;
  if (j.is_object()) {
    if (!j.contains("generators")) throw Error("cone object needs \"generators\"");
    if (j.contains("rank")) rank = j.at("rank").get<long>();
    j = Json(j.at("generators"));
  }
  if (!j.is_array() || j.empty()) throw Error("cone must be a non-empty list of vectors");
  std::vector<LatticeVector> out;
  for (const auto& v : j) {
    if (!v.is_array()) throw Error("cone must be a list of vectors");
    LatticeVector x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i].get<long>();
    if (x.size() != static_cast<Eigen::Index>(j[0].size())) throw Error("vectors of different lengths");
    if (rank && x.size() != *rank) throw Error("generator length differs from rank");
    out.push_back(x);
  }
  return out;
}

Json vector_json(const LatticeVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_long(v(i)));
  return out;
}

Json dims_json(const CohomologyVector& h) {
  Json out = Json::array();
  for (const auto& d : h.dims) out.push_back(to_long(d));
  return out;
}

Fan fan_arg(const std::string& name) { return load_fan(resolve_fan_path(name)); }

// --D in the Picard basis, or --coeffs on the rays; -K when neither is given.
TorusDivisor divisor_arg(const Fan& fan, const std::string& cls, const std::string& coeffs) {
  if (!cls.empty() && !coeffs.empty()) throw Error("give --D or --coeffs, not both");
  if (!coeffs.empty()) {
    auto v = parse_generators("[" + coeffs + "]");
    if (v[0].size() != fan.num_rays()) throw Error("--coeffs needs one entry per ray");
    return {v[0]};
  }
  if (cls.empty()) return anticanonical_divisor(fan);
  const PicardLattice& pic = fan.picard();
  return pic.divisor_of(parse_class(cls, pic.names));
}

void print_generators(int rank, const std::vector<LatticeVector>& gens) {
  if (format == "json") {
    Json out = Json::array();
    for (const auto& g : gens) out.push_back(vector_json(g));
    std::cout << Json{{"rank", rank}, {"generators", out}}.dump() << "\n";
  } else {
    for (const auto& g : gens) std::cout << to_string(g) << "\n";
  }
}

int print_reports(const std::vector<CaseReport>& reports, bool summary) {
  int passed = 0;
  for (const auto& r : reports) {
    passed += r.overall() ? 1 : 0;
    if (format == "json") std::cout << r.to_json().dump() << "\n";
    else std::cout << r.to_text();
  }
  if (summary && format == "text")
    std::cout << passed << "/" << reports.size() << " reports pass\n";
  return passed == static_cast<int>(reports.size()) ? 0 : 1;
}

std::vector<std::string> all_bundled() {
  std::vector<std::string> paths = bundled_case_files();
  for (auto& p : bundled_toric_fano_fans()) paths.push_back(p);
  return paths;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bott vanishing toolkit for toric and Fano 3-folds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  int code = 0;

  auto* validate = app.add_subcommand("validate-fan", "Check a fan is smooth and complete");
  std::string fan_name;
  validate->add_option("fan", fan_name, "Fan file or bundled name")->required();
  validate->callback([&] {
    std::ifstream in(resolve_fan_path(fan_name));
    Json j = Json::parse(in);
    j.erase("toric_fano");
    std::optional<Fan> loaded;
    try {
      loaded = fan_from_json(j);
    } catch (const Error& e) {
      if (format == "json") std::cout << Json{{"ok", false}, {"error", e.what()}}.dump() << "\n";
      else std::cout << e.what() << "\n";
      code = 1;
      return;
    }
    const Fan& fan = *loaded;
    FanValidationReport rep = validate_fan(fan);
    bool fano = is_ample(fan, anticanonical_divisor(fan));
    if (format == "json") {
      Json j{{"id", fan.id()}, {"smooth", rep.smooth}, {"complete", rep.complete}, {"ok", rep.ok()},
             {"minus_K_ample", fano}};
      j["picard_basis"] = fan.picard().names;
      j["minus_K"] = format_class(fan.picard().class_of(anticanonical_divisor(fan)), fan.picard().names);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << fan.id() << ": smooth and complete, " << fan.num_rays() << " rays, " << fan.max_cones().size()
                << " maximal cones\n";
      std::cout << "Pic basis:";
      for (const auto& n : fan.picard().names) std::cout << " " << n;
      std::cout << "\n-K = " << format_class(fan.picard().class_of(anticanonical_divisor(fan)), fan.picard().names)
                << (fano ? " (ample)" : " (not ample)") << "\n";
    }
  });

  auto* coh = app.add_subcommand("cohomology", "Sheaf cohomology of a line bundle");
  std::string cls, coeffs;
  coh->add_option("--fan", fan_name, "Fan file or bundled name")->required();
  coh->add_option("--D", cls, "Divisor class in the Picard basis, e.g. 2H-E1");
  coh->add_option("--coeffs", coeffs, "Torus-invariant divisor as comma-separated ray coefficients");
  coh->callback([&] {
    Fan fan = fan_arg(fan_name);
    CohomologyVector h = line_bundle_cohomology(fan, divisor_arg(fan, cls, coeffs));
    if (format == "json") std::cout << Json{{"sheaf", "O(D)"}, {"dims", dims_json(h)}}.dump() << "\n";
    else std::cout << to_string(h) << "\n";
  });

  auto* hodge = app.add_subcommand("hodge", "H^j(Omega^i(D)) for nef D");
  int form_degree = 0;
  hodge->add_option("--fan", fan_name, "Fan file or bundled name")->required();
  hodge->add_option("--i", form_degree, "Form degree")->required();
  hodge->add_option("--D", cls, "Nef divisor class; default -K");
  hodge->add_option("--coeffs", coeffs, "Torus-invariant divisor as ray coefficients");
  hodge->callback([&] {
    Fan fan = fan_arg(fan_name);
    CohomologyVector h = hodge_twisted_cohomology(fan, form_degree, divisor_arg(fan, cls, coeffs));
    if (format == "json")
      std::cout << Json{{"sheaf", "Omega^" + std::to_string(form_degree) + "(D)"}, {"dims", dims_json(h)}}.dump()
                << "\n";
    else std::cout << to_string(h) << "\n";
  });

  auto* bott = app.add_subcommand("bott-check", "Bott vanishing for an ample divisor");
  bott->add_option("--fan", fan_name, "Fan file or bundled name")->required();
  bott->add_option("--D", cls, "Ample divisor class; default -K");
  bott->add_option("--coeffs", coeffs, "Torus-invariant divisor as ray coefficients");
  bott->callback([&] {
    Fan fan = fan_arg(fan_name);
    BottReport rep = bott_check(fan, divisor_arg(fan, cls, coeffs));
    if (format == "json") {
      Json j{{"sheaf", "Omega^i(D)"}, {"vanishing", rep.vanishing()}};
      j["dims"] = Json::array();
      for (const auto& h : rep.by_degree) j["dims"].push_back(dims_json(h));
      j["failures"] = Json::array();
      for (const auto& f : rep.failures) j["failures"].push_back({{"i", f.i}, {"j", f.j}, {"dim", to_long(f.dim)}});
      std::cout << j.dump() << "\n";
    } else {
      for (std::size_t i = 0; i < rep.by_degree.size(); ++i)
        std::cout << "Omega^" << i << ": " << to_string(rep.by_degree[i]) << "\n";
      std::cout << (rep.vanishing() ? "vanishing holds" : "vanishing fails") << "\n";
    }
    if (!rep.vanishing()) code = 1;
  });

  std::string cone_text;
  auto* dual = app.add_subcommand("dual-cone", "Generators of the dual cone");
  dual->add_option("--cone", cone_text, "Generators as JSON, e.g. [[1,0],[1,2]]")->required();
  dual->callback([&] {
    auto gens = parse_generators(cone_text);
    Cone c(static_cast<int>(gens[0].size()), gens);
    Cone d = dual_cone(c);
    print_generators(c.rank(), d.generators());
  });

  auto* hb = app.add_subcommand("hilbert-basis", "Hilbert basis of a pointed cone");
  hb->add_option("--cone", cone_text, "Generators as JSON, e.g. [[1,0],[1,2]]")->required();
  hb->callback([&] {
    auto gens = parse_generators(cone_text);
    Cone c(static_cast<int>(gens[0].size()), gens);
    print_generators(c.rank(), hilbert_basis(c).elements);
  });

  auto* chi = app.add_subcommand("chi", "chi(Omega^p (x) L) by Riemann-Roch");
  std::string model_name, line_bundle;
  int p = 0;
  chi->add_option("--model", model_name, "quadric3, flag_W, quintic_V5, toric:<fan> or a case file")->required();
  chi->add_option("--p", p, "Form degree")->required()->check(CLI::Range(0, 3));
  chi->add_option("--L", line_bundle, "Line bundle in the model basis")->required();
  chi->callback([&] {
    ChowModel3 m = [&] {
      if (!std::filesystem::exists(model_name)) return model_by_name(model_name);
      CaseFile cf = load_case(model_name);
      if (cf.chow_model) return build_model(*cf.chow_model);
      if (cf.counterexample) return build_model(cf.counterexample->model);
      throw Error(model_name + " carries no model");
    }();
    LatticeVector l = parse_class(line_bundle, m.basis);
    Integer value = chi_twisted(m, p, l);
    if (format == "json") std::cout << Json{{"chi", to_long(value)}}.dump() << "\n";
    else std::cout << value << "\n";
  });

  auto* screen = app.add_subcommand("screen", "chi(T_X) screen over the invariant table");
  std::string table;
  bool list = false;
  screen->add_option("table", table, "Invariant table; default the bundled one");
  screen->add_flag("--list", list, "Print every row with its screen value");
  screen->callback([&] {
    auto rows = load_invariant_table(table.empty() ? data_path("mm105.tsv") : table);
    ScreenPartition part = screen_nonnegative(rows);
    if (format == "json") {
      Json j{{"negative", part.negative.size()}, {"nonnegative", part.nonnegative.size()}};
      j["nonnegative_ids"] = Json::array();
      for (const auto& r : part.nonnegative) j["nonnegative_ids"].push_back(r.id);
      if (list) {
        j["rows"] = Json::array();
        for (const auto& r : rows)
          j["rows"].push_back({{"id", r.id}, {"degree", r.degree}, {"b2", r.b2}, {"h21", r.h21},
                               {"chi_T", chi_tangent_screen(r)}});
      }
      std::cout << j.dump() << "\n";
    } else {
      if (list)
        for (const auto& r : rows)
          std::cout << r.id << "\t" << r.degree << "\t" << r.b2 << "\t" << r.h21 << "\t" << chi_tangent_screen(r)
                    << "\n";
      std::cout << "negative: " << part.negative.size() << ", nonnegative: " << part.nonnegative.size() << "\n";
    }
  });

  auto* vcase = app.add_subcommand("verify-case", "Recompute the claims of one case file");
  std::string case_path;
  vcase->add_option("case", case_path, "Case file")->required()->check(CLI::ExistingFile);
  vcase->callback([&] { code = print_reports(verify_all({case_path}, 1), false); });

  auto* vall = app.add_subcommand("verify-all", "Screen, counterexamples, cases and toric Fano fans");
  unsigned threads = 0;
  vall->add_option("--threads", threads, "Worker threads; 0 for all cores");
  vall->callback([&] {
    std::vector<CaseReport> reports{verify_screen(data_path("mm105.tsv"), data_path("screen_expected.json"))};
    for (auto& r : verify_all(all_bundled(), threads)) reports.push_back(std::move(r));
    code = print_reports(reports, true);
  });

  auto* repro = app.add_subcommand("reproduce-paper", "Screen table, Riemann-Roch values and all case reports");
  repro->add_option("--threads", threads, "Worker threads; 0 for all cores");
  repro->callback([&] {
    auto rows = load_invariant_table(data_path("mm105.tsv"));
    if (format == "text") {
      std::cout << "== chi(T_X) screen ==\nid\tdegree\tb2\th21\tchi_T\n";
      for (const auto& r : rows)
        std::cout << r.id << "\t" << r.degree << "\t" << r.b2 << "\t" << r.h21 << "\t" << chi_tangent_screen(r) << "\n";
      std::cout << "\n== reports ==\n";
    }
    std::vector<CaseReport> reports{verify_screen(data_path("mm105.tsv"), data_path("screen_expected.json"))};
    for (auto& r : verify_all(all_bundled(), threads)) reports.push_back(std::move(r));
    code = print_reports(reports, true);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    // Bad files, classes or divisors outside an operation's domain.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
