#include "bott/case_verifier.hpp"

#include "bott/cohomology.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace bott {

namespace {

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

std::vector<LatticeVector> primitive_set(std::vector<LatticeVector> vs) {
  for (auto& v : vs) v = primitive(v);
  sort_unique(vs);
  return vs;
}

std::string format_set(const std::vector<LatticeVector>& vs, const std::vector<std::string>& basis) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + format_class(vs[i], basis);
  return out + "}";
}

Check outcome(std::string name, bool ok, std::string expected, std::string computed, std::string detail = {}) {
  return {std::move(name), ok ? "pass" : "fail", std::move(expected), std::move(computed), std::move(detail)};
}

Check not_applicable(std::string name, std::string why) { return {std::move(name), "n/a", "", "", std::move(why)}; }

template <class F>
Check guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {name, "error", "", "", e.what()};
  }
}

void require_table(const CaseFile& cf) {
  if (cf.picard_basis.empty()) throw Error("case has no Picard data");
  for (const auto& c : cf.curves)
    if (c.degrees.size() != static_cast<Eigen::Index>(cf.picard_basis.size()))
      throw Error("curve " + c.name + " does not match the Picard basis");
}

Cone curve_cone(const CaseFile& cf) {
  require_table(cf);
  std::vector<LatticeVector> gens;
  for (const auto& c : cf.curves) gens.push_back(c.degrees);
  return Cone(static_cast<int>(cf.picard_basis.size()), gens);
}

std::string degree_list(const CaseFile& cf, const LatticeVector& cls) {
  std::string out;
  for (const auto& c : cf.curves) out += (out.empty() ? "" : ", ") + c.name + ":" + dot(cls, c.degrees).str();
  return out;
}

bool has_property(const Fan& fan, const LatticeVector& cls, const std::string& property) {
  TorusDivisor d = fan.picard().divisor_of(cls);
  return property == "ample" ? is_ample(fan, d) : is_nef(fan, d);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

bool CaseReport::overall() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

Json CaseReport::to_json() const {
  Json j;
  j["id"] = id;
  if (!description.empty()) j["description"] = description;
  j["overall"] = overall();
  j["checks"] = Json::array();
  for (const auto& c : checks) {
    Json cj;
    cj["name"] = c.name;
    cj["status"] = c.status;
    cj["pass"] = c.pass();
    cj["expected"] = c.expected;
    cj["computed"] = c.computed;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    j["checks"].push_back(cj);
  }
  j["assumed"] = assumed;
  return j;
}

std::string CaseReport::to_text() const {
  std::ostringstream os;
  os << id << "  " << (overall() ? "PASS" : "FAIL");
  if (!description.empty()) os << "  " << description;
  os << "\n";
  for (const auto& c : checks) {
    os << "  [" << c.status << "] " << c.name;
    if (!c.expected.empty() || !c.computed.empty()) os << ": expected " << c.expected << ", computed " << c.computed;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& a : assumed) os << "  assumed: " << a << "\n";
  return os.str();
}

Check verify_dual_cone(const CaseFile& cf) {
  return guarded("dual_cone", [&] {
    Cone dual = dual_cone(curve_cone(cf));
    auto computed = primitive_set(dual.generators());
    auto claimed = primitive_set(cf.claimed_nef_generators);
    return outcome("dual_cone", computed == claimed, format_set(claimed, cf.picard_basis),
                   format_set(computed, cf.picard_basis));
  });
}

Check verify_nef_monoid(const CaseFile& cf) {
  return guarded("nef_monoid", [&] {
    Cone dual = dual_cone(curve_cone(cf));
    auto computed = hilbert_basis(dual).elements;
    sort_unique(computed);
    auto claimed = cf.claimed_nef_generators;
    sort_unique(claimed);
    return outcome("nef_monoid", computed == claimed, format_set(claimed, cf.picard_basis),
                   format_set(computed, cf.picard_basis));
  });
}

Check verify_generators_in_dual(const CaseFile& cf) {
  return guarded("generators_in_dual", [&] {
    require_table(cf);
    std::vector<LatticeVector> bad;
    for (const auto& g : cf.claimed_nef_generators)
      for (const auto& c : cf.curves)
        if (dot(g, c.degrees) < 0) {
          bad.push_back(g);
          break;
        }
    return outcome("generators_in_dual", bad.empty(), "{}", format_set(bad, cf.picard_basis),
                   bad.empty() ? "" : "claimed generators negative on some curve");
  });
}

Check verify_unit_degree(const CaseFile& cf) {
  if (!cf.unit_degree) return not_applicable("unit_degree", "-K is not claimed to have degree 1 on every curve");
  return guarded("unit_degree", [&] {
    require_table(cf);
    bool ok = std::all_of(cf.curves.begin(), cf.curves.end(),
                          [&](const CaseCurve& c) { return dot(cf.minus_K, c.degrees) == 1; });
    return outcome("unit_degree", ok, "1 on every curve", degree_list(cf, cf.minus_K),
                   "-K = " + format_class(cf.minus_K, cf.picard_basis));
  });
}

Check verify_decomposition(const CaseFile& cf) {
  if (!cf.base_ample) return {"decomposition", "error", "", "", "missing base_ample"};
  return guarded("decomposition", [&] {
    require_table(cf);
    const LatticeVector& m = *cf.base_ample;
    bool unit = std::all_of(cf.curves.begin(), cf.curves.end(),
                            [&](const CaseCurve& c) { return dot(m, c.degrees) == 1; });
    // Degree 1 everywhere already forces ampleness; kept as its own test.
    bool ample = !cf.curves.empty() && std::all_of(cf.curves.begin(), cf.curves.end(),
                                                   [&](const CaseCurve& c) { return dot(m, c.degrees) > 0; });
    // Spot check: every sampled ample p leaves a nef remainder p - base.
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<long> coord(-6, 6);
    int sampled = 0, bad = 0;
    for (int draw = 0; draw < 20000 && sampled < 50; ++draw) {
      LatticeVector p(m.size());
      for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = coord(rng);
      if (!std::all_of(cf.curves.begin(), cf.curves.end(), [&](const CaseCurve& c) { return dot(p, c.degrees) > 0; }))
        continue;
      ++sampled;
      LatticeVector rest = p - m;
      if (!std::all_of(cf.curves.begin(), cf.curves.end(), [&](const CaseCurve& c) { return dot(rest, c.degrees) >= 0; }))
        ++bad;
    }
    return outcome("decomposition", unit && ample && bad == 0, "1 on every curve", degree_list(cf, m),
                   "base " + format_class(m, cf.picard_basis) + "; " + std::to_string(sampled) +
                       " ample classes sampled, " + std::to_string(bad) + " without nef remainder");
  });
}

std::vector<Check> verify_ci_lemma(const CaseFile& cf) {
  if (!cf.toric_ambient) return {not_applicable("ci_lemma", "no toric ambient data")};
  const ToricAmbient& amb = *cf.toric_ambient;
  std::vector<Check> out;
  std::optional<Fan> loaded;
  try {
    loaded = load_fan(resolve_fan_path(amb.fan));
  } catch (const std::exception& e) {
    return {{"ci_lemma", "error", "", "", e.what()}};
  }
  const Fan& fan = *loaded;
  const auto& names = fan.picard().names;

  auto fact = [&](const std::string& name, const LatticeVector& cls, const std::string& property, bool expected) {
    out.push_back(guarded(name, [&] {
      bool got = has_property(fan, cls, property);
      return outcome(name, got == expected, yes_no(expected), yes_no(got),
                     format_class(cls, names) + " " + property + " on " + amb.fan);
    }));
  };

  if (amb.minus_K) {
    out.push_back(guarded("ambient -K", [&] {
      LatticeVector k = fan.picard().class_of(anticanonical_divisor(fan));
      return outcome("ambient -K", k == *amb.minus_K, format_class(*amb.minus_K, names), format_class(k, names),
                     amb.fan);
    }));
  }
  if (amb.part == 0) {
    out.push_back(not_applicable("ci_lemma", "ambient facts only"));
  } else {
    const LatticeVector &L = *amb.L, &S1 = *amb.S1, &S2 = *amb.S2;
    fact("ci: L ample", L, "ample", true);
    fact("ci: L-S1 ample", L - S1, "ample", true);
    if (amb.part == 3) {
      const RestrictionData& r = *amb.restriction;
      std::optional<Fan> surface;
      try {
        surface = load_fan(resolve_fan_path(r.surface_fan));
      } catch (const std::exception& e) {
        out.push_back({"ci: restriction", "error", "", "", e.what()});
        return out;
      }
      const auto& snames = surface->picard().names;
      for (const auto& item : r.checks) {
        std::string name = "ci: " + item.label;
        out.push_back(guarded(name, [&] {
          LatticeVector res = r.map * item.ambient_class;
          if (res != item.stated_class)
            return outcome(name, false, format_class(item.stated_class, snames), format_class(res, snames),
                           "restriction to S1 disagrees with the stated class");
          bool got = has_property(*surface, res, item.property);
          return outcome(name, got == item.expected, yes_no(item.expected), yes_no(got),
                         format_class(res, snames) + " " + item.property + " on " + r.surface_fan);
        }));
      }
    } else {
      fact("ci: L-S2 ample", L - S2, "ample", true);
      fact("ci: L-S1-S2 nef", L - S1 - S2, "nef", true);
    }
  }
  for (const auto& f : amb.facts) fact("fact: " + f.label, f.cls, f.property, f.expected);
  return out;
}

Check verify_counterexample(const CaseFile& cf) {
  if (!cf.counterexample) return not_applicable("chi", "no Riemann-Roch data");
  return guarded("chi", [&] {
    const Counterexample& ce = *cf.counterexample;
    ChowModel3 m = build_model(ce.model);
    Integer chi = chi_twisted(m, ce.p, ce.L);
    return outcome("chi", chi == ce.expected_chi, std::to_string(ce.expected_chi), chi.str(),
                   "chi(Omega^" + std::to_string(ce.p) + "(" + format_class(ce.L, m.basis) + "))");
  });
}

Check verify_chow_model(const CaseFile& cf) {
  if (!cf.chow_model) return not_applicable("chow_model", "no independent model");
  return guarded("chow_model", [&] {
    ChowModel3 m = build_model(*cf.chow_model);
    // Match the model basis to the case basis by name.
    if (m.basis.size() != cf.picard_basis.size()) throw Error("model and case have different Picard ranks");
    LatticeVector c1 = LatticeVector::Zero(m.rank());
    for (int i = 0; i < m.rank(); ++i) {
      auto it = std::find(cf.picard_basis.begin(), cf.picard_basis.end(), m.basis[static_cast<std::size_t>(i)]);
      if (it == cf.picard_basis.end()) throw Error("model basis name " + m.basis[static_cast<std::size_t>(i)] +
                                                   " is not in the case basis");
      c1(it - cf.picard_basis.begin()) = m.c1(i);
    }
    Integer deg = m.c1_cubed();
    bool ok = c1 == cf.minus_K && (!cf.degree || deg == *cf.degree);
    std::string want = format_class(cf.minus_K, cf.picard_basis);
    if (cf.degree) want += ", (-K)^3 = " + std::to_string(*cf.degree);
    return outcome("chow_model", ok, want, format_class(c1, cf.picard_basis) + ", (-K)^3 = " + deg.str());
  });
}

std::vector<Check> verify_toric_fano(const Fan& fan) {
  std::vector<Check> out;
  auto run = [&](const std::string& label, const TorusDivisor& d) {
    std::string name = "bott: " + label;
    out.push_back(guarded(name, [&] {
      BottReport rep = bott_check(fan, d);
      std::string detail;
      for (const auto& f : rep.failures)
        detail += "h^" + std::to_string(f.j) + "(Omega^" + std::to_string(f.i) + ") = " + f.dim.str() + "; ";
      return outcome(name, rep.vanishing(), "h^{j>0} = 0", rep.vanishing() ? "h^{j>0} = 0" : "nonzero", detail);
    }));
  };
  const PicardLattice& pic = fan.picard();
  TorusDivisor mk = anticanonical_divisor(fan);
  std::string k = format_class(pic.class_of(mk), pic.names);
  run("-K = " + k, mk);
  for (const auto& g : nef_monoid_generators(fan)) {
    TorusDivisor d = pic.divisor_of(g);
    std::string name = format_class(g, pic.names);
    run("-K + (" + name + ")", mk + d);
    if (is_ample(fan, d)) run(name, d);
  }
  return out;
}

CaseReport verify_case(const CaseFile& cf) {
  CaseReport rep;
  rep.id = cf.id;
  rep.description = cf.description;
  rep.assumed = cf.assumed;
  if (!cf.picard_basis.empty()) {
    rep.checks.push_back(verify_generators_in_dual(cf));
    rep.checks.push_back(verify_dual_cone(cf));
    rep.checks.push_back(verify_nef_monoid(cf));
    rep.checks.push_back(verify_unit_degree(cf));
    rep.checks.push_back(verify_decomposition(cf));
    for (auto& c : verify_ci_lemma(cf)) rep.checks.push_back(std::move(c));
    if (cf.chow_model) rep.checks.push_back(verify_chow_model(cf));
  }
  if (cf.counterexample) rep.checks.push_back(verify_counterexample(cf));
  if (cf.toric_fano_fan) {
    try {
      Fan fan = load_fan(resolve_fan_path(*cf.toric_fano_fan));
      for (auto& c : verify_toric_fano(fan)) rep.checks.push_back(std::move(c));
    } catch (const std::exception& e) {
      rep.checks.push_back({"bott", "error", "", "", e.what()});
    }
  }
  if (rep.checks.empty()) rep.checks.push_back({"case", "error", "", "", "case file carries no checkable data"});
  return rep;
}

CaseReport verify_screen(const std::string& table_path, const std::string& expected_path) {
  CaseReport rep;
  rep.id = "screen";
  rep.description = "chi(T_X) = (-K)^3/2 - 18 + b2 - h21 over the invariant table";
  try {
    std::ifstream in(expected_path);
    if (!in) throw Error("cannot open " + expected_path);
    Json want = Json::parse(in);
    ScreenPartition part = screen_nonnegative(load_invariant_table(table_path));
    auto neg = static_cast<long>(part.negative.size()), nonneg = static_cast<long>(part.nonnegative.size());
    long want_neg = want.at("negative_count").get<long>(), want_nonneg = want.at("nonnegative_count").get<long>();
    rep.checks.push_back(outcome("negative count", neg == want_neg, std::to_string(want_neg), std::to_string(neg)));
    rep.checks.push_back(
        outcome("nonnegative count", nonneg == want_nonneg, std::to_string(want_nonneg), std::to_string(nonneg)));
    std::vector<std::string> got, expected = want.at("nonnegative_ids").get<std::vector<std::string>>();
    for (const auto& r : part.nonnegative) got.push_back(r.id);
    std::sort(got.begin(), got.end(), id_less);
    std::sort(expected.begin(), expected.end(), id_less);
    std::string extra, missing;
    for (const auto& id : got)
      if (!std::binary_search(expected.begin(), expected.end(), id, id_less)) extra += id + " ";
    for (const auto& id : expected)
      if (!std::binary_search(got.begin(), got.end(), id, id_less)) missing += id + " ";
    std::string detail;
    if (!extra.empty()) detail += "unexpected: " + extra;
    if (!missing.empty()) detail += "missing: " + missing;
    rep.checks.push_back(outcome("nonnegative ids", got == expected, std::to_string(expected.size()) + " ids",
                                 std::to_string(got.size()) + " ids", detail));
  } catch (const std::exception& e) {
    rep.checks.push_back({"screen", "error", "", "", e.what()});
  }
  return rep;
}

CaseReport verify_toric_fano_file(const std::string& fan_path) {
  CaseReport rep;
  rep.id = fan_path;
  try {
    Fan fan = load_fan(fan_path);
    rep.id = fan.id();
    rep.description = "toric Fano 3-fold";
    rep.checks = verify_toric_fano(fan);
  } catch (const std::exception& e) {
    rep.checks.push_back({"load", "error", "", "", e.what()});
  }
  return rep;
}

std::vector<CaseReport> verify_all(const std::vector<std::string>& paths, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  auto one = [](const std::string& path) {
    try {
      std::ifstream in(path);
      if (!in) throw Error("cannot open " + path);
      if (Json::parse(in).contains("rays")) return verify_toric_fano_file(path);
      return verify_case(load_case(path));
    } catch (const std::exception& e) {
      CaseReport r;
      r.id = path;
      r.checks.push_back({"load", "error", "", "", e.what()});
      return r;
    }
  };
  std::vector<CaseReport> out(paths.size());
  for (std::size_t start = 0; start < paths.size(); start += threads) {
    std::vector<std::future<CaseReport>> batch;
    for (std::size_t i = start; i < std::min(paths.size(), start + threads); ++i)
      batch.push_back(std::async(std::launch::async, one, paths[i]));
    for (std::size_t i = 0; i < batch.size(); ++i) out[start + i] = batch[i].get();
  }
  return out;
}

}  // namespace bott
