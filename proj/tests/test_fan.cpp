#include <doctest.h>

#include "bott/fan.hpp"
#include "bott/fano_data.hpp"
#include "oracles.hpp"

#include <map>
#include <random>

using namespace bott;

namespace {

TorusDivisor divisor(const std::vector<long>& coeffs) { return {lattice_vector(coeffs)}; }

// D + div(chi^m): same class, different torus-invariant representative.
TorusDivisor shifted(const Fan& fan, const TorusDivisor& d, const LatticeVector& m) {
  TorusDivisor out = d;
  for (int i = 0; i < fan.num_rays(); ++i) out.coeffs(i) += m.dot(fan.ray(i));
  return out;
}

std::map<std::string, InvariantRecord> table_by_id() {
  std::map<std::string, InvariantRecord> out;
  for (const auto& r : load_invariant_table(data_dir() + "/mm105.tsv")) out[r.id] = r;
  return out;
}

}  // namespace

TEST_CASE("projective spaces") {
  for (int n = 1; n <= 4; ++n) {
    Fan p = projective_space(n);
    CHECK(validate_fan(p).ok());
    CHECK(p.num_rays() == n + 1);
    CHECK(p.max_cones().size() == static_cast<std::size_t>(n + 1));
    CHECK(p.picard().rank() == 1);
    CHECK(p.picard().names == std::vector<std::string>{"H"});
    TorusDivisor h = p.picard().divisor_of(lattice_vector({1}));
    CHECK(intersection_product(p, std::vector<TorusDivisor>(static_cast<std::size_t>(n), h)) == 1);
    CHECK(p.picard().class_of(anticanonical_divisor(p)) == lattice_vector({n + 1}));
    CHECK(is_ample(p, h));
    CHECK_FALSE(is_ample(p, TorusDivisor{LatticeVector::Zero(n + 1)}));
    CHECK(is_nef(p, TorusDivisor{LatticeVector::Zero(n + 1)}));
    CHECK(nef_monoid_generators(p) == std::vector<LatticeVector>{lattice_vector({1})});
  }
  Fan p3 = projective_space(3);
  TorusDivisor mk = anticanonical_divisor(p3);
  CHECK(intersection_number(p3, mk, mk, mk) == 64);
  CHECK(p3.cones(2).size() == 6);
  CHECK(p3.wall_curves().size() == 6);
}

TEST_CASE("products") {
  Fan f = product(projective_space(1, "A"), projective_space(2, "B"));
  CHECK(validate_fan(f).ok());
  CHECK(f.rank() == 3);
  CHECK(f.picard().names == std::vector<std::string>{"A", "B"});
  const auto& pic = f.picard();
  TorusDivisor a = pic.divisor_of(lattice_vector({1, 0})), b = pic.divisor_of(lattice_vector({0, 1}));
  CHECK(intersection_number(f, a, b, b) == 1);
  CHECK(intersection_number(f, a, a, b) == 0);
  CHECK(intersection_number(f, b, b, b) == 0);
  TorusDivisor mk = anticanonical_divisor(f);
  CHECK(pic.class_of(mk) == lattice_vector({2, 3}));
  CHECK(intersection_number(f, mk, mk, mk) == 54);
  CHECK(nef_monoid_generators(f).size() == 2);
  CHECK_FALSE(is_ample(f, a));
  CHECK(is_nef(f, a));
}

TEST_CASE("invalid fans are reported") {
  SUBCASE("non-smooth cone") {
    Fan f(2, {lattice_vector({1, 0}), lattice_vector({1, 2}), lattice_vector({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}});
    auto rep = validate_fan(f);
    CHECK_FALSE(rep.smooth);
    CHECK_FALSE(rep.ok());
    CHECK_THROWS_AS(f.picard(), Error);
  }
  SUBCASE("incomplete fan") {
    Fan f(2, {lattice_vector({1, 0}), lattice_vector({0, 1}), lattice_vector({-1, -1})}, {{0, 1}, {1, 2}});
    auto rep = validate_fan(f);
    CHECK_FALSE(rep.complete);
    CHECK_FALSE(rep.ok());
  }
  SUBCASE("overlapping cones") {
    Fan f(2, {lattice_vector({1, 0}), lattice_vector({0, 1}), lattice_vector({-1, -1}), lattice_vector({1, 1})},
          {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
    CHECK_FALSE(validate_fan(f).ok());
  }
  SUBCASE("bad ray index") {
    CHECK_THROWS_AS(Fan(2, {lattice_vector({1, 0}), lattice_vector({0, 1})}, {{0, 5}}), Error);
  }
}

TEST_CASE("intersection numbers do not depend on the representative") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-2, 2);
  for (const char* name : {"Bl_pt_P3", "P1xF1", "fano_3.28", "fano_4.12"}) {
    Fan fan = load_fan(resolve_fan_path(name));
    for (int t = 0; t < 10; ++t) {
      std::vector<TorusDivisor> ds, moved;
      for (int k = 0; k < 3; ++k) {
        TorusDivisor d{LatticeVector(fan.num_rays())};
        for (Eigen::Index i = 0; i < d.coeffs.size(); ++i) d.coeffs(i) = c(rng);
        LatticeVector m(3);
        for (Eigen::Index i = 0; i < 3; ++i) m(i) = c(rng);
        ds.push_back(d);
        moved.push_back(shifted(fan, d, m));
        CHECK(fan.picard().class_of(d) == fan.picard().class_of(moved.back()));
      }
      CHECK(intersection_product(fan, ds) == intersection_product(fan, moved));
      CHECK(intersection_number(fan, ds[0], ds[1], ds[2]) == intersection_number(fan, ds[2], ds[0], ds[1]));
    }
  }
}

TEST_CASE("wall curves pair with divisors as intersection numbers") {
  Fan fan = load_fan(resolve_fan_path("fano_3.25"));
  const auto& pic = fan.picard();
  for (const auto& w : fan.wall_curves()) {
    // D.C for C = V(wall) is the triple product D * D_a * D_b over the wall rays.
    auto rays = mask_indices(w.wall);
    REQUIRE(rays.size() == 2);
    for (int r = 0; r < fan.num_rays(); ++r) {
      TorusDivisor d{LatticeVector::Zero(fan.num_rays())}, a = d, b = d;
      d.coeffs(r) = 1;
      a.coeffs(rays[0]) = 1;
      b.coeffs(rays[1]) = 1;
      CHECK(intersection_number(fan, d, a, b) == w.degrees(r));
    }
  }
  CHECK(pic.rank() == fan.num_rays() - 3);
}

TEST_CASE("bundled toric Fano fans match the invariant table") {
  auto table = table_by_id();
  auto paths = bundled_toric_fano_fans();
  CHECK(paths.size() == 18);
  for (const auto& p : paths) {
    Fan fan = load_fan(p);
    CAPTURE(fan.id());
    REQUIRE(table.count(fan.id()));
    const auto& row = table[fan.id()];
    CHECK(validate_fan(fan).ok());
    CHECK(fan.picard().rank() == row.b2);
    TorusDivisor mk = anticanonical_divisor(fan);
    CHECK(is_ample(fan, mk));
    CHECK(intersection_number(fan, mk, mk, mk) == row.degree);
    CHECK(row.h21 == 0);
    // -K has positive degree on every torus-invariant curve.
    for (const auto& w : fan.wall_curves()) CHECK(mk.coeffs.dot(w.degrees) > 0);
  }
}

TEST_CASE("nef monoid generators lie on wall-curve inequalities") {
  for (const char* name : {"Bl_two_lines_P3", "P1xP1xP1", "fano_4.9", "G_plane_three_fibres_P4"}) {
    Fan fan = load_fan(resolve_fan_path(name));
    const auto& pic = fan.picard();
    auto gens = nef_monoid_generators(fan);
    CHECK_FALSE(gens.empty());
    for (const auto& g : gens) CHECK(is_nef(fan, pic.divisor_of(g)));
    LatticeVector sum = LatticeVector::Zero(pic.rank());
    for (const auto& g : gens) sum += g;
    CHECK(is_nef(fan, pic.divisor_of(sum)));
  }
}

TEST_CASE("face lattices pair dually with the cone rays") {
  Fan fan = load_fan(resolve_fan_path("fano_2.35"));
  for (int dim = 0; dim <= 3; ++dim)
    for (ConeMask tau : fan.cones(dim)) {
      const ConeFace& f = fan.face_lattice(tau);
      CHECK(f.basis.rows() == 3);
      CHECK(f.basis.cols() == 3 - dim);
      for (int r : mask_indices(tau))
        for (Eigen::Index j = 0; j < f.basis.cols(); ++j) CHECK(LatticeVector(f.basis.col(j)).dot(fan.ray(r)) == 0);
      for (std::size_t k = 0; k < f.dual_rays.size(); ++k)
        for (Eigen::Index j = 0; j < f.basis.cols(); ++j)
          CHECK(LatticeVector(f.basis.col(j)).dot(fan.ray(f.dual_rays[k])) == (static_cast<Eigen::Index>(k) == j ? 1 : 0));
    }
}

TEST_CASE("worked examples") {
  Fan p2(2, {lattice_vector({1, 0}), lattice_vector({0, 1}), lattice_vector({-1, -1})}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(validate_fan(p2).ok());
  Fan p1 = projective_space(1);
  Fan p1p2 = product(projective_space(1, "A"), projective_space(2, "B"));
  Fan blpt = load_fan(resolve_fan_path("Bl_pt_P3"));
  const auto& bp = blpt.picard();
  CHECK(bp.names == std::vector<std::string>{"H", "E1"});

  CHECK(anticanonical_divisor(projective_space(3)).coeffs == lattice_vector({1, 1, 1, 1}));
  CHECK(canonical_divisor(projective_space(3)).coeffs == lattice_vector({-1, -1, -1, -1}));
  Fan p111 = product(product(projective_space(1, "A"), projective_space(1, "B")), projective_space(1, "C"));
  CHECK(p111.picard().class_of(anticanonical_divisor(p111)) == lattice_vector({2, 2, 2}));
  CHECK(bp.class_of(anticanonical_divisor(blpt)) == lattice_vector({4, -2}));

  auto ample = [](const Fan& f, const std::vector<long>& c) { return is_ample(f, f.picard().divisor_of(lattice_vector(c))); };
  auto nef = [](const Fan& f, const std::vector<long>& c) { return is_nef(f, f.picard().divisor_of(lattice_vector(c))); };
  CHECK(ample(p1p2, {1, 1}));
  CHECK(nef(p1p2, {0, 1}));
  CHECK_FALSE(ample(p1p2, {0, 1}));
  CHECK(nef(blpt, {1, -1}));
  CHECK_FALSE(ample(blpt, {1, -1}));
  CHECK(ample(blpt, {2, -1}));
  CHECK_FALSE(nef(blpt, {1, 1}));
  CHECK_THROWS_AS(is_nef(blpt, TorusDivisor{lattice_vector({1, 1})}), Error);

  TorusDivisor mk = anticanonical_divisor(blpt);
  CHECK(intersection_number(blpt, mk, mk, mk) == 56);
  const auto& pp = p111.picard();
  TorusDivisor a = pp.divisor_of(lattice_vector({1, 0, 0})), b = pp.divisor_of(lattice_vector({0, 1, 0})),
               c = pp.divisor_of(lattice_vector({0, 0, 1}));
  CHECK(intersection_number(p111, a, b, c) == 1);
  CHECK(intersection_number(p111, a, a, b) == 0);
  TorusDivisor h2{lattice_vector({1, 0, 0})};
  CHECK_THROWS_WITH_AS(intersection_number(p2, h2, h2, h2), "only 3-folds supported", Error);

  // Divisor polytopes and their faces.
  TorusDivisor two_inf{lattice_vector({0, 2})};
  CHECK(lattice_points(divisor_polytope(p1, two_inf)).size() == 3);
  CHECK(lattice_points(face_for_cone(p1, two_inf, mask_of({0}))).size() == 1);
  TorusDivisor minus_h{lattice_vector({-1, 0, 0})};
  CHECK(lattice_points(divisor_polytope(p2, minus_h)).empty());
  CHECK(lattice_points(divisor_polytope(p1p2, p1p2.picard().divisor_of(lattice_vector({1, 1})))).size() == 6);
  TorusDivisor h{lattice_vector({1, 0, 0})};
  CHECK(lattice_points(face_for_cone(p2, h, 0)).size() == 3);
  CHECK(lattice_points(face_for_cone(p2, h, mask_of({0}))).size() == 2);
  CHECK_THROWS_WITH_AS(face_for_cone(p2, minus_h, 0), "face correspondence requires nef", Error);
}

TEST_CASE("principal divisors have trivial class") {
  for (const auto& p : bundled_toric_fano_fans()) {
    Fan fan = load_fan(p);
    for (int k = 0; k < 3; ++k) {
      LatticeVector m = LatticeVector::Zero(3);
      m(k) = 1;
      TorusDivisor d{LatticeVector(fan.num_rays())};
      for (int r = 0; r < fan.num_rays(); ++r) d.coeffs(r) = m.dot(fan.ray(r));
      CHECK(fan.picard().class_of(d) == LatticeVector::Zero(fan.picard().rank()));
    }
    // class_of and divisor_of are inverse on classes.
    for (int i = 0; i < fan.picard().rank(); ++i) {
      LatticeVector e = LatticeVector::Zero(fan.picard().rank());
      e(i) = 1;
      CHECK(fan.picard().class_of(fan.picard().divisor_of(e)) == e);
    }
  }
}

TEST_CASE("nef and ample are compatible with sums") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> c(-2, 3);
  std::vector<Fan> fans;
  for (const auto& p : bundled_toric_fano_fans()) fans.push_back(load_fan(p));
  for (const char* name : {"Bl_two_lines_P3", "P1xF1", "Bl_curve_P1xP2", "Bl_line_fibre_P3"})
    fans.push_back(load_fan(resolve_fan_path(name)));
  int pairs = 0;
  for (int t = 0; t < 50; ++t) {
    const Fan& fan = fans[static_cast<std::size_t>(t) % fans.size()];
    const auto& pic = fan.picard();
    std::vector<TorusDivisor> nefs;
    for (int s = 0; s < 40 && nefs.size() < 2; ++s) {
      LatticeVector cls(pic.rank());
      for (Eigen::Index i = 0; i < cls.size(); ++i) cls(i) = c(rng);
      TorusDivisor d = pic.divisor_of(cls);
      if (is_ample(fan, d)) CHECK(is_nef(fan, d));
      if (is_nef(fan, d)) nefs.push_back(d);
    }
    if (nefs.size() == 2) {
      CHECK(is_nef(fan, nefs[0] + nefs[1]));
      ++pairs;
    }
    TorusDivisor mk = anticanonical_divisor(fan);
    for (const auto& g : nef_monoid_generators(fan)) CHECK(is_ample(fan, mk + pic.divisor_of(g)));
  }
  CHECK(pairs > 10);
}

TEST_CASE("vertices of nef polytopes sit on maximal cones") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> c(0, 2);
  for (const auto& p : bundled_toric_fano_fans()) {
    Fan fan = load_fan(p);
    const auto& pic = fan.picard();
    auto gens = nef_monoid_generators(fan);
    std::vector<TorusDivisor> sample{anticanonical_divisor(fan)};
    for (int s = 0; s < 3; ++s) {
      LatticeVector cls = LatticeVector::Zero(pic.rank());
      for (const auto& g : gens) cls += Integer(c(rng)) * g;
      sample.push_back(pic.divisor_of(cls));
    }
    for (const auto& d : sample) {
      auto vertices = divisor_polytope(fan, d).vertices();
      bool ample = is_ample(fan, d);
      if (ample) CHECK(vertices.size() == fan.max_cones().size());
      for (const auto& v : vertices) {
        ConeMask tight = 0;
        for (int r = 0; r < fan.num_rays(); ++r) {
          Rational pairing = 0;
          for (Eigen::Index k = 0; k < 3; ++k) pairing += v(k) * Rational(fan.ray(r)(k));
          if (pairing == Rational(-d.coeffs(r))) tight |= ConeMask(1) << r;
        }
        bool contains_max = false, equals_max = false;
        for (ConeMask sigma : fan.max_cones()) {
          if ((sigma & tight) == sigma) contains_max = true;
          if (sigma == tight) equals_max = true;
        }
        CHECK(contains_max);
        if (ample) CHECK(equals_max);
      }
    }
  }
}
