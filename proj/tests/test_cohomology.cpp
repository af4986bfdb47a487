#include <doctest.h>

#include "bott/chow.hpp"
#include "bott/cohomology.hpp"
#include "bott/fano_data.hpp"
#include "oracles.hpp"

#include <random>

using namespace bott;
using oracle::binomial;

namespace {

TorusDivisor hyperplane_multiple(const Fan& p, long k) {
  TorusDivisor d{LatticeVector::Zero(p.num_rays())};
  d.coeffs(0) = k;
  return d;
}

// h^q(P^n, Omega^p(k)) by Bott's formula.
long bott_formula(int n, int p, int q, long k) {
  if (q == 0 && k > p) return binomial(k + n - p, k) * binomial(k - 1, p);
  if (k == 0 && p == q) return 1;
  if (q == n && k < p - n) return binomial(-k + p, -k) * binomial(-k - 1, n - p);
  return 0;
}

long at(const CohomologyVector& h, int j) { return to_long(h.dims[static_cast<std::size_t>(j)]); }

TorusDivisor random_divisor(const Fan& fan, std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> c(-range, range);
  TorusDivisor d{LatticeVector(fan.num_rays())};
  for (Eigen::Index i = 0; i < d.coeffs.size(); ++i) d.coeffs(i) = c(rng);
  return d;
}

TorusDivisor random_nef(const Fan& fan, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(0, 2);
  const auto& pic = fan.picard();
  LatticeVector cls = LatticeVector::Zero(pic.rank());
  for (const auto& g : nef_monoid_generators(fan)) cls += Integer(c(rng)) * g;
  return pic.divisor_of(cls);
}

}  // namespace

TEST_CASE("line bundles on projective space") {
  for (int n = 1; n <= 4; ++n) {
    Fan p = projective_space(n);
    for (long k = -n - 4; k <= 4; ++k) {
      CohomologyVector h = line_bundle_cohomology(p, hyperplane_multiple(p, k));
      CAPTURE(n);
      CAPTURE(k);
      CHECK(at(h, 0) == (k >= 0 ? binomial(n + k, n) : 0));
      CHECK(at(h, n) == (k <= -n - 1 ? binomial(-k - 1, n) : 0));
      for (int j = 1; j < n; ++j) CHECK(at(h, j) == 0);
    }
  }
}

TEST_CASE("Bott formula for twisted forms on projective space") {
  for (int n = 2; n <= 3; ++n) {
    Fan p = projective_space(n);
    for (long k = 0; k <= 4; ++k)
      for (int i = 0; i <= n; ++i) {
        CohomologyVector h = hodge_twisted_cohomology(p, i, hyperplane_multiple(p, k));
        for (int j = 0; j <= n; ++j) {
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(i);
          CAPTURE(j);
          CHECK(at(h, j) == bott_formula(n, i, j, k));
        }
      }
  }
}

TEST_CASE("Kunneth formula on P1 x P2") {
  Fan p1 = projective_space(1, "A"), p2 = projective_space(2, "B");
  Fan f = product(p1, p2);
  const auto& pic = f.picard();
  for (long a = -4; a <= 2; ++a)
    for (long b = -5; b <= 2; ++b) {
      CohomologyVector h = line_bundle_cohomology(f, pic.divisor_of(lattice_vector({a, b})));
      CohomologyVector ha = line_bundle_cohomology(p1, hyperplane_multiple(p1, a));
      CohomologyVector hb = line_bundle_cohomology(p2, hyperplane_multiple(p2, b));
      for (int j = 0; j <= 3; ++j) {
        long expect = 0;
        for (int s = 0; s <= 1; ++s)
          if (j - s >= 0 && j - s <= 2) expect += at(ha, s) * at(hb, j - s);
        CHECK(at(h, j) == expect);
      }
    }
}

TEST_CASE("global sections count lattice points of the polytope") {
  std::mt19937_64 rng(23);
  for (const char* name : {"P1xF1", "Bl_line_P3", "fano_3.29", "fano_5.3"}) {
    Fan fan = load_fan(resolve_fan_path(name));
    for (int t = 0; t < 10; ++t) {
      TorusDivisor d = random_nef(fan, rng);
      CohomologyVector h = line_bundle_cohomology(fan, d);
      // Box filter over |m_i| <= sum |a_rho|.
      long bound = 0;
      for (Eigen::Index i = 0; i < d.coeffs.size(); ++i) bound += std::labs(to_long(d.coeffs(i)));
      long count = 0;
      oracle::for_each_box_point(oracle::Vec(3, -bound), oracle::Vec(3, bound), [&](const oracle::Vec& m) {
        for (int r = 0; r < fan.num_rays(); ++r)
          if (oracle::dot(m, oracle::to_vec(fan.ray(r))) < -to_long(d.coeffs(r))) return;
        ++count;
      });
      CHECK(at(h, 0) == count);
      CHECK(h.vanishes_above(0));
    }
  }
}

TEST_CASE("Serre duality and Riemann-Roch for line bundles") {
  std::mt19937_64 rng(29);
  for (const char* name : {"Bl_two_lines_P3", "fano_4.10", "P1xP1xP1"}) {
    Fan fan = load_fan(resolve_fan_path(name));
    ChowModel3 chow = toric_chow(fan);
    TorusDivisor K = canonical_divisor(fan);
    for (int t = 0; t < 15; ++t) {
      TorusDivisor d = random_divisor(fan, rng, 2);
      CohomologyVector h = line_bundle_cohomology(fan, d), hs = line_bundle_cohomology(fan, K - d);
      for (int j = 0; j <= 3; ++j) CHECK(at(h, j) == at(hs, 3 - j));
      CHECK(h.euler() == chi_twisted(chow, 0, fan.picard().class_of(d)));
    }
  }
}

TEST_CASE("Ishida complex") {
  std::mt19937_64 rng(31);
  for (const char* name : {"P3", "Bl_pt_P3", "fano_2.36", "fano_3.31", "fano_4.11"}) {
    Fan fan = load_fan(resolve_fan_path(name));
    ChowModel3 chow = toric_chow(fan);
    for (int t = 0; t < 4; ++t) {
      TorusDivisor d = random_nef(fan, rng);
      LatticeVector cls = fan.picard().class_of(d);
      for (int i = 0; i <= 3; ++i) {
        CAPTURE(name);
        CAPTURE(i);
        IshidaComplex c = ishida_complex(fan, i, d);
        CHECK(c.squares_to_zero());
        CHECK(c.term_dims().size() == static_cast<std::size_t>(i + 1));
        // The complex resolves Omega^i(D): its Euler characteristic is HRR's.
        CohomologyVector h = hodge_twisted_cohomology(fan, i, d);
        CHECK(h.euler() == chi_twisted(chow, i, cls));
        CHECK(h.vanishes_above(i));
        for (const auto& b : c.blocks)
          for (std::size_t s = 0; s < b.differentials.size(); ++s) {
            CHECK(b.differentials[s].cols() == b.term_dims[s]);
            CHECK(b.differentials[s].rows() == b.term_dims[s + 1]);
          }
      }
      // Omega^0 is O(D).
      CHECK(hodge_twisted_cohomology(fan, 0, d) == line_bundle_cohomology(fan, d));
    }
  }
}

TEST_CASE("Hodge numbers of toric Fano 3-folds") {
  for (const auto& p : bundled_toric_fano_fans()) {
    Fan fan = load_fan(p);
    TorusDivisor zero{LatticeVector::Zero(fan.num_rays())};
    long rho = fan.picard().rank();
    CHECK(at(hodge_twisted_cohomology(fan, 0, zero), 0) == 1);
    CHECK(at(hodge_twisted_cohomology(fan, 1, zero), 1) == rho);
    CHECK(at(hodge_twisted_cohomology(fan, 2, zero), 2) == rho);
    CHECK(at(hodge_twisted_cohomology(fan, 3, zero), 3) == 1);
  }
}

TEST_CASE("Bott checks") {
  Fan p3 = projective_space(3);
  BottReport r = bott_check(p3, hyperplane_multiple(p3, 1));
  CHECK(r.vanishing());
  CHECK(r.by_degree.size() == 4);
  CHECK(at(r.by_degree[3], 0) == 0);  // Omega^3(1) = O(-3)
  CHECK(at(r.by_degree[1], 0) == 0);
  CHECK(at(r.by_degree[1], 0) == bott_formula(3, 1, 0, 1));
  CHECK_THROWS_AS(bott_check(p3, hyperplane_multiple(p3, 0)), Error);
  CHECK_THROWS_AS(nef_vanishing_check(p3, 1, hyperplane_multiple(p3, -1)), Error);
  CHECK_THROWS_AS(ishida_complex(p3, 1, hyperplane_multiple(p3, -1)), Error);
}

TEST_CASE("worked examples") {
  Fan p1 = projective_space(1), p2 = projective_space(2), p3 = projective_space(3);
  Fan p1p1 = product(projective_space(1, "A"), projective_space(1, "B"));
  Fan p1p2 = product(projective_space(1, "A"), projective_space(2, "B"));
  Fan p111 = product(p1p1, projective_space(1, "C"));
  auto zero = [](const Fan& f) { return TorusDivisor{LatticeVector::Zero(f.num_rays())}; };

  CHECK(line_bundle_cohomology(p1, TorusDivisor{lattice_vector({0, -2})}).dims == std::vector<Integer>{0, 1});
  CHECK(line_bundle_cohomology(p2, hyperplane_multiple(p2, 1)).dims == std::vector<Integer>{3, 0, 0});
  CHECK(line_bundle_cohomology(p1p1, p1p1.picard().divisor_of(lattice_vector({1, -2}))).dims ==
        std::vector<Integer>{0, 2, 0});

  CHECK(hodge_twisted_cohomology(p1, 1, TorusDivisor{lattice_vector({0, 2})}).dims == std::vector<Integer>{1, 0});
  CHECK(hodge_twisted_cohomology(p2, 1, zero(p2)).dims == std::vector<Integer>{0, 1, 0});
  TorusDivisor mk = anticanonical_divisor(p111);
  for (int i : {1, 2}) CHECK(hodge_twisted_cohomology(p111, i, mk).vanishes_above(0));

  CHECK(bott_check(p3, hyperplane_multiple(p3, 1)).vanishing());
  BottReport r = bott_check(p1p1, p1p1.picard().divisor_of(lattice_vector({1, 1})));
  CHECK(r.vanishing());
  // Omega^1 = O(-2,0) + O(0,-2), so Omega^1(1,1) has h^0 = 0 + 0.
  CHECK(at(r.by_degree[1], 0) == 0);
  CHECK(at(r.by_degree[0], 0) == 4);

  CHECK(nef_vanishing_check(p2, 1, zero(p2)));
  CHECK(nef_vanishing_check(p1p2, 2, p1p2.picard().divisor_of(lattice_vector({0, 1}))));
  CHECK(nef_vanishing_check(p3, 0, zero(p3)));
  CHECK_THROWS_WITH_AS(hodge_twisted_cohomology(p2, 1, hyperplane_multiple(p2, -1)), "requires nef twist", Error);
}

TEST_CASE("Ishida term dimensions") {
  std::mt19937_64 rng(37);
  for (const char* name : {"P2", "P1xP2", "fano_3.26", "Bl_line_fibre_P3"}) {
    Fan fan = load_fan(resolve_fan_path(name));
    const int n = fan.rank();
    for (int t = 0; t < 3; ++t) {
      TorusDivisor d = random_nef(fan, rng);
      for (int i = 0; i <= n; ++i) {
        auto dims = ishida_complex(fan, i, d).term_dims();
        for (int s = 0; s <= i; ++s) {
          long expect = 0;
          for (ConeMask tau : fan.cones(s))
            expect += static_cast<long>(lattice_points(face_for_cone(fan, d, tau)).size()) * binomial(n - s, i - s);
          CHECK(dims[static_cast<std::size_t>(s)] == expect);
        }
      }
    }
  }
}

TEST_CASE("twisted cohomology depends only on the class") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> c(-2, 2);
  for (const char* name : {"P1xP2", "Bl_pt_P3", "fano_3.28"}) {
    Fan fan = load_fan(resolve_fan_path(name));
    for (int t = 0; t < 3; ++t) {
      TorusDivisor d = random_nef(fan, rng), moved = d;
      LatticeVector m(3);
      for (Eigen::Index k = 0; k < 3; ++k) m(k) = c(rng);
      for (int r = 0; r < fan.num_rays(); ++r) moved.coeffs(r) = d.coeffs(r) + m.dot(fan.ray(r));
      for (int i = 0; i <= 3; ++i) CHECK(hodge_twisted_cohomology(fan, i, d) == hodge_twisted_cohomology(fan, i, moved));
    }
  }
}
