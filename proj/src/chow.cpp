#include "bott/chow.hpp"

#include <algorithm>

namespace bott {

namespace {

Integer pair(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

LatticeVector unit(int k, int i) {
  LatticeVector e = LatticeVector::Zero(k);
  e(i) = 1;
  return e;
}

// Pairing of a product of two divisors with each basis divisor.
RatVector square_pairing(const ChowModel3& m, const RatVector& a, const RatVector& b) {
  const int k = m.rank();
  RatVector out = RatVector::Zero(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (a(j) == 0) continue;
      for (int l = 0; l < k; ++l)
        if (b(l) != 0) out(i) += a(j) * b(l) * Rational(m.triple[static_cast<std::size_t>(i)](j, l));
    }
  return out;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

BundleCharacter constant(const ChowModel3& m, Rational r) {
  return {r, RatVector::Zero(m.rank()), RatVector::Zero(m.rank()), Rational(0)};
}

BundleCharacter add(const BundleCharacter& a, const BundleCharacter& b, const Rational& s = 1) {
  return {a.rank + s * b.rank, a.divisor + s * b.divisor, a.curve + s * b.curve, a.top + s * b.top};
}

BundleCharacter scale(const BundleCharacter& a, const Rational& s) {
  return {a.rank * s, a.divisor * s, a.curve * s, a.top * s};
}

std::string fresh_name(const ChowModel3& y, const std::string& wanted) {
  auto taken = [&](const std::string& n) {
    for (const auto& b : y.basis)
      if (b == n) return true;
    return false;
  };
  if (!wanted.empty()) {
    if (taken(wanted)) throw Error("basis name already used: " + wanted);
    return wanted;
  }
  if (!taken("E")) return "E";
  for (int k = 1;; ++k)
    if (!taken("E" + std::to_string(k))) return "E" + std::to_string(k);
}

ChowModel3 empty_model(const std::vector<std::string>& basis) {
  const int k = static_cast<int>(basis.size());
  ChowModel3 m;
  m.basis = basis;
  m.triple.assign(static_cast<std::size_t>(k), IntMatrix::Zero(k, k));
  m.c1 = LatticeVector::Zero(k);
  m.c2_pairing = LatticeVector::Zero(k);
  m.c3 = 0;
  return m;
}

void set_triple(ChowModel3& m, int i, int j, int l, const Integer& v) {
  int idx[3] = {i, j, l};
  std::sort(idx, idx + 3);
  do {
    m.triple[static_cast<std::size_t>(idx[0])](idx[1], idx[2]) = v;
  } while (std::next_permutation(idx, idx + 3));
}

}  // namespace

int ChowModel3::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == name) return static_cast<int>(i);
  throw Error("unknown basis class " + name);
}

Integer ChowModel3::product(const LatticeVector& a, const LatticeVector& b, const LatticeVector& c) const {
  Integer s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (a(i) == 0) continue;
    s += a(i) * (b.transpose() * triple[static_cast<std::size_t>(i)] * c)(0, 0);
  }
  return s;
}

Integer ChowModel3::c1c2() const { return pair(c1, c2_pairing); }

void ChowModel3::check() const {
  const int k = rank();
  if (static_cast<int>(triple.size()) != k || c1.size() != k || c2_pairing.size() != k)
    throw Error("inconsistent Chern data");
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        if (triple[static_cast<std::size_t>(i)](j, l) != triple[static_cast<std::size_t>(j)](i, l) ||
            triple[static_cast<std::size_t>(i)](j, l) != triple[static_cast<std::size_t>(i)](l, j))
          throw Error("inconsistent Chern data");
}

BundleCharacter multiply(const ChowModel3& m, const BundleCharacter& a, const BundleCharacter& b) {
  BundleCharacter out;
  out.rank = a.rank * b.rank;
  out.divisor = a.rank * b.divisor + b.rank * a.divisor;
  out.curve = a.rank * b.curve + b.rank * a.curve + square_pairing(m, a.divisor, b.divisor);
  out.top = a.rank * b.top + b.rank * a.top + dot(a.divisor, b.curve) + dot(b.divisor, a.curve);
  return out;
}

BundleCharacter exponential(const ChowModel3& m, const LatticeVector& d) {
  RatVector x = d.cast<Rational>();
  RatVector sq = square_pairing(m, x, x);
  return {Rational(1), x, sq / Rational(2), dot(x, sq) / Rational(6)};
}

BundleCharacter todd_class(const ChowModel3& m) {
  RatVector c1 = m.c1.cast<Rational>();
  RatVector c2 = m.c2_pairing.cast<Rational>();
  return {Rational(1), c1 / Rational(2), (square_pairing(m, c1, c1) + c2) / Rational(12),
          Rational(m.c1c2()) / Rational(24)};
}

BundleCharacter adams(const BundleCharacter& a, int k) {
  Rational k1(k), k2(k * k), k3(k * k * k);
  return {a.rank, a.divisor * k1, a.curve * k2, a.top * k3};
}

BundleCharacter chern_character_omega(const ChowModel3& m, int p) {
  if (p < 0 || p > 3) throw Error("form degree out of range");
  if (p == 0) return constant(m, 1);
  if (p == 3) return exponential(m, LatticeVector(-m.c1));
  RatVector c1 = m.c1.cast<Rational>();
  RatVector c2 = m.c2_pairing.cast<Rational>();
  RatVector c1sq = square_pairing(m, c1, c1);
  // Omega^1 has Chern classes -c1, c2, -c3.
  BundleCharacter omega{Rational(3), -c1, (c1sq - Rational(2) * c2) / Rational(2),
                        (-Rational(m.c1_cubed()) + Rational(3) * Rational(m.c1c2()) - Rational(3) * Rational(m.c3)) /
                            Rational(6)};
  if (p == 1) return omega;
  return scale(add(multiply(m, omega, omega), adams(omega, 2), -1), Rational(1, 2));
}

Integer chi_twisted(const ChowModel3& m, int p, const LatticeVector& line_bundle) {
  if (line_bundle.size() != m.rank()) throw Error("class length mismatch");
  BundleCharacter integrand =
      multiply(m, multiply(m, chern_character_omega(m, p), exponential(m, line_bundle)), todd_class(m));
  if (denominator(integrand.top) != 1) throw Error("inconsistent Chern data");
  return numerator(integrand.top);
}

Integer chi_tangent(const ChowModel3& m) {
  Rational v = Rational(m.c1_cubed()) / 2 - Rational(19) * Rational(m.c1c2()) / 24 + Rational(m.c3) / 2;
  if (denominator(v) != 1) throw Error("inconsistent Chern data");
  return numerator(v);
}

Integer chi_tangent_from_invariants(long degree, long b2, long h21) {
  if (degree % 2 != 0) throw Error("odd anticanonical degree");
  return Integer(degree / 2 - 18 + b2 - h21);
}

ChowModel3 toric_chow(const Fan& fan) {
  if (fan.rank() != 3) throw Error("only 3-folds supported");
  const PicardLattice& pic = fan.picard();
  const int k = pic.rank();
  ChowModel3 m = empty_model(pic.names);
  std::vector<TorusDivisor> reps;
  for (int i = 0; i < k; ++i) reps.push_back(pic.divisor_of(unit(k, i)));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      for (int l = j; l < k; ++l)
        set_triple(m, i, j, l, intersection_number(fan, reps[static_cast<std::size_t>(i)],
                                                   reps[static_cast<std::size_t>(j)], reps[static_cast<std::size_t>(l)]));
  m.c1 = pic.class_of(anticanonical_divisor(fan));
  // c2 is the sum of the orbit closures of the 2-cones.
  for (ConeMask tau : fan.cones(2)) {
    auto idx = mask_indices(tau);
    TorusDivisor a{unit(fan.num_rays(), idx[0])}, b{unit(fan.num_rays(), idx[1])};
    for (int i = 0; i < k; ++i) m.c2_pairing(i) += intersection_number(fan, a, b, reps[static_cast<std::size_t>(i)]);
  }
  m.c3 = static_cast<long>(fan.max_cones().size());
  return m;
}

ChowModel3 quadric3() {
  ChowModel3 m = empty_model({"H"});
  m.triple[0](0, 0) = 2;
  m.c1(0) = 3;
  m.c2_pairing(0) = 8;
  m.c3 = 4;
  return m;
}

ChowModel3 quintic_V5() {
  ChowModel3 m = empty_model({"H"});
  m.triple[0](0, 0) = 5;
  m.c1(0) = 2;
  m.c2_pairing(0) = 12;
  m.c3 = 4;
  return m;
}

ChowModel3 flag_W() {
  Fan p2p2 = product(projective_space(2, "A"), projective_space(2, "B"));
  return hypersurface_chow(p2p2, lattice_vector({1, 1}));
}

ChowModel3 hypersurface_chow(const Fan& ambient, const LatticeVector& cls) {
  if (ambient.rank() != 4) throw Error("hypersurface ambient must have dimension 4");
  const PicardLattice& pic = ambient.picard();
  const int k = pic.rank();
  if (cls.size() != k) throw Error("class length mismatch");
  ChowModel3 m = empty_model(pic.names);
  const int nr = ambient.num_rays();
  std::vector<TorusDivisor> reps;
  for (int i = 0; i < k; ++i) reps.push_back(pic.divisor_of(unit(k, i)));
  TorusDivisor x = pic.divisor_of(cls);
  TorusDivisor c1a = anticanonical_divisor(ambient);
  auto deg = [&](const TorusDivisor& a, const TorusDivisor& b, const TorusDivisor& c, const TorusDivisor& d) {
    return intersection_product(ambient, {a, b, c, d});
  };
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      for (int l = j; l < k; ++l)
        set_triple(m, i, j, l,
                   deg(reps[static_cast<std::size_t>(i)], reps[static_cast<std::size_t>(j)],
                       reps[static_cast<std::size_t>(l)], x));
  m.c1 = pic.class_of(c1a) - cls;

  // c(T_X) = c(T_Y)|_X / (1 + X), with c(T_Y) = prod (1 + D_rho).
  auto ray = [&](int r) { return TorusDivisor{unit(nr, r)}; };
  auto c2a = [&](const TorusDivisor& a, const TorusDivisor& b) {
    Integer s = 0;
    for (ConeMask tau : ambient.cones(2)) {
      auto idx = mask_indices(tau);
      s += deg(ray(idx[0]), ray(idx[1]), a, b);
    }
    return s;
  };
  for (int i = 0; i < k; ++i) {
    const TorusDivisor& d = reps[static_cast<std::size_t>(i)];
    m.c2_pairing(i) = c2a(d, x) - deg(c1a, x, d, x) + deg(x, x, d, x);
  }
  Integer c3a = 0;
  for (ConeMask tau : ambient.cones(3)) {
    auto idx = mask_indices(tau);
    c3a += deg(ray(idx[0]), ray(idx[1]), ray(idx[2]), x);
  }
  m.c3 = c3a - c2a(x, x) + deg(c1a, x, x, x) - deg(x, x, x, x);
  return m;
}

ChowModel3 blowup_point(const ChowModel3& y, const std::string& name) {
  std::vector<std::string> basis = y.basis;
  basis.push_back(fresh_name(y, name));
  const int k = y.rank();
  ChowModel3 m = empty_model(basis);
  for (int i = 0; i < k; ++i) {
    m.triple[static_cast<std::size_t>(i)].topLeftCorner(k, k) = y.triple[static_cast<std::size_t>(i)];
    m.c1(i) = y.c1(i);
    m.c2_pairing(i) = y.c2_pairing(i);
  }
  set_triple(m, k, k, k, Integer(1));
  m.c1(k) = -2;
  m.c2_pairing(k) = 0;
  m.c3 = y.c3 + 2;
  return m;
}

ChowModel3 blowup_curve(const ChowModel3& y, const LatticeVector& curve_degrees, int genus,
                        const std::string& name) {
  const int k = y.rank();
  if (curve_degrees.size() != k) throw Error("inconsistent curve data: degree vector length");
  if (genus < 0) throw Error("inconsistent curve data: negative genus");
  std::vector<std::string> basis = y.basis;
  basis.push_back(fresh_name(y, name));
  ChowModel3 m = empty_model(basis);
  Integer c1_dot_c = pair(y.c1, curve_degrees);
  for (int i = 0; i < k; ++i) {
    m.triple[static_cast<std::size_t>(i)].topLeftCorner(k, k) = y.triple[static_cast<std::size_t>(i)];
    set_triple(m, i, k, k, Integer(-curve_degrees(i)));
    m.c1(i) = y.c1(i);
    m.c2_pairing(i) = y.c2_pairing(i) + curve_degrees(i);
  }
  // E^3 = -deg N_C = -(c1 . C + 2g - 2).
  set_triple(m, k, k, k, Integer(-(c1_dot_c + 2 * genus - 2)));
  m.c1(k) = -1;
  m.c2_pairing(k) = c1_dot_c;
  m.c3 = y.c3 + 2 - 2 * genus;
  return m;
}

}  // namespace bott
