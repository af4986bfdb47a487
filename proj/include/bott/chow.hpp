#pragma once

#include "bott/fan.hpp"

#include <string>
#include <vector>

namespace bott {

// Numerical Chow data of a smooth projective 3-fold: triple intersections of
// a Pic basis, c1 as a class, c2 as its pairing with the basis, deg c3.
struct ChowModel3 {
  std::vector<std::string> basis;
  std::vector<IntMatrix> triple;  // triple[i](j, k) = D_i D_j D_k
  LatticeVector c1;
  LatticeVector c2_pairing;
  Integer c3;

  int rank() const { return static_cast<int>(basis.size()); }
  int index_of(const std::string& name) const;
  Integer product(const LatticeVector& a, const LatticeVector& b, const LatticeVector& c) const;
  Integer c1_cubed() const { return product(c1, c1, c1); }
  Integer c1c2() const;
  void check() const;
};

// Element of the numerical ring Q + N^1 + N_1 + Q; the degree-2 part is kept
// as its pairing with the divisor basis.
template <class Scalar>
struct GradedClass {
  Scalar rank;
  Vector<Scalar> divisor;
  Vector<Scalar> curve;
  Scalar top;
};

using BundleCharacter = GradedClass<Rational>;

BundleCharacter multiply(const ChowModel3& m, const BundleCharacter& a, const BundleCharacter& b);
BundleCharacter exponential(const ChowModel3& m, const LatticeVector& d);
BundleCharacter todd_class(const ChowModel3& m);
// Chern character of Omega^p.
BundleCharacter chern_character_omega(const ChowModel3& m, int p);
// ch of the k-th Adams operation.
BundleCharacter adams(const BundleCharacter& a, int k);

ChowModel3 toric_chow(const Fan& fan);
ChowModel3 quadric3();
ChowModel3 quintic_V5();
ChowModel3 flag_W();
// Smooth member of |X| in a smooth projective toric 4-fold; Pic is inherited.
ChowModel3 hypersurface_chow(const Fan& ambient, const LatticeVector& cls);
ChowModel3 blowup_point(const ChowModel3& y, const std::string& name = {});
// Curve given by its degrees against the basis of y.
ChowModel3 blowup_curve(const ChowModel3& y, const LatticeVector& curve_degrees, int genus,
                        const std::string& name = {});

// chi(X, Omega^p (x) L) by Hirzebruch-Riemann-Roch.
Integer chi_twisted(const ChowModel3& m, int p, const LatticeVector& line_bundle);
// chi(X, T_X) from c1^3, c1 c2 and c3.
Integer chi_tangent(const ChowModel3& m);
// The same for a Fano 3-fold with b1 = 0, from (-K)^3, b2 and h^{1,2}.
Integer chi_tangent_from_invariants(long degree, long b2, long h21);

}  // namespace bott
