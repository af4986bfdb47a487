#pragma once

#include "bott/fan.hpp"

#include <vector>

namespace bott {

// dims[j] = dim H^j, j = 0..rank.
struct CohomologyVector {
  std::vector<Integer> dims;

  Integer euler() const;
  bool vanishes_above(int j) const;
  bool operator==(const CohomologyVector& o) const { return dims == o.dims; }
};

std::string to_string(const CohomologyVector& h);

// H^j(X, O(D)) for any torus-invariant D.
CohomologyVector line_bundle_cohomology(const Fan& fan, const TorusDivisor& d);

// Ishida complex of Omega^i(D), D nef, split by weight. Weights with the same
// support (rays whose facet contains m) give isomorphic summands, so each
// block stores one summand and how many weights share it.
struct IshidaBlock {
  ConeMask support = 0;
  Integer multiplicity = 0;
  std::vector<int> term_dims;               // C^s for s = 0..i
  std::vector<IntMatrix> differentials;     // d^s : C^s -> C^{s+1}
};

struct IshidaComplex {
  int degree = 0;
  std::vector<IshidaBlock> blocks;

  std::vector<Integer> term_dims() const;
  bool squares_to_zero() const;
};

IshidaComplex ishida_complex(const Fan& fan, int i, const TorusDivisor& d);

// H^j(X, Omega^i(D)) for nef D.
CohomologyVector hodge_twisted_cohomology(const Fan& fan, int i, const TorusDivisor& d);

struct BottFailure {
  int i = 0, j = 0;
  Integer dim;
};

struct BottReport {
  std::vector<CohomologyVector> by_degree;  // index i
  std::vector<BottFailure> failures;
  bool vanishing() const { return failures.empty(); }
};

// H^j(Omega^i(D)) = 0 for j > 0 and every i; D ample.
BottReport bott_check(const Fan& fan, const TorusDivisor& d);

// H^j(Omega^i(D)) = 0 for j > i; D nef.
bool nef_vanishing_check(const Fan& fan, int i, const TorusDivisor& d);

}  // namespace bott
