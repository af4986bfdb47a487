#pragma once

#include "bott/types.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace bott {

// Lexicographic order on equal-length vectors.
bool lex_less(const LatticeVector& a, const LatticeVector& b);

struct LexLess {
  bool operator()(const LatticeVector& a, const LatticeVector& b) const { return lex_less(a, b); }
};

Integer content(const LatticeVector& v);
LatticeVector primitive(const LatticeVector& v);
void sort_unique(std::vector<LatticeVector>& vs);

// Fraction-free Gaussian elimination.
template <class Scalar>
Eigen::Index rational_rank(Matrix<Scalar> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index rank = 0;
  Scalar prev(1);
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot = rank;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    m.row(pivot).swap(m.row(rank));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      for (Eigen::Index k = c + 1; k < cols; ++k)
        m(r, k) = (m(rank, c) * m(r, k) - m(r, c) * m(rank, k)) / prev;
      m(r, c) = 0;
    }
    prev = m(rank, c);
    ++rank;
  }
  return rank;
}

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  Scalar prev(1), sign(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != c) {
      m.row(pivot).swap(m.row(c));
      sign = -sign;
    }
    for (Eigen::Index r = c + 1; r < n; ++r) {
      for (Eigen::Index k = c + 1; k < n; ++k)
        m(r, k) = (m(c, c) * m(r, k) - m(r, c) * m(c, k)) / prev;
      m(r, c) = 0;
    }
    prev = m(c, c);
  }
  return sign * m(n - 1, n - 1);
}

// Exact inverse over Q; throws on singular input.
RatMatrix rational_inverse(const IntMatrix& m);
// Inverse of a matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& m);
// Solves m x = b over Q for square nonsingular m.
RatVector rational_solve(const IntMatrix& m, const RatVector& b);

// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}.
struct SmithForm {
  IntMatrix U, D, V;
  Eigen::Index rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& a);

class Cone {
 public:
  Cone(int rank, std::vector<LatticeVector> generators);

  int rank() const { return rank_; }
  const std::vector<LatticeVector>& generators() const { return generators_; }
  // Generators of the dual cone; computed once and shared between copies.
  const std::vector<LatticeVector>& facet_normals() const;
  bool contains(const LatticeVector& x) const;
  bool is_pointed() const;
  // Primitive irredundant generators (lineality as +-pairs), lex sorted.
  Cone normalized() const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<LatticeVector> normals;
  };
  int rank_;
  std::vector<LatticeVector> generators_;
  std::shared_ptr<Cache> cache_;
};

Cone dual_cone(const Cone& cone);

struct MonoidBasis {
  std::vector<LatticeVector> elements;
};

MonoidBasis hilbert_basis(const Cone& cone);

struct Inequality {
  LatticeVector normal;
  Integer offset;  // <m, normal> >= offset
};

class LatticePolytope {
 public:
  LatticePolytope(int rank, std::vector<Inequality> inequalities);

  int rank() const { return rank_; }
  const std::vector<Inequality>& inequalities() const { return inequalities_; }
  bool contains(const LatticeVector& m) const;
  bool is_bounded() const;
  // Vertices of a bounded polytope, lex sorted; empty when infeasible.
  std::vector<RatVector> vertices() const;

 private:
  int rank_;
  std::vector<Inequality> inequalities_;
};

std::vector<LatticeVector> lattice_points(const LatticePolytope& p);

}  // namespace bott
