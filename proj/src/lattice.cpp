#include "bott/lattice.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace bott {

std::string to_string(const LatticeVector& v) {
  std::ostringstream out;
  out << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v(i);
  out << ")";
  return out.str();
}

bool lex_less(const LatticeVector& a, const LatticeVector& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, abs(v(i)));
  return g;
}

LatticeVector primitive(const LatticeVector& v) {
  Integer g = content(v);
  if (g <= 1) return v;
  LatticeVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) / g;
  return out;
}

void sort_unique(std::vector<LatticeVector>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end(),
                       [](const LatticeVector& a, const LatticeVector& b) { return a == b; }),
           vs.end());
}

RatMatrix rational_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  RatMatrix a = m.cast<Rational>();
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error("singular matrix");
    a.row(p).swap(a.row(c));
    inv.row(p).swap(inv.row(c));
    Rational s = a(c, c);
    a.row(c) /= s;
    inv.row(c) /= s;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational f = a(r, c);
      a.row(r) -= f * a.row(c);
      inv.row(r) -= f * inv.row(c);
    }
  }
  return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  RatMatrix inv = rational_inverse(m);
  IntMatrix out(inv.rows(), inv.cols());
  for (Eigen::Index i = 0; i < inv.rows(); ++i)
    for (Eigen::Index j = 0; j < inv.cols(); ++j) {
      if (denominator(inv(i, j)) != 1) throw Error("matrix is not unimodular");
      out(i, j) = numerator(inv(i, j));
    }
  return out;
}

RatVector rational_solve(const IntMatrix& m, const RatVector& b) { return rational_inverse(m) * b; }

SmithForm smith_normal_form(const IntMatrix& a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  SmithForm s;
  s.D = a;
  s.U = IntMatrix::Identity(rows, rows);
  s.V = IntMatrix::Identity(cols, cols);
  IntMatrix& D = s.D;
  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
    bool found = true;
    while (true) {
      Eigen::Index pr = -1, pc = -1;
      for (Eigen::Index r = t; r < rows; ++r)
        for (Eigen::Index c = t; c < cols; ++c)
          if (D(r, c) != 0 && (pr < 0 || abs(D(r, c)) < abs(D(pr, pc)))) pr = r, pc = c;
      if (pr < 0) {
        found = false;
        break;
      }
      D.row(pr).swap(D.row(t));
      s.U.row(pr).swap(s.U.row(t));
      D.col(pc).swap(D.col(t));
      s.V.col(pc).swap(s.V.col(t));
      bool clean = true;
      for (Eigen::Index r = t + 1; r < rows; ++r) {
        if (D(r, t) == 0) continue;
        Integer q = D(r, t) / D(t, t);
        D.row(r) -= q * D.row(t);
        s.U.row(r) -= q * s.U.row(t);
        if (D(r, t) != 0) clean = false;
      }
      for (Eigen::Index c = t + 1; c < cols; ++c) {
        if (D(t, c) == 0) continue;
        Integer q = D(t, c) / D(t, t);
        D.col(c) -= q * D.col(t);
        s.V.col(c) -= q * s.V.col(t);
        if (D(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (Eigen::Index r = t + 1; r < rows && divisible; ++r)
        for (Eigen::Index c = t + 1; c < cols; ++c)
          if (D(r, c) % D(t, t) != 0) {
            D.row(t) += D.row(r);
            s.U.row(t) += s.U.row(r);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (!found) break;
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      s.U.row(t) = -s.U.row(t);
    }
    s.rank = t + 1;
  }
  return s;
}

namespace {

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

IntMatrix columns_of(const std::vector<LatticeVector>& vs, int rank) {
  IntMatrix m(rank, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vs[j];
  return m;
}

// Double description: returns generators of {x : <a, x> >= 0 for all a}.
std::vector<LatticeVector> double_description(int rank, const std::vector<LatticeVector>& cons) {
  using Bits = boost::dynamic_bitset<>;
  struct Ray {
    LatticeVector v;
    Bits zeros;
  };
  std::vector<LatticeVector> lineality;
  for (int i = 0; i < rank; ++i) {
    LatticeVector e = LatticeVector::Zero(rank);
    e(i) = 1;
    lineality.push_back(e);
  }
  std::vector<Ray> rays;
  const std::size_t m = cons.size();
  for (std::size_t t = 0; t < m; ++t) {
    const LatticeVector& a = cons[t];
    auto piv = std::find_if(lineality.begin(), lineality.end(),
                            [&](const LatticeVector& l) { return dot(a, l) != 0; });
    if (piv != lineality.end()) {
      LatticeVector l0 = *piv;
      lineality.erase(piv);
      Integer s = dot(a, l0);
      if (s < 0) {
        l0 = -l0;
        s = -s;
      }
      for (auto& l : lineality) {
        Integer c = dot(a, l);
        if (c != 0) l = primitive(LatticeVector(s * l - c * l0));
      }
      for (auto& r : rays) {
        Integer c = dot(a, r.v);
        if (c != 0) r.v = primitive(LatticeVector(s * r.v - c * l0));
        r.zeros.set(t);
      }
      Ray fresh{l0, Bits(m)};
      for (std::size_t k = 0; k < t; ++k) fresh.zeros.set(k);
      rays.push_back(std::move(fresh));
      continue;
    }
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      if (val[i] < 0) neg.push_back(i);
      if (val[i] >= 0) {
        Ray r = rays[i];
        if (val[i] == 0) r.zeros.set(t);
        next.push_back(std::move(r));
      }
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        Bits common = rays[p].zeros & rays[q].zeros;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
          if (k != p && k != q && common.is_subset_of(rays[k].zeros)) adjacent = false;
        if (!adjacent) continue;
        Ray r{primitive(LatticeVector(val[p] * rays[q].v - val[q] * rays[p].v)), common};
        r.zeros.set(t);
        next.push_back(std::move(r));
      }
    rays = std::move(next);
  }
  std::vector<LatticeVector> out;
  for (auto& r : rays) out.push_back(r.v);
  for (auto& l : lineality) {
    out.push_back(l);
    out.push_back(-l);
  }
  for (auto& v : out) v = primitive(v);
  sort_unique(out);
  return out;
}

}  // namespace

Cone::Cone(int rank, std::vector<LatticeVector> generators)
    : rank_(rank), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  if (rank < 0) throw Error("negative rank");
  for (const auto& g : generators_)
    if (g.size() != rank) throw Error("generator dimension mismatch");
}

const std::vector<LatticeVector>& Cone::facet_normals() const {
  std::call_once(cache_->once, [this] { cache_->normals = dual_cone(*this).generators(); });
  return cache_->normals;
}

bool Cone::contains(const LatticeVector& x) const {
  if (x.size() != rank_) throw Error("dimension mismatch");
  for (const auto& f : facet_normals())
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::is_pointed() const {
  const auto& normals = facet_normals();
  if (rank_ == 0) return true;
  if (normals.empty()) return false;
  return rational_rank(columns_of(normals, rank_)) == rank_;
}

Cone Cone::normalized() const { return dual_cone(Cone(rank_, facet_normals())); }

Cone dual_cone(const Cone& cone) {
  if (cone.rank() == 0) throw Error("empty ambient");
  return Cone(cone.rank(), double_description(cone.rank(), cone.generators()));
}

MonoidBasis hilbert_basis(const Cone& cone) {
  if (!cone.is_pointed()) throw Error("Hilbert basis requires pointed cone");
  const int r = cone.rank();
  MonoidBasis result;
  if (r == 0) return result;
  std::vector<LatticeVector> gens = cone.normalized().generators();
  if (gens.empty()) return result;

  // Coordinates in a basis of the saturated lattice spanned by the cone.
  SmithForm snf = smith_normal_form(columns_of(gens, r));
  const Eigen::Index k = snf.rank;
  IntMatrix basis = unimodular_inverse(snf.U).leftCols(k);
  IntMatrix coords = (snf.U * columns_of(gens, r)).topRows(k);

  LatticeVector grading = LatticeVector::Zero(r);
  for (const auto& f : cone.facet_normals()) grading += f;

  std::set<LatticeVector, LexLess> candidates(gens.begin(), gens.end());
  const Eigen::Index g = static_cast<Eigen::Index>(gens.size());
  std::vector<Eigen::Index> pick(static_cast<std::size_t>(k));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    IntMatrix a(k, k);
    for (Eigen::Index j = 0; j < k; ++j) a.col(j) = coords.col(pick[static_cast<std::size_t>(j)]);
    Integer det = determinant<Integer>(a);
    if (abs(det) > 1) {
      SmithForm local = smith_normal_form(a);
      std::vector<Integer> digit(static_cast<std::size_t>(k), Integer(0));
      while (true) {
        RatVector scaled(k);
        for (Eigen::Index i = 0; i < k; ++i)
          scaled(i) = Rational(digit[static_cast<std::size_t>(i)], local.D(i, i));
        RatVector lambda = local.V.cast<Rational>() * scaled;
        for (Eigen::Index i = 0; i < k; ++i) lambda(i) -= Rational(floor_of(lambda(i)));
        RatVector p = a.cast<Rational>() * lambda;
        LatticeVector pz(k);
        for (Eigen::Index i = 0; i < k; ++i) pz(i) = numerator(p(i));
        LatticeVector lifted = basis * pz;
        if (!lifted.isZero()) candidates.insert(lifted);
        Eigen::Index i = 0;
        for (; i < k; ++i) {
          auto& d = digit[static_cast<std::size_t>(i)];
          if (++d < local.D(i, i)) break;
          d = 0;
        }
        if (i == k) break;
      }
    }
    Eigen::Index i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == g - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < k; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }

  std::vector<std::pair<Integer, LatticeVector>> graded;
  for (const auto& c : candidates) graded.emplace_back(dot(grading, c), c);
  std::stable_sort(graded.begin(), graded.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [deg, x] : graded) {
    bool reducible = false;
    for (const auto& h : result.elements)
      if (dot(grading, h) < deg && cone.contains(LatticeVector(x - h))) {
        reducible = true;
        break;
      }
    if (!reducible) result.elements.push_back(x);
  }
  sort_unique(result.elements);
  return result;
}

LatticePolytope::LatticePolytope(int rank, std::vector<Inequality> inequalities)
    : rank_(rank), inequalities_(std::move(inequalities)) {
  for (const auto& q : inequalities_)
    if (q.normal.size() != rank_) throw Error("inequality dimension mismatch");
}

bool LatticePolytope::contains(const LatticeVector& m) const {
  for (const auto& q : inequalities_)
    if (dot(q.normal, m) < q.offset) return false;
  return true;
}

bool LatticePolytope::is_bounded() const {
  if (rank_ == 0) return true;
  std::vector<LatticeVector> normals;
  for (const auto& q : inequalities_) normals.push_back(q.normal);
  if (normals.empty()) return false;
  return dual_cone(Cone(rank_, normals)).generators().empty();
}

std::vector<RatVector> LatticePolytope::vertices() const {
  std::vector<RatVector> out;
  const std::size_t m = inequalities_.size();
  const std::size_t n = static_cast<std::size_t>(rank_);
  auto feasible = [&](const RatVector& x) {
    for (const auto& q : inequalities_) {
      Rational s = 0;
      for (Eigen::Index i = 0; i < rank_; ++i) s += x(i) * q.normal(i);
      if (s < q.offset) return false;
    }
    return true;
  };
  if (n == 0) {
    if (feasible(RatVector(0))) out.emplace_back(0);
    return out;
  }
  if (m < n) return out;
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  IntMatrix a(rank_, rank_);
  RatVector b(rank_);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      a.row(static_cast<Eigen::Index>(i)) = inequalities_[pick[i]].normal.transpose();
      b(static_cast<Eigen::Index>(i)) = Rational(inequalities_[pick[i]].offset);
    }
    if (determinant<Integer>(a) != 0) {
      RatVector x = rational_solve(a, b);
      if (feasible(x)) out.push_back(x);
    }
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  auto less = [](const RatVector& x, const RatVector& y) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) < y(i)) return true;
      if (y(i) < x(i)) return false;
    }
    return false;
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const RatVector& x, const RatVector& y) { return x == y; }),
            out.end());
  return out;
}

std::vector<LatticeVector> lattice_points(const LatticePolytope& p) {
  if (!p.is_bounded()) throw Error("unbounded region");
  const int n = p.rank();
  std::vector<RatVector> verts = p.vertices();
  std::vector<LatticeVector> out;
  if (verts.empty()) return out;
  LatticeVector lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rational mn = verts[0](i), mx = verts[0](i);
    for (const auto& v : verts) {
      mn = std::min(mn, v(i));
      mx = std::max(mx, v(i));
    }
    lo(i) = ceil_of(mn);
    hi(i) = floor_of(mx);
    if (lo(i) > hi(i)) return out;
  }
  LatticeVector x = lo;
  while (true) {
    if (p.contains(x)) out.push_back(x);
    int i = n - 1;
    for (; i >= 0; --i) {
      if (x(i) < hi(i)) {
        x(i) += 1;
        break;
      }
      x(i) = lo(i);
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace bott
