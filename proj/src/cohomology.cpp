#include "bott/cohomology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace bott {

Integer CohomologyVector::euler() const {
  Integer s = 0;
  for (std::size_t j = 0; j < dims.size(); ++j) s += (j % 2 ? -1 : 1) * dims[j];
  return s;
}

bool CohomologyVector::vanishes_above(int j) const {
  for (std::size_t k = static_cast<std::size_t>(std::max(j + 1, 0)); k < dims.size(); ++k)
    if (dims[k] != 0) return false;
  return true;
}

std::string to_string(const CohomologyVector& h) {
  std::ostringstream out;
  out << "(";
  for (std::size_t j = 0; j < h.dims.size(); ++j) out << (j ? "," : "") << h.dims[j];
  out << ")";
  return out.str();
}

namespace {

Integer pair(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

int sign_of_position(ConeMask bigger, int r) {
  int pos = mask_size(bigger & ((ConeMask(1) << r) - 1));
  return pos % 2 ? -1 : 1;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

LatticePolytope chamber(const Fan& fan, const TorusDivisor& d, ConeMask negative) {
  std::vector<Inequality> ineqs;
  for (int r = 0; r < fan.num_rays(); ++r) {
    if (negative >> r & 1)
      ineqs.push_back({LatticeVector(-fan.ray(r)), Integer(d.coeffs(r) + 1)});
    else
      ineqs.push_back({fan.ray(r), Integer(-d.coeffs(r))});
  }
  return LatticePolytope(fan.rank(), std::move(ineqs));
}

// Cohomology of one weight summand of the Ishida complex.
struct Block {
  std::vector<int> term_dims;
  std::vector<IntMatrix> differentials;
  std::vector<int> cohomology;
};

Block build_block(const Fan& fan, int i, ConeMask support) {
  const int n = fan.rank();
  struct Term {
    ConeMask tau;
    std::vector<int> wedge;
  };
  Block b;
  std::vector<std::vector<Term>> terms(static_cast<std::size_t>(i + 1));
  std::vector<std::map<std::pair<ConeMask, std::vector<int>>, int>> index(static_cast<std::size_t>(i + 1));
  for (int s = 0; s <= i && s <= n; ++s)
    for (ConeMask tau : fan.cones(s)) {
      if (tau & ~support) continue;
      for (auto& w : subsets(n - s, i - s)) {
        index[static_cast<std::size_t>(s)][{tau, w}] = static_cast<int>(terms[static_cast<std::size_t>(s)].size());
        terms[static_cast<std::size_t>(s)].push_back({tau, w});
      }
    }
  for (auto& t : terms) b.term_dims.push_back(static_cast<int>(t.size()));

  for (int s = 0; s < i; ++s) {
    const auto& src = terms[static_cast<std::size_t>(s)];
    const auto& dst = terms[static_cast<std::size_t>(s + 1)];
    IntMatrix dmat = IntMatrix::Zero(static_cast<Eigen::Index>(dst.size()), static_cast<Eigen::Index>(src.size()));
    const int k = i - s;
    for (std::size_t col = 0; col < src.size(); ++col) {
      const ConeFace& face = fan.face_lattice(src[col].tau);
      std::vector<LatticeVector> x;
      for (int a : src[col].wedge) x.push_back(face.basis.col(a));
      for (int rho : mask_indices(support & ~src[col].tau)) {
        ConeMask bigger = src[col].tau | (ConeMask(1) << rho);
        if (!fan.is_cone(bigger)) continue;
        const ConeFace& target = fan.face_lattice(bigger);
        const int width = static_cast<int>(target.dual_rays.size());
        // pairing[c][d] = <x_c, v_{dual ray d}>
        IntMatrix pairing(k, width);
        for (int c = 0; c < k; ++c)
          for (int dd = 0; dd < width; ++dd)
            pairing(c, dd) = pair(x[static_cast<std::size_t>(c)], fan.ray(target.dual_rays[static_cast<std::size_t>(dd)]));
        std::vector<Integer> along(static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c) along[static_cast<std::size_t>(c)] = pair(x[static_cast<std::size_t>(c)], fan.ray(rho));
        for (auto& J : subsets(width, k - 1)) {
          Integer coeff = 0;
          for (int bb = 0; bb < k; ++bb) {
            if (along[static_cast<std::size_t>(bb)] == 0) continue;
            IntMatrix minor(k - 1, k - 1);
            int row = 0;
            for (int c = 0; c < k; ++c) {
              if (c == bb) continue;
              for (int dd = 0; dd < k - 1; ++dd) minor(row, dd) = pairing(c, J[static_cast<std::size_t>(dd)]);
              ++row;
            }
            Integer m = k == 1 ? Integer(1) : determinant<Integer>(minor);
            coeff += (bb % 2 ? -1 : 1) * along[static_cast<std::size_t>(bb)] * m;
          }
          if (coeff == 0) continue;
          int rowIdx = index[static_cast<std::size_t>(s + 1)].at({bigger, J});
          dmat(rowIdx, static_cast<Eigen::Index>(col)) += coeff;
        }
      }
    }
    b.differentials.push_back(std::move(dmat));
  }
  std::vector<Eigen::Index> ranks;
  for (const auto& dm : b.differentials) ranks.push_back(rational_rank<Integer>(dm));
  for (int j = 0; j <= i; ++j) {
    Eigen::Index h = b.term_dims[static_cast<std::size_t>(j)];
    if (j < i) h -= ranks[static_cast<std::size_t>(j)];
    if (j > 0) h -= ranks[static_cast<std::size_t>(j - 1)];
    b.cohomology.push_back(static_cast<int>(h));
  }
  return b;
}

void check_degree(const Fan& fan, int i) {
  if (i < 0 || i > fan.rank()) throw Error("form degree out of range");
}

std::map<ConeMask, Integer> weight_supports(const Fan& fan, const TorusDivisor& d) {
  std::map<ConeMask, Integer> count;
  for (const auto& m : lattice_points(divisor_polytope(fan, d))) {
    ConeMask z = 0;
    for (int r = 0; r < fan.num_rays(); ++r)
      if (pair(m, fan.ray(r)) == -d.coeffs(r)) z |= ConeMask(1) << r;
    count[z] += 1;
  }
  return count;
}

}  // namespace

namespace detail {

std::vector<std::vector<int>> subcomplex_cohomology(const Fan& fan) {
  const int nr = fan.num_rays(), n = fan.rank();
  if (nr > 20) throw Error("too many rays for the chamber decomposition");
  std::vector<std::vector<int>> table(std::size_t(1) << nr);
  for (ConeMask s = 0; s < (ConeMask(1) << nr); ++s) {
    std::vector<std::vector<ConeMask>> faces(static_cast<std::size_t>(n + 1));
    std::vector<std::map<ConeMask, int>> pos(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k)
      for (ConeMask c : fan.cones(k))
        if (!(c & ~s)) {
          pos[static_cast<std::size_t>(k)][c] = static_cast<int>(faces[static_cast<std::size_t>(k)].size());
          faces[static_cast<std::size_t>(k)].push_back(c);
        }
    std::vector<Eigen::Index> ranks;
    for (int k = 0; k < n; ++k) {
      const auto& lo = faces[static_cast<std::size_t>(k)];
      const auto& hi = faces[static_cast<std::size_t>(k + 1)];
      IntMatrix delta = IntMatrix::Zero(static_cast<Eigen::Index>(hi.size()), static_cast<Eigen::Index>(lo.size()));
      for (std::size_t c = 0; c < lo.size(); ++c)
        for (int r : mask_indices(s & ~lo[c])) {
          ConeMask up = lo[c] | (ConeMask(1) << r);
          auto it = pos[static_cast<std::size_t>(k + 1)].find(up);
          if (it == pos[static_cast<std::size_t>(k + 1)].end()) continue;
          delta(it->second, static_cast<Eigen::Index>(c)) = sign_of_position(up, r);
        }
      ranks.push_back(rational_rank<Integer>(delta));
    }
    auto& row = table[s];
    for (int k = 0; k <= n; ++k) {
      Eigen::Index h = static_cast<Eigen::Index>(faces[static_cast<std::size_t>(k)].size());
      if (k < n) h -= ranks[static_cast<std::size_t>(k)];
      if (k > 0) h -= ranks[static_cast<std::size_t>(k - 1)];
      row.push_back(static_cast<int>(h));
    }
  }
  return table;
}

}  // namespace detail

CohomologyVector line_bundle_cohomology(const Fan& fan, const TorusDivisor& d) {
  if (d.coeffs.size() != fan.num_rays()) throw Error("divisor length mismatch");
  const auto& table = fan.subcomplex_cohomology();
  CohomologyVector h{std::vector<Integer>(static_cast<std::size_t>(fan.rank() + 1), Integer(0))};
  for (ConeMask s = 0; s < table.size(); ++s) {
    const auto& red = table[s];
    if (std::all_of(red.begin(), red.end(), [](int x) { return x == 0; })) continue;
    LatticePolytope region = chamber(fan, d, s);
    if (!region.is_bounded()) throw Error("divergent weight family");
    auto pts = lattice_points(region);
    if (pts.empty()) continue;
    Integer count = static_cast<long>(pts.size());
    for (std::size_t k = 0; k < red.size(); ++k) h.dims[k] += count * red[k];
  }
  return h;
}

std::vector<Integer> IshidaComplex::term_dims() const {
  std::vector<Integer> out(static_cast<std::size_t>(degree + 1), Integer(0));
  for (const auto& b : blocks)
    for (std::size_t s = 0; s < b.term_dims.size(); ++s) out[s] += b.multiplicity * b.term_dims[s];
  return out;
}

bool IshidaComplex::squares_to_zero() const {
  for (const auto& b : blocks)
    for (std::size_t s = 0; s + 1 < b.differentials.size(); ++s) {
      IntMatrix sq = b.differentials[s + 1] * b.differentials[s];
      if (!sq.isZero()) return false;
    }
  return true;
}

IshidaComplex ishida_complex(const Fan& fan, int i, const TorusDivisor& d) {
  check_degree(fan, i);
  if (!is_nef(fan, d)) throw Error("requires nef twist");
  IshidaComplex cx;
  cx.degree = i;
  for (const auto& [support, mult] : weight_supports(fan, d)) {
    Block b = build_block(fan, i, support);
    cx.blocks.push_back({support, mult, b.term_dims, b.differentials});
  }
  return cx;
}

CohomologyVector hodge_twisted_cohomology(const Fan& fan, int i, const TorusDivisor& d) {
  check_degree(fan, i);
  if (d.coeffs.size() != fan.num_rays()) throw Error("divisor length mismatch");
  if (!is_nef(fan, d)) throw Error("requires nef twist");
  CohomologyVector h{std::vector<Integer>(static_cast<std::size_t>(fan.rank() + 1), Integer(0))};
  for (const auto& [support, mult] : weight_supports(fan, d)) {
    Block b = build_block(fan, i, support);
    for (std::size_t j = 0; j < b.cohomology.size(); ++j) h.dims[j] += mult * b.cohomology[j];
  }
  return h;
}

BottReport bott_check(const Fan& fan, const TorusDivisor& d) {
  if (!is_ample(fan, d)) throw Error("bott_check requires an ample divisor");
  BottReport report;
  for (int i = 0; i <= fan.rank(); ++i) {
    CohomologyVector h = i == 0 ? line_bundle_cohomology(fan, d) : hodge_twisted_cohomology(fan, i, d);
    for (std::size_t j = 1; j < h.dims.size(); ++j)
      if (h.dims[j] != 0) report.failures.push_back({i, static_cast<int>(j), h.dims[j]});
    report.by_degree.push_back(std::move(h));
  }
  return report;
}

bool nef_vanishing_check(const Fan& fan, int i, const TorusDivisor& d) {
  check_degree(fan, i);
  if (!is_nef(fan, d)) throw Error("requires nef twist");
  CohomologyVector h = i == 0 ? line_bundle_cohomology(fan, d) : hodge_twisted_cohomology(fan, i, d);
  return h.vanishes_above(i);
}

}  // namespace bott
