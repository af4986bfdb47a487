#include "bott/fan.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace bott {

std::vector<int> mask_indices(ConeMask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

ConeMask mask_of(const std::vector<int>& indices) {
  ConeMask m = 0;
  for (int i : indices) m |= ConeMask(1) << i;
  return m;
}

namespace {

bool mask_order(ConeMask a, ConeMask b) { return mask_indices(a) < mask_indices(b); }

std::string cone_label(ConeMask m) {
  std::ostringstream out;
  out << "{";
  auto idx = mask_indices(m);
  for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i];
  out << "}";
  return out.str();
}

IntMatrix cone_matrix(const std::vector<LatticeVector>& rays, ConeMask m, int rank) {
  auto idx = mask_indices(m);
  IntMatrix a(rank, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j)
    a.col(static_cast<Eigen::Index>(j)) = rays[static_cast<std::size_t>(idx[j])];
  return a;
}

Integer pair(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

FanValidationReport check_fan(int rank, const std::vector<LatticeVector>& rays,
                              const std::vector<ConeMask>& max_cones,
                              const std::map<ConeMask, std::vector<ConeMask>>& walls) {
  FanValidationReport r;
  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    r.violations.push_back(msg);
  };
  bool dummy = true;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (content(rays[i]) != 1) fail(dummy, "ray " + std::to_string(i) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (rays[i] == rays[j]) fail(dummy, "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  ConeMask used = 0;
  for (ConeMask c : max_cones) used |= c;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!(used >> i & 1)) fail(r.complete, "ray " + std::to_string(i) + " lies in no cone");
  if (max_cones.empty()) fail(r.complete, "no maximal cones");
  bool pure = true;
  for (ConeMask c : max_cones) {
    if (mask_size(c) != rank) {
      pure = false;
      fail(r.complete, "cone " + cone_label(c) + " is not full-dimensional");
      continue;
    }
    Integer det = determinant<Integer>(cone_matrix(rays, c, rank));
    if (abs(det) != 1) {
      std::ostringstream msg;
      msg << "cone " << cone_label(c) << " has determinant " << det;
      fail(r.smooth, msg.str());
    }
  }
  if (!pure) return r;
  for (const auto& [wall, owners] : walls) {
    if (owners.size() != 2) {
      fail(r.complete, "wall " + cone_label(wall) + " lies in " + std::to_string(owners.size()) +
                           " maximal cones");
      continue;
    }
    // The two cones must sit on opposite sides of the wall.
    IntMatrix w = cone_matrix(rays, wall, rank);
    int a = mask_indices(owners[0] & ~wall)[0], b = mask_indices(owners[1] & ~wall)[0];
    IntMatrix ma(rank, rank), mb(rank, rank);
    ma << w, rays[static_cast<std::size_t>(a)];
    mb << w, rays[static_cast<std::size_t>(b)];
    Integer da = determinant<Integer>(ma), db = determinant<Integer>(mb);
    if (da == 0 || db == 0 || (da > 0) == (db > 0))
      fail(r.complete, "cones " + cone_label(owners[0]) + " and " + cone_label(owners[1]) + " overlap");
  }
  if (!r.complete || rank == 0) return r;
  // A generic point must lie in the interior of exactly one cone.
  for (long seed = 0; seed < 16; ++seed) {
    RatVector p(rank);
    Integer x = 1;
    for (int i = 0; i < rank; ++i) {
      x = (x * (7919 + 2 * seed)) % 1000003 + 1;
      p(i) = Rational(x - 500001);
    }
    int inside = 0;
    bool boundary = false;
    for (ConeMask c : max_cones) {
      IntMatrix m = cone_matrix(rays, c, rank);
      if (determinant<Integer>(m) == 0) continue;
      RatVector lam = rational_solve(m, p);
      bool nonneg = true, zero = false;
      for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) < 0) nonneg = false;
        if (lam(i) == 0) zero = true;
      }
      if (nonneg && zero) boundary = true;
      if (nonneg && !zero) ++inside;
    }
    if (boundary) continue;
    if (inside != 1) fail(r.complete, "fan covers a generic point " + std::to_string(inside) + " times");
    break;
  }
  return r;
}

}  // namespace

Fan::Fan(int rank, std::vector<LatticeVector> rays, std::vector<std::vector<int>> max_cones,
         std::vector<std::pair<std::string, LatticeVector>> basis_map, std::string id)
    : rank_(rank), rays_(std::move(rays)), basis_map_(std::move(basis_map)), id_(std::move(id)),
      data_(std::make_shared<Data>()) {
  if (rank_ < 0) throw Error("negative rank");
  if (rays_.size() > 64) throw Error("at most 64 rays are supported");
  for (const auto& v : rays_)
    if (v.size() != rank_) throw Error("ray dimension mismatch");
  for (const auto& c : max_cones) {
    for (int i : c)
      if (i < 0 || i >= num_rays()) throw Error("cone index out of range");
    std::set<int> s(c.begin(), c.end());
    if (s.size() != c.size()) throw Error("repeated ray in cone");
    max_cones_.push_back(mask_of(c));
  }
  std::sort(max_cones_.begin(), max_cones_.end(), mask_order);
  max_cones_.erase(std::unique(max_cones_.begin(), max_cones_.end()), max_cones_.end());
  for (const auto& [name, coeffs] : basis_map_)
    if (coeffs.size() != num_rays()) throw Error("basis class " + name + " has wrong length");

  Data& d = *data_;
  std::set<ConeMask> all;
  for (ConeMask c : max_cones_) {
    // enumerate subsets of c
    for (ConeMask s = c;; s = (s - 1) & c) {
      all.insert(s);
      if (s == 0) break;
    }
    if (mask_size(c) == rank_) {
      for (int i : mask_indices(c)) d.walls[c & ~(ConeMask(1) << i)].push_back(c);
      IntMatrix m = cone_matrix(rays_, c, rank_);
      if (abs(determinant<Integer>(m)) == 1) d.dual_bases[c] = unimodular_inverse(m);
    }
  }
  d.cones_by_dim.assign(static_cast<std::size_t>(rank_ + 1), {});
  for (ConeMask s : all)
    if (mask_size(s) <= rank_) d.cones_by_dim[static_cast<std::size_t>(mask_size(s))].push_back(s);
  for (auto& v : d.cones_by_dim) std::sort(v.begin(), v.end(), mask_order);

  FanValidationReport report = check_fan(rank_, rays_, max_cones_, d.walls);
  d.valid = report.ok();
  if (!d.valid) {
    d.invalid_reason = report.violations.empty() ? "invalid fan" : report.violations.front();
    return;
  }
  for (const auto& [wall, owners] : d.walls) {
    WallCurve w;
    w.wall = wall;
    w.left = mask_indices(owners[0] & ~wall)[0];
    w.right = mask_indices(owners[1] & ~wall)[0];
    const IntMatrix& inv = d.dual_bases.at(owners[0]);
    LatticeVector x = inv * ray(w.right);
    auto idx = mask_indices(owners[0]);
    w.degrees = LatticeVector::Zero(num_rays());
    w.degrees(w.left) = 1;
    w.degrees(w.right) = 1;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (idx[k] != w.left) w.degrees(idx[k]) = -x(static_cast<Eigen::Index>(k));
    d.wall_curves.push_back(std::move(w));
  }
  for (const auto& byDim : d.cones_by_dim)
    for (ConeMask tau : byDim) {
      ConeFace f;
      f.tau = tau;
      ConeMask sigma = first_max_cone_containing(tau);
      const IntMatrix& inv = d.dual_bases.at(sigma);
      auto idx = mask_indices(sigma);
      std::vector<Eigen::Index> cols;
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (!(tau >> idx[k] & 1)) {
          cols.push_back(static_cast<Eigen::Index>(k));
          f.dual_rays.push_back(idx[k]);
        }
      f.basis = IntMatrix(rank_, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j)
        f.basis.col(static_cast<Eigen::Index>(j)) = inv.row(cols[j]).transpose();
      d.faces.emplace(tau, std::move(f));
    }
}

bool Fan::is_cone(ConeMask m) const {
  for (ConeMask c : max_cones_)
    if ((m & ~c) == 0) return true;
  return false;
}

const std::vector<ConeMask>& Fan::cones(int dim) const {
  static const std::vector<ConeMask> none;
  if (dim < 0 || dim > rank_) return none;
  return data_->cones_by_dim[static_cast<std::size_t>(dim)];
}

void Fan::require_smooth_complete() const {
  if (!data_->valid) throw Error("fan is not smooth and complete: " + data_->invalid_reason);
}

const std::vector<WallCurve>& Fan::wall_curves() const {
  require_smooth_complete();
  return data_->wall_curves;
}

ConeMask Fan::first_max_cone_containing(ConeMask tau) const {
  for (ConeMask c : max_cones_)
    if ((tau & ~c) == 0) return c;
  throw Error("not a cone of the fan: " + cone_label(tau));
}

const IntMatrix& Fan::dual_basis(ConeMask max_cone) const {
  auto it = data_->dual_bases.find(max_cone);
  if (it == data_->dual_bases.end()) throw Error("not a smooth maximal cone: " + cone_label(max_cone));
  return it->second;
}

const ConeFace& Fan::face_lattice(ConeMask tau) const {
  require_smooth_complete();
  auto it = data_->faces.find(tau);
  if (it == data_->faces.end()) throw Error("not a cone of the fan: " + cone_label(tau));
  return it->second;
}

const PicardLattice& Fan::picard() const {
  require_smooth_complete();
  std::call_once(data_->pic_once, [this] {
    const int n = num_rays(), k = n - rank_;
    auto pic = std::make_unique<PicardLattice>();
    pic->representatives = IntMatrix::Zero(n, k);
    if (basis_map_.empty()) {
      auto idx = mask_indices(~max_cones_.front() & ((n == 64) ? ~ConeMask(0) : ((ConeMask(1) << n) - 1)));
      for (std::size_t j = 0; j < idx.size(); ++j) {
        pic->names.push_back("D" + std::to_string(idx[j]));
        pic->representatives(idx[j], static_cast<Eigen::Index>(j)) = 1;
      }
    } else {
      if (static_cast<int>(basis_map_.size()) != k) {
        data_->picard_error = "basis_map has " + std::to_string(basis_map_.size()) +
                              " classes but Pic has rank " + std::to_string(k);
        return;
      }
      for (std::size_t j = 0; j < basis_map_.size(); ++j) {
        pic->names.push_back(basis_map_[j].first);
        pic->representatives.col(static_cast<Eigen::Index>(j)) = basis_map_[j].second;
      }
    }
    IntMatrix s(n, n);
    s.leftCols(k) = pic->representatives;
    for (int i = 0; i < n; ++i) s.block(i, k, 1, rank_) = ray(i).transpose();
    try {
      IntMatrix inv = unimodular_inverse(s);
      pic->class_map = inv.topRows(k);
    } catch (const Error&) {
      data_->picard_error = "basis_map is not a basis of Pic";
      return;
    }
    data_->picard = std::move(pic);
  });
  if (!data_->picard) throw Error(data_->picard_error);
  return *data_->picard;
}

const std::vector<std::vector<int>>& Fan::subcomplex_cohomology() const {
  require_smooth_complete();
  std::call_once(data_->h_once, [this] { data_->subcomplex = detail::subcomplex_cohomology(*this); });
  return data_->subcomplex;
}

LatticeVector PicardLattice::class_of(const TorusDivisor& d) const {
  if (d.coeffs.size() != class_map.cols()) throw Error("divisor length mismatch");
  return class_map * d.coeffs;
}

TorusDivisor PicardLattice::divisor_of(const LatticeVector& cls) const {
  if (cls.size() != rank()) throw Error("class length mismatch");
  return {LatticeVector(representatives * cls)};
}

int PicardLattice::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw Error("unknown basis class " + name);
}

FanValidationReport validate_fan(const Fan& fan) {
  return check_fan(fan.rank(), fan.rays(), fan.max_cones(), fan.walls());
}

Fan projective_space(int n, const std::string& name) {
  std::vector<LatticeVector> rays;
  for (int i = 0; i < n; ++i) {
    LatticeVector e = LatticeVector::Zero(n);
    e(i) = 1;
    rays.push_back(e);
  }
  rays.push_back(LatticeVector::Constant(n, Integer(-1)));
  std::vector<std::vector<int>> cones;
  for (int skip = n; skip >= 0; --skip) {
    std::vector<int> c;
    for (int i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  LatticeVector h = LatticeVector::Zero(n + 1);
  h(n) = 1;
  return Fan(n, rays, cones, {{name, h}}, "P" + std::to_string(n));
}

Fan product(const Fan& a, const Fan& b) {
  const int n = a.rank() + b.rank(), na = a.num_rays(), nb = b.num_rays();
  std::vector<LatticeVector> rays;
  for (const auto& v : a.rays()) {
    LatticeVector w = LatticeVector::Zero(n);
    w.head(a.rank()) = v;
    rays.push_back(w);
  }
  for (const auto& v : b.rays()) {
    LatticeVector w = LatticeVector::Zero(n);
    w.tail(b.rank()) = v;
    rays.push_back(w);
  }
  std::vector<std::vector<int>> cones;
  for (ConeMask ca : a.max_cones())
    for (ConeMask cb : b.max_cones()) {
      std::vector<int> c = mask_indices(ca);
      for (int j : mask_indices(cb)) c.push_back(j + na);
      cones.push_back(c);
    }
  std::vector<std::pair<std::string, LatticeVector>> basis;
  for (const auto& [name, coeffs] : a.basis_map()) {
    LatticeVector w = LatticeVector::Zero(na + nb);
    w.head(na) = coeffs;
    basis.emplace_back(name, w);
  }
  for (const auto& [name, coeffs] : b.basis_map()) {
    LatticeVector w = LatticeVector::Zero(na + nb);
    w.tail(nb) = coeffs;
    basis.emplace_back(name, w);
  }
  return Fan(n, rays, cones, basis, a.id() + "x" + b.id());
}

TorusDivisor anticanonical_divisor(const Fan& fan) { return {LatticeVector::Ones(fan.num_rays())}; }

TorusDivisor canonical_divisor(const Fan& fan) { return -anticanonical_divisor(fan); }

namespace {

void check_length(const Fan& fan, const TorusDivisor& d) {
  if (d.coeffs.size() != fan.num_rays()) throw Error("divisor length mismatch");
}

}  // namespace

bool is_nef(const Fan& fan, const TorusDivisor& d) {
  check_length(fan, d);
  for (const auto& w : fan.wall_curves())
    if (pair(w.degrees, d.coeffs) < 0) return false;
  return true;
}

bool is_ample(const Fan& fan, const TorusDivisor& d) {
  check_length(fan, d);
  for (const auto& w : fan.wall_curves())
    if (pair(w.degrees, d.coeffs) <= 0) return false;
  return true;
}

Integer intersection_product(const Fan& fan, const std::vector<TorusDivisor>& divisors) {
  fan.require_smooth_complete();
  const int n = fan.rank();
  if (static_cast<int>(divisors.size()) != n) throw Error("need one divisor per dimension");
  for (const auto& d : divisors) check_length(fan, d);

  std::map<std::vector<int>, Integer> memo;
  std::function<Integer(std::vector<int>)> monomial = [&](std::vector<int> rays) -> Integer {
    std::sort(rays.begin(), rays.end());
    auto it = memo.find(rays);
    if (it != memo.end()) return it->second;
    ConeMask m = mask_of(rays);
    Integer value = 0;
    if (fan.is_cone(m)) {
      auto rep = std::adjacent_find(rays.begin(), rays.end());
      if (rep == rays.end()) {
        value = 1;
      } else {
        // Replace one copy of D_rho by a linearly equivalent divisor avoiding
        // every ray of a max cone that contains the support.
        const int rho = *rep;
        ConeMask sigma = fan.first_max_cone_containing(m);
        auto idx = mask_indices(sigma);
        auto pos = std::find(idx.begin(), idx.end(), rho) - idx.begin();
        LatticeVector u = fan.dual_basis(sigma).row(pos).transpose();
        for (int s = 0; s < fan.num_rays(); ++s) {
          if (sigma >> s & 1) continue;
          Integer c = pair(u, fan.ray(s));
          if (c == 0) continue;
          std::vector<int> next = rays;
          next[static_cast<std::size_t>(rep - rays.begin())] = s;
          value -= c * monomial(next);
        }
      }
    }
    memo.emplace(rays, value);
    return value;
  };

  Integer total = 0;
  std::vector<int> current;
  std::function<void(int, Integer)> expand = [&](int k, Integer coeff) {
    if (k == n) {
      total += coeff * monomial(current);
      return;
    }
    const auto& c = divisors[static_cast<std::size_t>(k)].coeffs;
    for (int r = 0; r < fan.num_rays(); ++r) {
      if (c(r) == 0) continue;
      current.push_back(r);
      expand(k + 1, coeff * c(r));
      current.pop_back();
    }
  };
  expand(0, Integer(1));
  return total;
}

Integer intersection_number(const Fan& fan, const TorusDivisor& a, const TorusDivisor& b,
                            const TorusDivisor& c) {
  if (fan.rank() != 3) throw Error("only 3-folds supported");
  return intersection_product(fan, {a, b, c});
}

LatticePolytope divisor_polytope(const Fan& fan, const TorusDivisor& d) {
  check_length(fan, d);
  std::vector<Inequality> ineqs;
  for (int r = 0; r < fan.num_rays(); ++r) ineqs.push_back({fan.ray(r), Integer(-d.coeffs(r))});
  return LatticePolytope(fan.rank(), std::move(ineqs));
}

LatticePolytope face_for_cone(const Fan& fan, const TorusDivisor& d, ConeMask tau) {
  if (!is_nef(fan, d)) throw Error("face correspondence requires nef");
  if (!fan.is_cone(tau)) throw Error("not a cone of the fan: " + cone_label(tau));
  std::vector<Inequality> ineqs = divisor_polytope(fan, d).inequalities();
  for (int r : mask_indices(tau)) ineqs.push_back({LatticeVector(-fan.ray(r)), Integer(d.coeffs(r))});
  return LatticePolytope(fan.rank(), std::move(ineqs));
}

Cone nef_cone(const Fan& fan) {
  const PicardLattice& pic = fan.picard();
  std::vector<LatticeVector> curves;
  for (const auto& w : fan.wall_curves()) curves.push_back(pic.representatives.transpose() * w.degrees);
  sort_unique(curves);
  return dual_cone(Cone(pic.rank(), curves));
}

std::vector<LatticeVector> nef_monoid_generators(const Fan& fan) {
  return hilbert_basis(nef_cone(fan)).elements;
}

}  // namespace bott
