#pragma once

#include "bott/lattice.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace bott {

// Set of ray indices; fans carry at most 64 rays.
using ConeMask = std::uint64_t;

std::vector<int> mask_indices(ConeMask m);
ConeMask mask_of(const std::vector<int>& indices);
inline int mask_size(ConeMask m) { return __builtin_popcountll(m); }

struct TorusDivisor {
  LatticeVector coeffs;

  TorusDivisor operator+(const TorusDivisor& o) const { return {LatticeVector(coeffs + o.coeffs)}; }
  TorusDivisor operator-(const TorusDivisor& o) const { return {LatticeVector(coeffs - o.coeffs)}; }
  TorusDivisor operator-() const { return {LatticeVector(-coeffs)}; }
  friend TorusDivisor operator*(const Integer& k, const TorusDivisor& d) { return {LatticeVector(k * d.coeffs)}; }
  bool operator==(const TorusDivisor& o) const { return coeffs == o.coeffs; }
};

// Pic(X) with a chosen basis. Columns of `representatives` are torus-invariant
// divisors for the basis classes; `class_map` sends ray coefficients to classes.
struct PicardLattice {
  std::vector<std::string> names;
  IntMatrix representatives;
  IntMatrix class_map;

  int rank() const { return static_cast<int>(names.size()); }
  LatticeVector class_of(const TorusDivisor& d) const;
  TorusDivisor divisor_of(const LatticeVector& cls) const;
  int index_of(const std::string& name) const;
};

// Torus-invariant curve V(wall) between two maximal cones.
struct WallCurve {
  ConeMask wall = 0;
  int left = -1, right = -1;  // the rays completing the wall to a max cone
  LatticeVector degrees;      // D_rho . C for every ray
};

// Lattice M(tau) = M cap tau^perp with a dual pairing: columns of `basis`
// are u_j, and <u_j, v_{dual_rays[k]}> = delta_jk.
struct ConeFace {
  ConeMask tau = 0;
  IntMatrix basis;
  std::vector<int> dual_rays;
};

struct FanValidationReport {
  bool smooth = true;
  bool complete = true;
  std::vector<std::string> violations;
  bool ok() const { return smooth && complete && violations.empty(); }
};

class Fan;

namespace detail {
// Reduced cohomology dims of the full subcomplex on every ray subset, indexed
// by mask; entry k holds dim H~^{k-1}. Defined with the cohomology code.
std::vector<std::vector<int>> subcomplex_cohomology(const Fan& fan);
}  // namespace detail

class Fan {
 public:
  Fan(int rank, std::vector<LatticeVector> rays, std::vector<std::vector<int>> max_cones,
      std::vector<std::pair<std::string, LatticeVector>> basis_map = {}, std::string id = {});

  int rank() const { return rank_; }
  int num_rays() const { return static_cast<int>(rays_.size()); }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(int i) const { return rays_[static_cast<std::size_t>(i)]; }
  const std::vector<ConeMask>& max_cones() const { return max_cones_; }
  const std::string& id() const { return id_; }
  const std::vector<std::pair<std::string, LatticeVector>>& basis_map() const { return basis_map_; }

  bool is_cone(ConeMask m) const;
  // All cones of the given dimension, ordered by their sorted index lists.
  const std::vector<ConeMask>& cones(int dim) const;
  // Walls and the max cones containing them.
  const std::map<ConeMask, std::vector<ConeMask>>& walls() const { return data_->walls; }

  // The following require a smooth complete fan.
  const std::vector<WallCurve>& wall_curves() const;
  const PicardLattice& picard() const;
  const ConeFace& face_lattice(ConeMask tau) const;
  // Dual basis of a max cone: row i pairs to 1 with the i-th ray of the cone.
  const IntMatrix& dual_basis(ConeMask max_cone) const;
  ConeMask first_max_cone_containing(ConeMask tau) const;
  const std::vector<std::vector<int>>& subcomplex_cohomology() const;
  void require_smooth_complete() const;

 private:
  struct Data {
    std::vector<std::vector<ConeMask>> cones_by_dim;
    std::map<ConeMask, std::vector<ConeMask>> walls;
    std::map<ConeMask, IntMatrix> dual_bases;
    bool valid = false;
    std::string invalid_reason;
    std::vector<WallCurve> wall_curves;
    std::map<ConeMask, ConeFace> faces;
    std::once_flag pic_once;
    std::unique_ptr<PicardLattice> picard;
    std::string picard_error;
    std::once_flag h_once;
    std::vector<std::vector<int>> subcomplex;
  };

  int rank_;
  std::vector<LatticeVector> rays_;
  std::vector<ConeMask> max_cones_;
  std::vector<std::pair<std::string, LatticeVector>> basis_map_;
  std::string id_;
  std::shared_ptr<Data> data_;
};

FanValidationReport validate_fan(const Fan& fan);

// P^n with hyperplane class `name`; product fan with concatenated bases.
Fan projective_space(int n, const std::string& name = "H");
Fan product(const Fan& a, const Fan& b);

TorusDivisor anticanonical_divisor(const Fan& fan);
TorusDivisor canonical_divisor(const Fan& fan);

bool is_nef(const Fan& fan, const TorusDivisor& d);
bool is_ample(const Fan& fan, const TorusDivisor& d);

// Degree of a product of rank-many divisors.
Integer intersection_product(const Fan& fan, const std::vector<TorusDivisor>& divisors);
// Triple intersection on a 3-dimensional fan.
Integer intersection_number(const Fan& fan, const TorusDivisor& a, const TorusDivisor& b,
                            const TorusDivisor& c);

// P_D = {m : <m, v_rho> >= -a_rho}.
LatticePolytope divisor_polytope(const Fan& fan, const TorusDivisor& d);
// Face of P_D attached to tau; D must be nef.
LatticePolytope face_for_cone(const Fan& fan, const TorusDivisor& d, ConeMask tau);

// Nef cone and its Hilbert basis in Picard coordinates.
Cone nef_cone(const Fan& fan);
std::vector<LatticeVector> nef_monoid_generators(const Fan& fan);

}  // namespace bott
