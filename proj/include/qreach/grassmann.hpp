#pragma once

// Rank-n projectors on C^m, their operator-norm geometry, the Kato unitary
// between nearby subspaces, and exhaustive checks of the product and
// quotient covering inequalities on small instances.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qreach/linalg.hpp"
#include "qreach/metric.hpp"

namespace qreach {

/// An n-dimensional subspace of C^m given by an m x n orthonormal basis.
class Subspace {
 public:
  explicit Subspace(ComplexMatrix basis);

  Eigen::Index ambient_dim() const noexcept { return basis_.rows(); }
  Eigen::Index rank() const noexcept { return basis_.cols(); }
  const ComplexMatrix& basis() const noexcept { return basis_; }

 private:
  ComplexMatrix basis_;
};

/// Orthogonal projector: Hermitian, idempotent, integral trace.
class Projector {
 public:
  explicit Projector(ComplexMatrix p);

  Eigen::Index ambient_dim() const noexcept { return p_.rows(); }
  Eigen::Index rank() const noexcept { return rank_; }
  const ComplexMatrix& matrix() const noexcept { return p_; }

 private:
  ComplexMatrix p_;
  Eigen::Index rank_ = 0;
};

Projector projector_from_subspace(const Subspace& s);

/// Span of the first n columns of a Haar-random unitary.
Subspace random_subspace(int n, int m, Rng& rng);

/// ||P - Q||, equal to the sine of the largest principal angle.
double projector_distance(const Projector& p, const Projector& q);

/// Ascending principal angles in [0, pi/2].
std::vector<double> principal_angles(const Subspace& a, const Subspace& b);

/// V = (1 - R)^{-1/2} (QP + (1 - Q)(1 - P)) with R = (P - Q)^2. Requires
/// ||P - Q|| <= 1/sqrt2; V is unitary and V P V^dag = Q.
UnitaryMatrix kato_unitary(const Projector& p, const Projector& q);

/// Certified sandwich on the quotient distance d' between the ranges:
/// ||P - Q|| / 2 <= d' <= ||1 - V_kato||. `upper` is empty when the Kato
/// precondition fails.
struct QuotientDistanceBounds {
  double lower = 0.0;
  std::optional<double> upper;
};
QuotientDistanceBounds quotient_distance_bounds(const Projector& p, const Projector& q);

/// Covering bounds for rank-n projectors on C^m in the operator norm, as natural logs:
///   lower = -m^2 ln 19 + 2n(m-n) ln(9/(5 eps))   (stated for eps <= 1/71)
///   upper =  m^2 ln 38 + 2n(m-n) ln(3/(4 eps))   (stated for eps <= 1/10)
struct Theorem3Bounds {
  double n = 0;
  double m = 0;
  double epsilon = 0.0;
  double lower_log = 0.0;
  double upper_log = 0.0;
  bool lower_valid = false;
  bool upper_valid = false;
  bool lower_nontrivial = false;
};
/// n and m are taken as reals so that m = d^L can exceed integer range.
Theorem3Bounds theorem3_bounds(double n, double m, double epsilon);

struct ProductCoveringReport {
  double epsilon = 0.0;
  std::size_t size1 = 0, size2 = 0;
  std::size_t cover1_eps = 0, cover2_eps = 0;
  std::size_t cover1_2eps = 0, cover2_2eps = 0;
  std::size_t cover_product = 0;
  std::size_t pack_product_eps = 0, pack_product_2eps = 0;
  bool lower_holds = false;     // N1(2e) N2(2e) <= N(e)
  bool upper_holds = false;     // N(e) <= N1(e) N2(e)
  bool sandwich_holds = false;  // packing(2e) <= N(e) <= packing(e) on the product
  bool holds() const { return lower_holds && upper_holds && sandwich_holds; }
};
/// Exact numbers on the max-metric product (at most 64 points).
ProductCoveringReport product_covering_check(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                                             double epsilon);

struct QuotientCoveringReport {
  std::size_t order = 0, subgroup_order = 0;
  double epsilon = 0.0;
  std::size_t group_2eps = 0, group_half_eps = 0, group_eps = 0;
  std::size_t subgroup_eps = 0;
  std::size_t quotient_eps = 0;
  bool lower_holds = false;  // N(G,2e) <= N(G/H,e) N(H,e)
  bool upper_holds = false;  // N(G/H,e) N(H,e) <= N(G,e/2)
  bool holds() const { return lower_holds && upper_holds; }
};
/// Z_order with the circular metric, H the subgroup of the given order.
QuotientCoveringReport quotient_covering_check(std::size_t order, std::size_t subgroup_order, double epsilon);

/// Cosets of H in Z_order under the induced quotient metric
/// d'([x],[y]) = min_{h in H} d(0, y - x + h).
FiniteMetricSpace cyclic_quotient_space(std::size_t order, std::size_t subgroup_order);

/// Greedy packing of Haar-random rank-n projectors on C^m (m <= 16).
std::size_t empirical_grassmann_packing(int n, int m, double epsilon, std::size_t trials, std::uint64_t seed);

}  // namespace qreach
