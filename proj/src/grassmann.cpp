#include "qreach/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qreach {

namespace {

constexpr double kOrthonormalTolerance = 1e-10;
constexpr double kIdempotentTolerance = 1e-9;
constexpr double kRankTolerance = 1e-6;
constexpr double kKatoFloor = 1e-8;
constexpr int kMaxPackingAmbient = 16;

void require_compatible(const Projector& p, const Projector& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw Error("projector dimension mismatch");
  if (p.rank() != q.rank()) throw Error("projector rank mismatch");
}

std::size_t circular(std::size_t a, std::size_t b, std::size_t order) {
  const std::size_t gap = a > b ? a - b : b - a;
  return std::min(gap, order - gap);
}

}  // namespace

Subspace::Subspace(ComplexMatrix basis) : basis_(std::move(basis)) {
  const auto m = basis_.rows();
  const auto n = basis_.cols();
  if (n < 1 || n > m) throw Error("subspace rank must satisfy 1 <= n <= m");
  const double defect = operator_norm(basis_.adjoint() * basis_ - ComplexMatrix::Identity(n, n));
  if (!(defect <= kOrthonormalTolerance)) throw Error("subspace basis is not orthonormal");
}

Projector::Projector(ComplexMatrix p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) throw Error("projector must be a non-empty square matrix");
  if (!is_hermitian(p_, 1e-10)) throw Error("projector is not Hermitian");
  if (!(operator_norm(p_ * p_ - p_) <= kIdempotentTolerance)) throw Error("projector is not idempotent");
  const double trace = p_.trace().real();
  const double rounded = std::round(trace);
  if (std::abs(trace - rounded) > kRankTolerance) throw Error("projector trace is not an integer");
  rank_ = static_cast<Eigen::Index>(rounded);
}

Projector projector_from_subspace(const Subspace& s) {
  return Projector(s.basis() * s.basis().adjoint());
}

Subspace random_subspace(int n, int m, Rng& rng) {
  if (n < 1 || n > m) throw Error("random_subspace: need 1 <= n <= m");
  const UnitaryMatrix u = haar_unitary(m, rng);
  return Subspace(u.matrix().leftCols(n));
}

double projector_distance(const Projector& p, const Projector& q) {
  require_compatible(p, q);
  return operator_norm(p.matrix() - q.matrix());
}

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank())
    throw Error("principal_angles: dimension mismatch");
  Eigen::JacobiSVD<ComplexMatrix> svd(a.basis().adjoint() * b.basis());
  std::vector<double> angles;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    angles.push_back(std::acos(std::clamp(svd.singularValues()(k), 0.0, 1.0)));
  std::sort(angles.begin(), angles.end());
  return angles;
}

UnitaryMatrix kato_unitary(const Projector& p, const Projector& q) {
  require_compatible(p, q);
  const auto m = p.ambient_dim();
  const ComplexMatrix diff = p.matrix() - q.matrix();
  if (operator_norm(diff) > 1.0 / std::numbers::sqrt2) throw Error("Kato precondition violated");

  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  const ComplexMatrix r = diff * diff;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (r + r.adjoint()));
  const Eigen::VectorXd gaps = (1.0 - eig.eigenvalues().array()).matrix();
  if (gaps.minCoeff() < kKatoFloor) throw Error("Kato construction: 1 - R is numerically singular");
  const Eigen::VectorXcd inv_sqrt = gaps.unaryExpr([](double g) { return 1.0 / std::sqrt(g); }).cast<cplx>();
  const ComplexMatrix scale = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();

  const ComplexMatrix v_prime = q.matrix() * p.matrix() + (id - q.matrix()) * (id - p.matrix());
  return UnitaryMatrix(scale * v_prime);
}

QuotientDistanceBounds quotient_distance_bounds(const Projector& p, const Projector& q) {
  QuotientDistanceBounds b;
  const double dist = projector_distance(p, q);
  b.lower = 0.5 * dist;
  if (dist <= 1.0 / std::numbers::sqrt2) {
    const UnitaryMatrix v = kato_unitary(p, q);
    const auto m = p.ambient_dim();
    b.upper = operator_norm(ComplexMatrix::Identity(m, m) - v.matrix());
  }
  return b;
}

Theorem3Bounds theorem3_bounds(double n, double m, double epsilon) {
  if (!(n >= 1.0) || !(n < m)) throw Error("theorem3_bounds: need 1 <= n < m");
  if (!(epsilon > 0.0)) throw Error("theorem3_bounds: epsilon must be positive");
  Theorem3Bounds b;
  b.n = n;
  b.m = m;
  b.epsilon = epsilon;
  const double m2 = m * m;
  const double dof = 2.0 * n * (m - n);
  b.lower_log = -m2 * std::log(19.0) + dof * std::log(9.0 / (5.0 * epsilon));
  b.upper_log = m2 * std::log(38.0) + dof * std::log(3.0 / (4.0 * epsilon));
  b.lower_valid = epsilon <= 1.0 / 71.0;
  b.upper_valid = epsilon <= 0.1;
  b.lower_nontrivial = b.lower_log > 0.0;
  return b;
}

ProductCoveringReport product_covering_check(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                                             double epsilon) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (a.size() * b.size() > kExactSearchHardLimit) throw Error("exact search limit exceeded");
  const auto limit = kExactSearchHardLimit;
  ProductCoveringReport r;
  r.epsilon = epsilon;
  r.size1 = a.size();
  r.size2 = b.size();
  r.cover1_eps = brute_force_covering_number(a, epsilon, limit);
  r.cover2_eps = brute_force_covering_number(b, epsilon, limit);
  r.cover1_2eps = brute_force_covering_number(a, 2.0 * epsilon, limit);
  r.cover2_2eps = brute_force_covering_number(b, 2.0 * epsilon, limit);
  const FiniteMetricSpace prod = max_product(a, b);
  r.cover_product = brute_force_covering_number(prod, epsilon, limit);
  r.pack_product_eps = brute_force_packing_number(prod, epsilon, limit);
  r.pack_product_2eps = brute_force_packing_number(prod, 2.0 * epsilon, limit);
  r.lower_holds = r.cover1_2eps * r.cover2_2eps <= r.cover_product;
  r.upper_holds = r.cover_product <= r.cover1_eps * r.cover2_eps;
  r.sandwich_holds = r.pack_product_2eps <= r.cover_product && r.cover_product <= r.pack_product_eps;
  return r;
}

FiniteMetricSpace cyclic_quotient_space(std::size_t order, std::size_t subgroup_order) {
  if (order < 1 || subgroup_order < 1 || order % subgroup_order != 0)
    throw Error("subgroup order must divide the group order");
  const std::size_t step = order / subgroup_order;  // H = {0, step, 2 step, ...}
  return FiniteMetricSpace::from_oracle(step, [=](std::size_t x, std::size_t y) {
    std::size_t best = order;
    for (std::size_t k = 0; k < subgroup_order; ++k) {
      const std::size_t z = (y + order - x + k * step) % order;  // z + x lies in [y]
      best = std::min(best, circular(0, z, order));
    }
    return static_cast<double>(best);
  });
}

QuotientCoveringReport quotient_covering_check(std::size_t order, std::size_t subgroup_order, double epsilon) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (order < 1 || subgroup_order < 1 || order % subgroup_order != 0)
    throw Error("subgroup order must divide the group order");
  if (order > kExactSearchHardLimit) throw Error("exact search limit exceeded");
  const auto limit = kExactSearchHardLimit;
  const std::size_t step = order / subgroup_order;

  const FiniteMetricSpace group = cycle_space(order);
  const FiniteMetricSpace subgroup = FiniteMetricSpace::from_oracle(
      subgroup_order, [=](std::size_t i, std::size_t j) { return static_cast<double>(circular(i * step, j * step, order)); });
  const FiniteMetricSpace quotient = cyclic_quotient_space(order, subgroup_order);

  QuotientCoveringReport r;
  r.order = order;
  r.subgroup_order = subgroup_order;
  r.epsilon = epsilon;
  r.group_2eps = brute_force_covering_number(group, 2.0 * epsilon, limit);
  r.group_half_eps = brute_force_covering_number(group, 0.5 * epsilon, limit);
  r.group_eps = brute_force_covering_number(group, epsilon, limit);
  r.subgroup_eps = brute_force_covering_number(subgroup, epsilon, limit);
  r.quotient_eps = brute_force_covering_number(quotient, epsilon, limit);
  r.lower_holds = r.group_2eps <= r.quotient_eps * r.subgroup_eps;
  r.upper_holds = r.quotient_eps * r.subgroup_eps <= r.group_half_eps;
  return r;
}

std::size_t empirical_grassmann_packing(int n, int m, double epsilon, std::size_t trials, std::uint64_t seed) {
  if (m > kMaxPackingAmbient) throw Error("empirical_grassmann_packing: m must be <= 16");
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  Rng rng(seed);
  std::vector<ComplexMatrix> accepted;
  for (std::size_t t = 0; t < trials; ++t) {
    const Subspace s = random_subspace(n, m, rng);
    ComplexMatrix p = s.basis() * s.basis().adjoint();
    const bool separated = std::all_of(accepted.begin(), accepted.end(),
                                       [&](const ComplexMatrix& a) { return operator_norm(a - p) > epsilon; });
    if (separated) accepted.push_back(std::move(p));
  }
  return accepted.size();
}

}  // namespace qreach
