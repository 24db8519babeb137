#pragma once

// Finite metric spaces, epsilon-coverings and epsilon-packings.
//
// Coverings use closed balls (d <= eps, with 1e-12 slack for rounding);
// packings use the strict inequality d > eps with no slack.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qreach/core.hpp"

namespace qreach {

/// A finite point set with a cached symmetric distance table. Points are
/// identified by their index 0..size()-1.
class FiniteMetricSpace {
 public:
  using Point = std::size_t;
  using Oracle = std::function<double(Point, Point)>;

  /// The empty space.
  FiniteMetricSpace() = default;

  /// Row-major n x n distance table. Validates zero diagonal, symmetry,
  /// non-negativity and the triangle inequality (exhaustively for small n,
  /// on a seeded sample of triples otherwise).
  FiniteMetricSpace(std::size_t n, std::vector<double> table);

  static FiniteMetricSpace from_oracle(std::size_t n, const Oracle& dist);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }
  double dist(Point a, Point b) const { return table_[a * n_ + b]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> table_;
};

struct NetResult {
  std::vector<FiniteMetricSpace::Point> selected;  // ascending
  double epsilon = 0.0;
  bool is_covering = false;
  bool is_packing = false;
};

inline constexpr double kCoveringSlack = 1e-12;
inline constexpr std::size_t kExactSearchLimit = 15;
/// Bitmask representation caps every exact search at 64 points.
inline constexpr std::size_t kExactSearchHardLimit = 64;

/// Greedy maximal eps-packing over a seeded shuffle of the points. A maximal
/// packing is also a covering, so both certificate flags come back true.
NetResult greedy_maximal_packing(const FiniteMetricSpace& space, double epsilon, std::uint64_t seed);

bool verify_covering(const FiniteMetricSpace& space, std::span<const FiniteMetricSpace::Point> subset,
                     double epsilon);
bool verify_packing(const FiniteMetricSpace& space, std::span<const FiniteMetricSpace::Point> subset,
                    double epsilon);

/// Exact minimal covering cardinality (branch-and-bound set cover).
std::size_t brute_force_covering_number(const FiniteMetricSpace& space, double epsilon,
                                        std::size_t limit = kExactSearchLimit);

/// Exact maximal packing cardinality (maximum independent set of the
/// "distance <= eps" conflict graph).
std::size_t brute_force_packing_number(const FiniteMetricSpace& space, double epsilon,
                                       std::size_t limit = kExactSearchLimit);

/// Volume bounds (R/eps)^D <= N(B_R, eps) <= (1 + 2R/eps)^D for a Euclidean ball.
struct BallCoveringBounds {
  double lower = 0.0;
  double upper = 0.0;
};
BallCoveringBounds ball_covering_bounds(double radius, int dimension, double epsilon);

/// Cycle graph C_n with d(i, j) = min(|i - j|, n - |i - j|).
FiniteMetricSpace cycle_space(std::size_t n);

/// Direct product under the max metric; point (i, j) has index i * |b| + j.
FiniteMetricSpace max_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

}  // namespace qreach
