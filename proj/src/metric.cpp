#include "qreach/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace qreach {

namespace {

using Mask = std::uint64_t;

constexpr double kTriangleTolerance = 1e-12;
constexpr std::size_t kExhaustiveTriangleLimit = 48;
constexpr std::size_t kSampledTriples = 20000;

Mask bit(std::size_t i) { return Mask{1} << i; }

void check_limit(const FiniteMetricSpace& space, std::size_t limit) {
  if (limit > kExactSearchHardLimit) throw Error("exact search limit cannot exceed 64 points");
  if (space.size() > limit) throw Error("exact search limit exceeded");
}

void check_subset(const FiniteMetricSpace& space, std::span<const FiniteMetricSpace::Point> subset) {
  for (auto p : subset)
    if (p >= space.size()) throw Error("subset element " + std::to_string(p) + " is not in the space");
}

bool triangle_holds(const FiniteMetricSpace& s, std::size_t a, std::size_t b, std::size_t c) {
  const double lhs = s.dist(a, c);
  const double rhs = s.dist(a, b) + s.dist(b, c);
  return lhs <= rhs + kTriangleTolerance * std::max(1.0, rhs);
}

// Branch-and-bound set cover over bitmasks. balls[c] is the set of points
// within eps of center c; by symmetry it is also the set of centers that
// cover point c.
class CoverSearch {
 public:
  explicit CoverSearch(std::vector<Mask> balls) : balls_(std::move(balls)), best_(balls_.size() + 1) {}

  std::size_t solve(Mask all) {
    recurse(all, 0);
    return best_;
  }

 private:
  std::size_t lower_bound(Mask uncovered) const {
    // Points whose candidate-center sets are pairwise disjoint need distinct centers.
    std::size_t independent = 0;
    Mask used = 0;
    for (Mask rest = uncovered; rest; rest &= rest - 1) {
      const auto e = static_cast<std::size_t>(std::countr_zero(rest));
      if ((balls_[e] & used) == 0) {
        ++independent;
        used |= balls_[e];
      }
    }
    int max_gain = 0;
    for (const Mask b : balls_) max_gain = std::max(max_gain, std::popcount(b & uncovered));
    const auto count = static_cast<std::size_t>(std::popcount(uncovered));
    const std::size_t by_size = (count + max_gain - 1) / static_cast<std::size_t>(max_gain);
    return std::max(independent, by_size);
  }

  void recurse(Mask uncovered, std::size_t depth) {
    if (uncovered == 0) {
      best_ = std::min(best_, depth);
      return;
    }
    if (depth + lower_bound(uncovered) >= best_) return;

    // Branch on the uncovered point with the fewest covering centers.
    std::size_t pivot = 0;
    int fewest = 65;
    for (Mask rest = uncovered; rest; rest &= rest - 1) {
      const auto e = static_cast<std::size_t>(std::countr_zero(rest));
      const int c = std::popcount(balls_[e]);
      if (c < fewest) {
        fewest = c;
        pivot = e;
      }
    }

    std::vector<std::pair<Mask, std::size_t>> options;
    for (Mask rest = balls_[pivot]; rest; rest &= rest - 1) {
      const auto c = static_cast<std::size_t>(std::countr_zero(rest));
      options.emplace_back(balls_[c] & uncovered, c);
    }
    // Drop centers whose useful coverage is dominated by another option.
    std::vector<Mask> kept;
    std::sort(options.begin(), options.end(), [](const auto& a, const auto& b) {
      const int pa = std::popcount(a.first), pb = std::popcount(b.first);
      return pa != pb ? pa > pb : a.second < b.second;
    });
    for (const auto& [gain, c] : options) {
      const bool dominated = std::any_of(kept.begin(), kept.end(), [g = gain](Mask k) { return (g & ~k) == 0; });
      if (dominated) continue;
      kept.push_back(gain);
    }
    for (const Mask gain : kept) recurse(uncovered & ~gain, depth + 1);
  }

  std::vector<Mask> balls_;
  std::size_t best_;
};

// Maximum independent set of the conflict graph. Every maximal independent
// set contains the minimum-degree vertex v or one of its neighbours, so the
// search branches over N[v].
class PackingSearch {
 public:
  explicit PackingSearch(std::vector<Mask> conflicts) : conflicts_(std::move(conflicts)) {}

  std::size_t solve(Mask all) {
    recurse(all, 0);
    return best_;
  }

 private:
  std::size_t colour_bound(Mask cand) const {
    // Greedy partition of the candidates into conflict cliques; an
    // independent set takes at most one vertex per clique.
    std::size_t cliques = 0;
    while (cand) {
      const auto v = static_cast<std::size_t>(std::countr_zero(cand));
      Mask clique = bit(v);
      Mask pool = cand & conflicts_[v];
      while (pool) {
        const auto u = static_cast<std::size_t>(std::countr_zero(pool));
        clique |= bit(u);
        pool &= conflicts_[u];
      }
      cand &= ~clique;
      ++cliques;
    }
    return cliques;
  }

  void recurse(Mask cand, std::size_t size) {
    if (cand == 0) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + static_cast<std::size_t>(std::popcount(cand)) <= best_) return;
    if (size + colour_bound(cand) <= best_) return;

    std::size_t pivot = 0;
    int lowest = 65;
    for (Mask rest = cand; rest; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      const int deg = std::popcount(conflicts_[v] & cand);
      if (deg < lowest) {
        lowest = deg;
        pivot = v;
      }
    }
    const Mask branch = (conflicts_[pivot] & cand) | bit(pivot);
    for (Mask rest = branch; rest; rest &= rest - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(rest));
      recurse(cand & ~conflicts_[u] & ~bit(u), size + 1);
    }
  }

  std::vector<Mask> conflicts_;
  std::size_t best_ = 0;
};

Mask full_mask(std::size_t n) { return n == 64 ? ~Mask{0} : bit(n) - 1; }

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> table) : n_(n), table_(std::move(table)) {
  if (table_.size() != n_ * n_) throw Error("distance table must have n*n entries");
  for (std::size_t i = 0; i < n_; ++i) {
    if (dist(i, i) != 0.0) throw Error("metric must vanish on the diagonal");
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = dist(i, j);
      if (!std::isfinite(d) || d < 0.0) throw Error("distances must be finite and non-negative");
      if (d != dist(j, i)) throw Error("metric must be symmetric");
    }
  }
  if (n_ < 3) return;
  if (n_ <= kExhaustiveTriangleLimit) {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t c = 0; c < n_; ++c)
          if (!triangle_holds(*this, a, b, c)) throw Error("triangle inequality violated");
    return;
  }
  Rng rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
  for (std::size_t t = 0; t < kSampledTriples; ++t) {
    if (!triangle_holds(*this, pick(rng), pick(rng), pick(rng))) throw Error("triangle inequality violated");
  }
}

FiniteMetricSpace FiniteMetricSpace::from_oracle(std::size_t n, const Oracle& dist) {
  std::vector<double> table(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) table[i * n + j] = table[j * n + i] = dist(i, j);
  return FiniteMetricSpace(n, std::move(table));
}

NetResult greedy_maximal_packing(const FiniteMetricSpace& space, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (space.empty()) throw Error("empty metric space");
  std::vector<FiniteMetricSpace::Point> order(space.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  NetResult result;
  result.epsilon = epsilon;
  for (const auto p : order) {
    const bool separated = std::all_of(result.selected.begin(), result.selected.end(),
                                       [&](auto q) { return space.dist(p, q) > epsilon; });
    if (separated) result.selected.push_back(p);
  }
  std::sort(result.selected.begin(), result.selected.end());
  result.is_covering = verify_covering(space, result.selected, epsilon);
  result.is_packing = verify_packing(space, result.selected, epsilon);
  return result;
}

bool verify_covering(const FiniteMetricSpace& space, std::span<const FiniteMetricSpace::Point> subset,
                     double epsilon) {
  check_subset(space, subset);
  for (std::size_t p = 0; p < space.size(); ++p) {
    const bool covered = std::any_of(subset.begin(), subset.end(),
                                     [&](auto q) { return space.dist(p, q) <= epsilon + kCoveringSlack; });
    if (!covered) return false;
  }
  return true;
}

bool verify_packing(const FiniteMetricSpace& space, std::span<const FiniteMetricSpace::Point> subset,
                    double epsilon) {
  check_subset(space, subset);
  std::vector<FiniteMetricSpace::Point> distinct(subset.begin(), subset.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i + 1; j < distinct.size(); ++j)
      if (!(space.dist(distinct[i], distinct[j]) > epsilon)) return false;
  return true;
}

std::size_t brute_force_covering_number(const FiniteMetricSpace& space, double epsilon, std::size_t limit) {
  check_limit(space, limit);
  const std::size_t n = space.size();
  if (n == 0) return 0;
  std::vector<Mask> balls(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (space.dist(i, j) <= epsilon + kCoveringSlack) balls[i] |= bit(j);
  return CoverSearch(std::move(balls)).solve(full_mask(n));
}

std::size_t brute_force_packing_number(const FiniteMetricSpace& space, double epsilon, std::size_t limit) {
  check_limit(space, limit);
  const std::size_t n = space.size();
  if (n == 0) return 0;
  std::vector<Mask> conflicts(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !(space.dist(i, j) > epsilon)) conflicts[i] |= bit(j);
  return PackingSearch(std::move(conflicts)).solve(full_mask(n));
}

BallCoveringBounds ball_covering_bounds(double radius, int dimension, double epsilon) {
  if (!(radius > 0.0) || dimension < 1 || !(epsilon > 0.0))
    throw Error("ball_covering_bounds: arguments must be positive");
  const double ratio = radius / epsilon;
  return {std::pow(ratio, dimension), std::pow(1.0 + 2.0 * ratio, dimension)};
}

FiniteMetricSpace cycle_space(std::size_t n) {
  return FiniteMetricSpace::from_oracle(n, [n](std::size_t i, std::size_t j) {
    const std::size_t gap = i > j ? i - j : j - i;
    return static_cast<double>(std::min(gap, n - gap));
  });
}

FiniteMetricSpace max_product(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
  const std::size_t nb = b.size();
  return FiniteMetricSpace::from_oracle(a.size() * nb, [&](std::size_t p, std::size_t q) {
    return std::max(a.dist(p / nb, q / nb), b.dist(p % nb, q % nb));
  });
}

}  // namespace qreach
