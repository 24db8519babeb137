#pragma once

// Seeded randomized checks of the certified inequalities. Each report counts
// violations and keeps the worst instance seen.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreach/grassmann.hpp"
#include "qreach/metric.hpp"
#include "qreach/trotter.hpp"

namespace qreach {

/// Random finite metric space on n points: Euclidean points in the plane or
/// the shortest-path metric of a random weighted graph, chosen by the rng.
FiniteMetricSpace random_metric_space(std::size_t n, Rng& rng);

inline constexpr double kLipschitzSlack = 1e-10;
inline constexpr double kLowerBoundRadius = 0.4;

struct LipschitzReport {
  int n = 0;
  double radius = 0.0;
  std::size_t trials = 0;
  std::size_t upper_violations = 0;
  std::size_t lower_violations = 0;
  std::size_t lower_checked = 0;
  double max_upper_ratio = 0.0;  // max ||e^X - e^Y|| / ||X - Y||
  double min_lower_ratio = 0.0;  // min ||e^X - e^Y|| / ((2 - e^r)||X - Y||) over checked pairs
  LipschitzTriple worst;
  bool pass() const { return upper_violations == 0 && lower_violations == 0; }
};

/// Pairs X, Y drawn uniformly by norm from the ball of the given radius in
/// u(n). The lower side is checked only for pairs with max norm <= 2/5.
LipschitzReport verify_lipschitz(int n, double radius, std::size_t trials, std::uint64_t seed);

inline constexpr double kKatoUnitarityTol = 1e-10;
inline constexpr double kKatoConjugationTol = 1e-8;
inline constexpr double kKatoDistanceSlack = 1e-9;

struct KatoReport {
  int n = 0;
  int m = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double max_unitarity = 0.0;
  double max_conjugation = 0.0;
  double max_distance_ratio = 0.0;  // ||1 - V|| / ||P - Q||
  bool pass() const { return failures == 0; }
};

/// Projector pairs with ||P - Q|| <= 1/sqrt2: P from a Haar subspace, Q its
/// image under exp of a random skew matrix, resampled until in range.
KatoReport verify_kato(int n, int m, std::size_t trials, std::uint64_t seed);

struct SandwichReport {
  std::size_t spaces = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_failure;
  bool pass() const { return failures == 0; }
};

/// packing(2 eps) <= covering(eps) <= packing(eps) by exhaustive search, and
/// the greedy packing is a certified eps-net, on random spaces of <= max_points.
SandwichReport verify_sandwich(std::size_t spaces, std::size_t max_points, int eps_per_space, std::uint64_t seed);

struct LemmaReport {
  std::string which;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> lines;
  bool pass() const { return failures == 0; }
};

/// Product of cycles C_a x C_b (a, b <= 8) under the max metric.
LemmaReport verify_product_lemma();
/// Z_8/Z_2, Z_12/Z_3, Z_12/Z_4.
LemmaReport verify_quotient_lemma();

struct TrotterBatchReport {
  std::size_t instances = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // measured / bound
  std::vector<double> slopes;
  bool pass() const { return violations == 0; }
};

inline constexpr int kTrotterStepCounts[] = {4, 8, 16, 32, 64};

/// Random qubit chains (2 <= L <= 5, K <= 5, cosine envelopes, T <= 2); each
/// instance is certified at every step count in kTrotterStepCounts and the
/// log-log slope of error against N_t is recorded.
TrotterBatchReport verify_trotter_batch(std::size_t instances, std::uint64_t seed);

/// Least-squares slope of ln(error) against ln(N_t).
double trotter_convergence_slope(const TimeDependentHamiltonian& h, double horizon, const std::vector<int>& steps);

}  // namespace qreach
