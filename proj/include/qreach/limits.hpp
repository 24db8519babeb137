#pragma once

// Spectrum coarse-graining and the crossover between reachable-set upper
// bounds (circuits, time evolution) and the Grassmannian packing lower bound.
// Everything stays in natural-log domain.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreach/linalg.hpp"

namespace qreach {

struct SpectrumProfile {
  std::vector<double> eigenvalues;        // ascending, distinct
  std::vector<std::int64_t> degeneracies;  // positive, same length

  /// (max - min) / 2
  double width() const;
  /// Sum of degeneracies.
  std::int64_t dimension() const;
  bool operator==(const SpectrumProfile&) const = default;
};

/// Groups eigenvalues that agree within `merge_tol`.
SpectrumProfile profile_from_spectrum(std::vector<double> eigenvalues, double merge_tol = 1e-9);

struct CoarseGraining {
  SpectrumProfile profile;
  double shift_bound = 0.0;   // eps / 2
  double max_shift = 0.0;     // actual largest eigenvalue move
  std::int64_t degeneracy_1 = 0;
  std::int64_t degeneracy_2 = 0;
};

/// Moves every eigenvalue within eps/2 of omega_1 (omega_2) onto omega_1
/// (omega_2). Requires omega_2 - omega_1 > eps.
CoarseGraining coarse_grain_spectrum(const SpectrumProfile& profile, double omega_1, double omega_2, double epsilon);

/// The same replacement on an explicit Hermitian matrix: O' = V diag(w') V^dag.
ComplexMatrix coarse_grain_observable(const ComplexMatrix& o, double omega_1, double omega_2, double epsilon);

/// Spectrum of sum_i sigma_z^(i) on L qubits: L - 2j with multiplicity C(L, j).
SpectrumProfile degeneracy_profile_extensive_z(int sites);

enum class Resource { circuit, time, both };

struct CrossoverRow {
  int L = 0;
  double m = 0.0;
  double grassmann_lower_log = 0.0;
  std::optional<std::int64_t> min_gates;
  std::optional<double> min_time;
  bool operator==(const CrossoverRow&) const = default;
};

struct TrendFit {
  std::vector<double> ratios;  // value(L+1) / value(L)
  double slope = 0.0;          // of ln(value) against L
  double intercept = 0.0;
  double r_squared = 0.0;
  bool operator==(const TrendFit&) const = default;
};

struct CrossoverReport {
  int d = 2;
  int k = 2;
  double epsilon = 1e-3;
  Resource resource = Resource::circuit;
  std::string family;
  std::vector<std::string> notes;
  std::vector<CrossoverRow> rows;
  std::optional<TrendFit> gate_fit;
  std::optional<TrendFit> time_fit;
  bool operator==(const CrossoverReport&) const = default;
};

inline constexpr double kDefaultCrossoverEpsilon = 1e-3;

/// For each L, the smallest N_G (and/or T) whose reachable-set upper bound
/// reaches the Grassmannian lower bound at n = m/2. The time family is the
/// nearest-neighbour chain with K = L - 1, z = 3, |h| = 1.
CrossoverReport crossover_analysis(int d, int k, double epsilon, int lmin, int lmax, Resource resource);

std::string resource_name(Resource r);
Resource parse_resource(const std::string& s);

std::string to_json(const CrossoverReport& r);
std::string to_csv(const CrossoverReport& r);
CrossoverReport crossover_from_json(const std::string& text);

/// format is "json" or "csv"; writes to stdout when path is empty.
void emit_report(const CrossoverReport& r, const std::string& format, const std::string& path);

}  // namespace qreach
