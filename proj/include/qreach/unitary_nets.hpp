#pragma once

// Constructive operator-norm coverings of U(n).
//
// A cubic lattice is laid over the n^2 real coordinates of u(n) (orthonormal
// basis under the Frobenius inner product). A point X of the ball B_pi(u(n))
// lies within Frobenius distance spacing * n / 2 of its nearest lattice point
// G, and ||e^X - e^G|| <= ||X - G|| <= ||X - G||_F, so spacing = 2 eps / n
// gives an eps-covering of U(n) = exp(B_pi). Lattice points with
// ||G|| > pi + eps can never be nearest to a point of the ball and are dropped.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qreach/linalg.hpp"

namespace qreach {

struct NetConstruction {
  double spacing = 0.0;        // lattice spacing in Lie-algebra coordinates
  double source_radius = 0.0;  // radius of the covered ball in u(n)
  std::uint64_t projected_count = 0;
};

class UnitaryNet {
 public:
  UnitaryNet(int n, double epsilon, std::vector<UnitaryMatrix> elements,
             std::optional<NetConstruction> construction = std::nullopt);

  int n() const noexcept { return n_; }
  double epsilon() const noexcept { return epsilon_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<UnitaryMatrix>& elements() const noexcept { return elements_; }
  const std::optional<NetConstruction>& construction() const noexcept { return construction_; }

  struct Nearest {
    std::size_t index = 0;
    double distance = 0.0;
  };
  /// Element closest to `u` in operator norm. Uses the Frobenius sandwich
  /// ||A||_F / sqrt(n) <= ||A|| <= ||A||_F to prune exact evaluations.
  Nearest nearest(const ComplexMatrix& u) const;

 private:
  int n_;
  double epsilon_;
  std::vector<UnitaryMatrix> elements_;
  std::optional<NetConstruction> construction_;
  std::vector<cplx> flat_;  // conj of entries, row-major per element
};

/// Covering bounds (3/(4 eps))^{n^2} <= N(U(n), eps) <= (7/eps)^{n^2},
/// stated for 0 < eps <= 1/10. Values are natural logs.
struct LemmaOneBounds {
  int n = 0;
  double epsilon = 0.0;
  std::optional<double> lower_log;
  std::optional<double> upper_log;
  bool valid = false;
};
LemmaOneBounds lemma1_bounds(int n, double epsilon);

/// Orthonormal basis of u(n) under Re tr(A^dag B): i E_kk, then
/// (E_kl - E_lk)/sqrt2 and i(E_kl + E_lk)/sqrt2 for k < l.
std::vector<ComplexMatrix> lie_algebra_basis(int n);

inline constexpr std::uint64_t kDefaultMaxNetElements = 5'000'000;

/// Lattice net for n <= 3. Throws "net too large" with the projected count
/// when it would exceed max_elements.
UnitaryNet build_unitary_net(int n, double epsilon, std::uint64_t max_elements = kDefaultMaxNetElements);

struct CoveringCheck {
  double max_gap = 0.0;
  bool pass = false;
};
/// Monte Carlo certificate: max over Haar samples of the nearest-element distance.
CoveringCheck empirical_covering_check(const UnitaryNet& net, std::size_t samples, std::uint64_t seed);

/// Greedy eps-packing of Haar samples; a lower bound on the packing number.
std::size_t empirical_packing_lower_bound(int n, double epsilon, std::size_t trials, std::uint64_t seed);

/// Exact covering number of U(1) under |e^{ia} - e^{ib}|.
std::size_t u1_covering_number(double epsilon);

/// Binary net file: uint64 n, float64 epsilon, uint64 count, then each element
/// row-major as (re, im) float64 pairs. All little-endian.
void write_net(const UnitaryNet& net, std::ostream& out);
UnitaryNet read_net(std::istream& in);
void save_net(const UnitaryNet& net, const std::string& path);
UnitaryNet load_net(const std::string& path);

}  // namespace qreach
