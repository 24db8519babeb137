#pragma once

// Dense complex linear algebra used by every other module: operator norms,
// exponentials, Haar sampling and the exp-map Lipschitz checks on u(n).

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qreach/core.hpp"

namespace qreach {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// A matrix with ||U^dag U - 1|| <= tolerance, checked on construction.
class UnitaryMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit UnitaryMatrix(ComplexMatrix m, double tolerance = kTolerance);
  static UnitaryMatrix identity(Eigen::Index n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// An element of the Lie algebra u(n): ||X + X^dag|| <= 1e-12.
class SkewHermitian {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit SkewHermitian(ComplexMatrix m);
  static SkewHermitian zero(Eigen::Index n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Sorted (ascending) eigenvalues of a Hermitian matrix.
struct Spectrum {
  std::vector<double> eigenvalues;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  /// Half the distance between the extreme eigenvalues.
  double width() const { return 0.5 * (max() - min()); }
};

/// Largest singular value. Full SVD up to dimension 64, power iteration above.
double operator_norm(const ComplexMatrix& a);

/// Operator norm of a - b for unitary a, b, via the eigenphases of a^dag b.
double unitary_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(X). Skew-Hermitian inputs go through an eigendecomposition so the
/// result is unitary to working precision; anything else uses Pade(13)
/// scaling and squaring.
ComplexMatrix matrix_exp(const ComplexMatrix& x);
UnitaryMatrix matrix_exp(const SkewHermitian& x);

/// exp(-i t H) for Hermitian H.
UnitaryMatrix evolve_hermitian(const ComplexMatrix& h, double t);

/// Principal logarithm with eigenphases folded into (-pi, pi].
SkewHermitian principal_log(const UnitaryMatrix& u);

UnitaryMatrix haar_unitary(int n, Rng& rng);
UnitaryMatrix haar_unitary(int n, std::uint64_t seed);

/// Gaussian direction, rescaled to norm u * radius with u uniform in (0, 1].
SkewHermitian random_skew_in_ball(int n, double radius, Rng& rng);
SkewHermitian random_skew_in_ball(int n, double radius, std::uint64_t seed);

/// GUE-like random Hermitian matrix, unnormalised.
ComplexMatrix random_hermitian(int n, Rng& rng);

bool is_hermitian(const ComplexMatrix& a, double tolerance = 1e-10);
Spectrum hermitian_spectrum(const ComplexMatrix& a);

/// w(O) = (omega_max - omega_min) / 2. Throws for non-Hermitian input.
double spectral_width(const ComplexMatrix& o);

/// The three sides of (2 - e^r)||X - Y|| <= ||e^X - e^Y|| <= ||X - Y||
/// with r = max(||X||, ||Y||). `lower` is empty when 2 - e^r <= 0.
struct LipschitzTriple {
  std::optional<double> lower;
  double mid = 0.0;
  double upper = 0.0;
  double radius = 0.0;
};
LipschitzTriple check_exp_lipschitz(const SkewHermitian& x, const SkewHermitian& y);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace qreach
