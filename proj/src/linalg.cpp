#include "qreach/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace qreach {

namespace {

constexpr Eigen::Index kExactSvdLimit = 64;

void require_finite(const ComplexMatrix& a) {
  if (!a.allFinite()) throw Error("non-finite matrix entries");
}

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw Error("matrix must be square");
}

double power_iteration_norm(const ComplexMatrix& a) {
  // Deterministic start vector; a^dag a is positive semidefinite so the
  // Rayleigh quotient increases monotonically towards sigma_max^2.
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()).normalized();
  double estimate = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - estimate) <= 1e-15 * next) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  return std::sqrt(estimate);
}

ComplexMatrix pade13_exp(const ComplexMatrix& a) {
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const ComplexMatrix x = a / std::ldexp(1.0, squarings);

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix x4 = x2 * x2;
  const ComplexMatrix x6 = x4 * x2;

  const ComplexMatrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 +
                                b[3] * x2 + b[1] * id;
  const ComplexMatrix u = x * u_inner;
  const ComplexMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 +
                          b[2] * x2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

bool is_skew_hermitian(const ComplexMatrix& x) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  return (x + x.adjoint()).cwiseAbs().maxCoeff() <= SkewHermitian::kTolerance * scale;
}

ComplexMatrix skew_exp_by_eig(const ComplexMatrix& x) {
  // X = -iH with H = iX Hermitian.
  const ComplexMatrix h = cplx(0.0, 1.0) * x;
  const ComplexMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hs);
  const Eigen::VectorXcd phases =
      eig.eigenvalues().unaryExpr([](double lam) { return std::polar(1.0, -lam); });
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

double unitarity_defect(const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  return operator_norm(m.adjoint() * m - ComplexMatrix::Identity(n, n));
}

}  // namespace

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  require_square(m_);
  require_finite(m_);
  if (m_.rows() == 0) throw Error("unitary matrix must have dimension >= 1");
  const double defect = unitarity_defect(m_);
  if (!(defect <= tolerance)) {
    throw Error("matrix is not unitary (||U^dag U - 1|| = " + std::to_string(defect) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index n) {
  return UnitaryMatrix(ComplexMatrix::Identity(n, n));
}

SkewHermitian::SkewHermitian(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_);
  require_finite(m_);
  const double defect = operator_norm(m_ + m_.adjoint());
  if (!(defect <= kTolerance)) throw Error("matrix is not skew-Hermitian");
}

SkewHermitian SkewHermitian::zero(Eigen::Index n) { return SkewHermitian(ComplexMatrix::Zero(n, n)); }

double operator_norm(const ComplexMatrix& a) {
  require_finite(a);
  if (a.size() == 0) return 0.0;
  if (std::max(a.rows(), a.cols()) <= kExactSvdLimit) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues()(0);
  }
  return power_iteration_norm(a);
}

double unitary_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(a.adjoint() * b, false);
  double worst = 0.0;
  for (const cplx& lam : eig.eigenvalues()) worst = std::max(worst, std::abs(1.0 - lam));
  return worst;
}

ComplexMatrix matrix_exp(const ComplexMatrix& x) {
  require_square(x);
  require_finite(x);
  if (x.rows() == 0) return x;
  if (is_skew_hermitian(x)) return skew_exp_by_eig(x);
  return pade13_exp(x);
}

UnitaryMatrix matrix_exp(const SkewHermitian& x) {
  return UnitaryMatrix(skew_exp_by_eig(x.matrix()));
}

UnitaryMatrix evolve_hermitian(const ComplexMatrix& h, double t) {
  require_square(h);
  if (!is_hermitian(h)) throw Error("generator is not Hermitian");
  return UnitaryMatrix(skew_exp_by_eig(cplx(0.0, -t) * h));
}

SkewHermitian principal_log(const UnitaryMatrix& u) {
  // A unitary is normal, so its complex Schur form is diagonal.
  Eigen::ComplexSchur<ComplexMatrix> schur(u.matrix());
  const ComplexMatrix& z = schur.matrixU();
  const auto& t = schur.matrixT();
  Eigen::VectorXcd log_diag(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    double phase = std::arg(t(k, k));
    if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
    log_diag(k) = cplx(0.0, phase);
  }
  ComplexMatrix j = z * log_diag.asDiagonal() * z.adjoint();
  return SkewHermitian(0.5 * (j - j.adjoint()));
}

UnitaryMatrix haar_unitary(int n, Rng& rng) {
  if (n < 1) throw Error("haar_unitary: n must be >= 1");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) g(r, c) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const auto& packed = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx rkk = packed(k, k);
    const double mag = std::abs(rkk);
    q.col(k) *= (mag > 0.0 ? rkk / mag : cplx(1.0, 0.0));
  }
  return UnitaryMatrix(std::move(q));
}

UnitaryMatrix haar_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

SkewHermitian random_skew_in_ball(int n, double radius, Rng& rng) {
  if (n < 1) throw Error("random_skew_in_ball: n must be >= 1");
  if (!(radius > 0.0)) throw Error("random_skew_in_ball: radius must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  ComplexMatrix a(n, n);
  ComplexMatrix x;
  double norm = 0.0;
  do {
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r) a(r, c) = cplx(normal(rng), normal(rng));
    x = 0.5 * (a - a.adjoint());
    norm = operator_norm(x);
  } while (norm == 0.0);
  const double u = 1.0 - uniform(rng);  // (0, 1]
  x *= u * radius / norm;
  // Guard the rounding of the last ulp so ||X|| <= R holds as stated.
  const double achieved = operator_norm(x);
  if (achieved > radius) x *= radius / achieved;
  return SkewHermitian(std::move(x));
}

SkewHermitian random_skew_in_ball(int n, double radius, std::uint64_t seed) {
  Rng rng(seed);
  return random_skew_in_ball(n, radius, rng);
}

ComplexMatrix random_hermitian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) a(r, c) = cplx(normal(rng), normal(rng));
  return 0.5 * (a + a.adjoint());
}

bool is_hermitian(const ComplexMatrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return operator_norm(a - a.adjoint()) <= tolerance;
}

Spectrum hermitian_spectrum(const ComplexMatrix& a) {
  require_square(a);
  require_finite(a);
  if (!is_hermitian(a)) throw Error("observable is not Hermitian");
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym, Eigen::EigenvaluesOnly);
  Spectrum s;
  s.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

double spectral_width(const ComplexMatrix& o) { return hermitian_spectrum(o).width(); }

LipschitzTriple check_exp_lipschitz(const SkewHermitian& x, const SkewHermitian& y) {
  if (x.dim() != y.dim()) throw Error("check_exp_lipschitz: dimension mismatch");
  LipschitzTriple t;
  t.radius = std::max(operator_norm(x.matrix()), operator_norm(y.matrix()));
  t.upper = operator_norm(x.matrix() - y.matrix());
  t.mid = operator_norm(matrix_exp(x).matrix() - matrix_exp(y).matrix());
  const double factor = 2.0 - std::exp(t.radius);
  if (factor > 0.0) t.lower = factor * t.upper;
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace pauli {
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

}  // namespace qreach
