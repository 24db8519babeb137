#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qreach/linalg.hpp"

using namespace qreach;

namespace {

// Independent oracle: largest eigenvalue of A^dag A by plain power iteration.
double power_norm(const ComplexMatrix& a) {
  const ComplexMatrix g = a.adjoint() * a;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols()) + Eigen::VectorXcd::LinSpaced(a.cols(), 0.1, 0.7);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const Eigen::VectorXcd w = g * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    lambda = nw / v.norm();
    v = w / nw;
  }
  return std::sqrt(lambda);
}

// Independent oracle: Taylor series with scaling and squaring.
ComplexMatrix taylor_exp(const ComplexMatrix& x) {
  int s = 0;
  double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm /= 2.0;
    ++s;
  }
  const ComplexMatrix y = x / std::pow(2.0, s);
  ComplexMatrix term = ComplexMatrix::Identity(x.rows(), x.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

ComplexMatrix diag2(cplx a, cplx b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("operator norm examples") {
  CHECK(operator_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
  CHECK(operator_norm(diag2(3.0, -4.0)) == doctest::Approx(4.0).epsilon(1e-12));
  ComplexMatrix jordan = ComplexMatrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  CHECK(operator_norm(jordan) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("operator norm rejects non-finite entries") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(operator_norm(m), Error);
}

TEST_CASE("operator norm agrees with power iteration, small and large") {
  Rng rng(3);
  for (int n : {2, 5, 17, 70}) {
    const ComplexMatrix a = random_hermitian(n, rng) + cplx(0, 1) * random_hermitian(n, rng);
    CHECK(operator_norm(a) == doctest::Approx(power_norm(a)).epsilon(1e-9));
  }
}

TEST_CASE("operator norm is unitarily invariant") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = ComplexMatrix::Random(4, 4);
    const ComplexMatrix u = haar_unitary(4, rng).matrix();
    const ComplexMatrix v = haar_unitary(4, rng).matrix();
    CHECK(std::abs(operator_norm(u * a * v) - operator_norm(a)) <= 1e-10);
  }
}

TEST_CASE("matrix exponential examples") {
  CHECK(operator_norm(matrix_exp(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)) == 0.0);
  const ComplexMatrix e = matrix_exp(diag2(cplx(0, std::numbers::pi), cplx(0, -std::numbers::pi)));
  CHECK(operator_norm(e + ComplexMatrix::Identity(2, 2)) <= 1e-12);

  const double theta = std::numbers::pi / 3;
  ComplexMatrix x(2, 2);
  x << 0.0, theta, -theta, 0.0;
  const ComplexMatrix r = matrix_exp(x);
  ComplexMatrix rot(2, 2);
  rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  CHECK(operator_norm(r - rot) <= 1e-12);
  CHECK(operator_norm(r - ComplexMatrix::Identity(2, 2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("matrix exponential matches a Taylor oracle on general and skew inputs") {
  Rng rng(5);
  for (int n : {2, 3, 6}) {
    const ComplexMatrix g = 1.5 * ComplexMatrix::Random(n, n);
    const ComplexMatrix eg = matrix_exp(g);
    CHECK(operator_norm(eg - taylor_exp(g)) <= 1e-12 * operator_norm(eg) * 10);
    const SkewHermitian s = random_skew_in_ball(n, 3.0, rng);
    const UnitaryMatrix es = matrix_exp(s);
    CHECK(operator_norm(es.matrix() - taylor_exp(s.matrix())) <= 1e-11);
  }
}

TEST_CASE("evolve_hermitian is exp(-itH)") {
  const UnitaryMatrix u = evolve_hermitian(pauli::x(), std::numbers::pi / 2);
  CHECK(operator_norm(u.matrix() - cplx(0, -1) * pauli::x()) <= 1e-12);
}

TEST_CASE("wrappers validate their invariants") {
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 0) = 1.1;
  CHECK_THROWS_AS(UnitaryMatrix{bad}, Error);
  CHECK_THROWS_AS(SkewHermitian(pauli::x()), Error);
  CHECK_NOTHROW(SkewHermitian(cplx(0, 1) * pauli::x()));
}

TEST_CASE("Haar sampling") {
  SUBCASE("n = 1 is a phase") {
    const UnitaryMatrix u = haar_unitary(1, 9);
    CHECK(std::abs(std::abs(u.matrix()(0, 0)) - 1.0) <= 1e-14);
  }
  SUBCASE("deterministic per seed") {
    CHECK(operator_norm(haar_unitary(3, 42).matrix() - haar_unitary(3, 42).matrix()) == 0.0);
    CHECK(operator_norm(haar_unitary(3, 42).matrix() - haar_unitary(3, 43).matrix()) > 1e-3);
  }
  SUBCASE("second moment E|U00|^2 = 1/n") {
    Rng rng(2024);
    double acc = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) acc += std::norm(haar_unitary(2, rng).matrix()(0, 0));
    CHECK(std::abs(acc / samples - 0.5) <= 0.02);
  }
}

TEST_CASE("random skew matrices stay in the ball") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const SkewHermitian x = random_skew_in_ball(3, 1.0, rng);
    const double nx = operator_norm(x.matrix());
    CHECK(nx > 0.0);
    CHECK(nx <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(random_skew_in_ball(2, 0.0, std::uint64_t{1}), Error);
}

TEST_CASE("spectral width") {
  CHECK(spectral_width(pauli::z()) == doctest::Approx(1.0));
  Rng rng(6);
  const ComplexMatrix basis = haar_unitary(5, rng).matrix().leftCols(2);
  CHECK(spectral_width(basis * basis.adjoint()) == doctest::Approx(0.5).epsilon(1e-10));

  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix total = ComplexMatrix::Zero(16, 16);
  for (int site = 0; site < 4; ++site) {
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (int s = 0; s < 4; ++s) term = kron(term, s == site ? pauli::z() : id);
    total += term;
  }
  CHECK(spectral_width(total) == doctest::Approx(4.0));

  const ComplexMatrix h = random_hermitian(4, rng);
  CHECK(spectral_width(-2.5 * h) == doctest::Approx(2.5 * spectral_width(h)).epsilon(1e-12));
  CHECK_THROWS_AS(spectral_width(ComplexMatrix::Random(3, 3)), Error);
}

TEST_CASE("principal log inverts exp on Haar samples") {
  Rng rng(8);
  for (int n : {1, 2, 3, 5}) {
    for (int i = 0; i < 50; ++i) {
      const UnitaryMatrix u = haar_unitary(n, rng);
      const SkewHermitian x = principal_log(u);
      CHECK(operator_norm(x.matrix()) <= std::numbers::pi + 1e-12);
      CHECK(operator_norm(matrix_exp(x).matrix() - u.matrix()) <= 1e-8);
    }
  }
  // -1 has its phase folded to +pi.
  const SkewHermitian lm = principal_log(UnitaryMatrix(-ComplexMatrix::Identity(2, 2)));
  CHECK(std::abs(lm.matrix()(0, 0) - cplx(0, std::numbers::pi)) <= 1e-12);
}

TEST_CASE("exp-map Lipschitz triple") {
  Rng rng(12);
  const SkewHermitian x = random_skew_in_ball(3, 0.3, rng);
  const LipschitzTriple same = check_exp_lipschitz(x, x);
  REQUIRE(same.lower);
  CHECK(*same.lower == 0.0);
  CHECK(same.mid <= 1e-15);
  CHECK(same.upper == 0.0);

  CHECK(2.0 - std::exp(0.4) == doctest::Approx(0.5082).epsilon(1e-4));
  CHECK(2.0 - std::exp(0.4) > 0.5);

  for (int i = 0; i < 10000; ++i) {
    const LipschitzTriple t =
        check_exp_lipschitz(random_skew_in_ball(4, 0.4, rng), random_skew_in_ball(4, 0.4, rng));
    REQUIRE(t.lower);
    CHECK(*t.lower <= t.mid + 1e-10);
    CHECK(t.mid <= t.upper + 1e-10);
  }
  const LipschitzTriple far =
      check_exp_lipschitz(random_skew_in_ball(2, 3.0, rng), random_skew_in_ball(2, 3.0, rng));
  if (far.radius >= std::log(2.0)) CHECK_FALSE(far.lower);
}

TEST_CASE("kron and Hermitian spectrum") {
  const ComplexMatrix zz = kron(pauli::z(), pauli::z());
  const Spectrum s = hermitian_spectrum(zz);
  CHECK(s.eigenvalues.size() == 4);
  CHECK(s.min() == doctest::Approx(-1.0));
  CHECK(s.max() == doctest::Approx(1.0));
  CHECK(is_hermitian(zz));
  CHECK_THROWS_AS(hermitian_spectrum(ComplexMatrix::Random(2, 2)), Error);
}
