#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qreach/unitary_nets.hpp"

using namespace qreach;

namespace {

UnitaryMatrix phase(double theta) {
  ComplexMatrix m(1, 1);
  m(0, 0) = std::polar(1.0, theta);
  return UnitaryMatrix(m);
}

// Oracle: bisection for the arc whose chord is eps, then check an equally
// spaced configuration on a fine grid.
bool equally_spaced_covers(std::size_t count, double eps) {
  for (int i = 0; i < 20000; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 20000.0;
    double best = 4.0;
    for (std::size_t c = 0; c < count; ++c) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(count);
      best = std::min(best, std::abs(std::polar(1.0, t) - std::polar(1.0, a)));
    }
    if (best > eps) return false;
  }
  return true;
}

std::size_t circle_cover_oracle(double eps) {
  double lo = 0.0, hi = std::numbers::pi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (2.0 * std::sin(mid / 2.0) <= eps ? lo : hi) = mid;
  }
  return static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / (2.0 * lo)));
}

}  // namespace

TEST_CASE("covering number bounds on U(n)") {
  const LemmaOneBounds b2 = lemma1_bounds(2, 0.1);
  REQUIRE(b2.valid);
  CHECK(std::exp(*b2.lower_log) == doctest::Approx(3164.0625).epsilon(1e-10));
  CHECK(std::exp(*b2.upper_log) == doctest::Approx(2.401e7).epsilon(1e-10));
  const LemmaOneBounds b1 = lemma1_bounds(1, 0.1);
  CHECK(std::exp(*b1.lower_log) == doctest::Approx(7.5));
  CHECK(std::exp(*b1.upper_log) == doctest::Approx(70.0));
  const LemmaOneBounds out = lemma1_bounds(2, 0.2);
  CHECK_FALSE(out.valid);
  CHECK_FALSE(out.lower_log);
  CHECK_THROWS_AS(lemma1_bounds(2, 0.0), Error);
}

TEST_CASE("circle covering numbers") {
  CHECK(u1_covering_number(0.1) == 32);
  CHECK(u1_covering_number(2.0) == 1);
  for (double eps : {0.01, 0.02, 0.05, 0.07, 0.1, 0.3, 0.9, 1.5}) {
    const std::size_t n = u1_covering_number(eps);
    CHECK(n == circle_cover_oracle(eps));
    if (eps >= 0.05) {
      CHECK(equally_spaced_covers(n, eps));
      if (n > 1) CHECK_FALSE(equally_spaced_covers(n - 1, eps));
    }
    if (eps <= 0.1) {
      const LemmaOneBounds b = lemma1_bounds(1, eps);
      CHECK(std::log(static_cast<double>(n)) >= *b.lower_log);
      CHECK(std::log(static_cast<double>(n)) <= *b.upper_log);
    }
  }
}

TEST_CASE("Lie algebra basis is orthonormal and skew") {
  for (int n : {1, 2, 3}) {
    const auto basis = lie_algebra_basis(n);
    REQUIRE(basis.size() == static_cast<std::size_t>(n * n));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(operator_norm(basis[i] + basis[i].adjoint()) <= 1e-15);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const double ip = (basis[i].adjoint() * basis[j]).trace().real();
        CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("U(1) net covers a fine phase grid") {
  const UnitaryNet net = build_unitary_net(1, 0.3);
  REQUIRE(net.construction());
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const UnitaryMatrix u = phase(2.0 * std::numbers::pi * i / 20000.0);
    worst = std::max(worst, net.nearest(u.matrix()).distance);
  }
  CHECK(worst <= 0.3);
}

TEST_CASE("U(2) net passes a Haar covering check") {
  const UnitaryNet net = build_unitary_net(2, 0.5);
  const CoveringCheck c = empirical_covering_check(net, 2000, 17);
  CHECK(c.pass);
  CHECK(c.max_gap <= 0.5);
  CHECK(net.size() >= empirical_packing_lower_bound(2, 1.0, 3000, 5));
}

TEST_CASE("nearest agrees with a linear scan") {
  const UnitaryNet net = build_unitary_net(2, 0.8);
  Rng rng(31);
  for (int q = 0; q < 40; ++q) {
    const ComplexMatrix u = haar_unitary(2, rng).matrix();
    double best = 1e9;
    for (const auto& e : net.elements()) best = std::min(best, operator_norm(e.matrix() - u));
    CHECK(net.nearest(u).distance == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("covering check examples") {
  const UnitaryNet single(1, 2.0, {UnitaryMatrix::identity(1)});
  CHECK(empirical_covering_check(single, 500, 1).pass);
  const UnitaryNet pm(1, std::numbers::sqrt2, {phase(0.0), phase(std::numbers::pi)});
  const CoveringCheck c = empirical_covering_check(pm, 5000, 2);
  CHECK(c.pass);
  CHECK(c.max_gap <= std::numbers::sqrt2);
  CHECK(pm.nearest(phase(std::numbers::pi / 2).matrix()).distance == doctest::Approx(std::numbers::sqrt2));
  const UnitaryNet tiny(2, 0.1, {UnitaryMatrix::identity(2)});
  CHECK_FALSE(empirical_covering_check(tiny, 100, 3).pass);
}

TEST_CASE("net construction limits") {
  CHECK_THROWS_WITH_AS(build_unitary_net(2, 0.1, 1000), doctest::Contains("net too large"), Error);
  CHECK_THROWS_AS(build_unitary_net(4, 0.5), Error);
  CHECK_THROWS_AS(build_unitary_net(2, -0.5), Error);
  CHECK_THROWS_AS(UnitaryNet(2, 0.5, {}), Error);
}

TEST_CASE("empirical packing") {
  CHECK(empirical_packing_lower_bound(2, 2.0, 200, 1) == 1);
  CHECK(empirical_packing_lower_bound(1, 1.0, 2000, 4) >= 3);
  // Packing at 2 eps is below the covering upper bound at eps.
  const LemmaOneBounds b = lemma1_bounds(1, 0.1);
  CHECK(std::log(static_cast<double>(empirical_packing_lower_bound(1, 0.2, 5000, 8))) <= *b.upper_log);
}

TEST_CASE("binary net round trip") {
  const UnitaryNet net = build_unitary_net(1, 0.5);
  std::stringstream buf;
  write_net(net, buf);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 24 + net.size() * 16);
  // Header is little-endian: n = 1.
  CHECK(static_cast<unsigned char>(bytes[0]) == 1);
  const UnitaryNet back = read_net(buf);
  CHECK(back.n() == net.n());
  CHECK(back.epsilon() == net.epsilon());
  REQUIRE(back.size() == net.size());
  for (std::size_t i = 0; i < net.size(); ++i)
    CHECK(operator_norm(back.elements()[i].matrix() - net.elements()[i].matrix()) == 0.0);

  std::stringstream truncated(bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(read_net(truncated), Error);
}
