#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "qreach/circuit.hpp"
#include "qreach/limits.hpp"
#include "qreach/trotter.hpp"

using namespace qreach;
using big = boost::multiprecision::cpp_dec_float_50;

namespace {

ComplexMatrix total_z(int sites) {
  const int dim = 1 << sites;
  ComplexMatrix o = ComplexMatrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    int ones = 0;
    for (int b = 0; b < sites; ++b) ones += (s >> b) & 1;
    o(s, s) = static_cast<double>(sites - 2 * ones);
  }
  return o;
}

// 50-digit oracles for the logs of the bounds.
big grassmann_lower_big(int d, int sites, double eps) {
  const big m = boost::multiprecision::pow(big(d), sites);
  const big n = boost::multiprecision::floor(m / 2);
  return -m * m * boost::multiprecision::log(big(19)) +
         2 * n * (m - n) * boost::multiprecision::log(big(9) / (big(5) * big(eps)));
}

big circuit_ln_big(int d, int k, int sites, std::int64_t gates, double eps) {
  const big ng(gates);
  return big(k) * ng * boost::multiprecision::log(big(sites)) +
         boost::multiprecision::pow(big(d), 2 * k) * ng * boost::multiprecision::log(big(14) * ng / big(eps));
}

double rel(const big& exact, double approx) {
  return static_cast<double>(boost::multiprecision::abs((big(approx) - exact) / exact));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("spectrum profiles") {
  const SpectrumProfile p = profile_from_spectrum({1.0, -1.0, 1.0 + 1e-12, 3.0});
  CHECK(p.eigenvalues.size() == 3);
  CHECK(p.degeneracies == std::vector<std::int64_t>{1, 2, 1});
  CHECK(p.width() == doctest::Approx(2.0));
  CHECK(p.dimension() == 4);

  const SpectrumProfile z4 = degeneracy_profile_extensive_z(4);
  CHECK(z4.eigenvalues == std::vector<double>{-4, -2, 0, 2, 4});
  CHECK(z4.degeneracies == std::vector<std::int64_t>{1, 4, 6, 4, 1});
  CHECK(degeneracy_profile_extensive_z(1).degeneracies == std::vector<std::int64_t>{1, 1});
  CHECK(degeneracy_profile_extensive_z(30).dimension() == (std::int64_t{1} << 30));

  // Explicit diagonalization agrees for small L.
  for (int sites = 1; sites <= 6; ++sites) {
    const Spectrum s = hermitian_spectrum(total_z(sites));
    CHECK(profile_from_spectrum(s.eigenvalues) == degeneracy_profile_extensive_z(sites));
  }

  // Central degeneracy over the next one approaches 1 from above; ratio of
  // C(L, L/2) to C(L, L/2 - 1) is (L/2 + 1)/(L/2).
  for (int sites = 10; sites <= 28; sites += 2) {
    const SpectrumProfile q = degeneracy_profile_extensive_z(sites);
    const std::size_t mid = q.eigenvalues.size() / 2;
    const double ratio = static_cast<double>(q.degeneracies[mid]) / static_cast<double>(q.degeneracies[mid - 1]);
    CHECK(ratio == doctest::Approx((sites / 2.0 + 1.0) / (sites / 2.0)));
  }
  CHECK_THROWS_AS(degeneracy_profile_extensive_z(31), Error);
}

TEST_CASE("coarse-graining spectra") {
  const SpectrumProfile z4 = degeneracy_profile_extensive_z(4);
  const CoarseGraining cg = coarse_grain_spectrum(z4, -0.9, 1.1, 0.5);
  CHECK(cg.shift_bound == 0.25);
  CHECK(cg.max_shift <= cg.shift_bound);
  CHECK(cg.profile.dimension() == 16);

  const CoarseGraining merge = coarse_grain_spectrum(z4, -0.1, 2.1, 0.5);
  CHECK(merge.degeneracy_1 == 6);
  CHECK(merge.degeneracy_2 == 4);
  CHECK(merge.max_shift == doctest::Approx(0.1));
  CHECK(merge.profile.eigenvalues == std::vector<double>{-4, -2, -0.1, 2.1, 4});

  const CoarseGraining none = coarse_grain_spectrum(z4, 0.5, 1.5, 0.6);
  CHECK(none.profile == z4);
  CHECK(none.max_shift == 0.0);

  CHECK_THROWS_AS(coarse_grain_spectrum(z4, 0.0, 0.4, 0.5), Error);
  CHECK_THROWS_AS(coarse_grain_spectrum(z4, 1.0, 0.0, 0.1), Error);
}

TEST_CASE("coarse-graining explicit observables") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix o = random_hermitian(6, rng);
    const Spectrum s = hermitian_spectrum(o);
    const double eps = 0.1 + 0.4 * (trial % 5) / 4.0;
    const double w1 = s.eigenvalues[1] + 0.3 * eps;
    const double w2 = w1 + eps * 1.5;
    const ComplexMatrix op = coarse_grain_observable(o, w1, w2, eps);
    CHECK(operator_norm(o - op) <= eps / 2.0 + 1e-12);
    CHECK(is_hermitian(op));
    // Same eigenbasis, so o and op commute.
    CHECK(operator_norm(o * op - op * o) <= 1e-10);
    const CoarseGraining cg = coarse_grain_spectrum(profile_from_spectrum(s.eigenvalues), w1, w2, eps);
    const SpectrumProfile direct = profile_from_spectrum(hermitian_spectrum(op).eigenvalues);
    CHECK(direct.dimension() == cg.profile.dimension());
    CHECK(direct.eigenvalues.size() == cg.profile.eigenvalues.size());
  }
}

TEST_CASE("crossover rows") {
  const CrossoverReport r = crossover_analysis(2, 2, 1e-3, 4, 12, Resource::both);
  REQUIRE(r.rows.size() == 9);
  const double c = -std::log(19.0) + 0.5 * std::log(1800.0);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const CrossoverRow& row = r.rows[i];
    CHECK(row.m == std::pow(2.0, row.L));
    CHECK(row.grassmann_lower_log == doctest::Approx(c * row.m * row.m).epsilon(1e-12));
    REQUIRE(row.min_gates);
    REQUIRE(row.min_time);
    // Minimality: the bound reaches the target at N_G but not at N_G - 1.
    CHECK(theorem1_bound(2, 2, row.L, *row.min_gates, 1e-3).ln_value >= row.grassmann_lower_log);
    if (*row.min_gates > 1)
      CHECK(theorem1_bound(2, 2, row.L, *row.min_gates - 1, 1e-3).ln_value < row.grassmann_lower_log);
    const double at = theorem2_bound(row.L, 2, 2, row.L - 1, 3, 1.0, *row.min_time, 1e-3).ln_value;
    CHECK(at >= row.grassmann_lower_log);
    CHECK(theorem2_bound(row.L, 2, 2, row.L - 1, 3, 1.0, *row.min_time * (1 - 1e-9), 1e-3).ln_value <
          row.grassmann_lower_log);
    if (i > 0) {
      CHECK(*row.min_gates > *r.rows[i - 1].min_gates);
      CHECK(*row.min_time > *r.rows[i - 1].min_time);
    }
  }
  REQUIRE(r.gate_fit);
  REQUIRE(r.time_fit);
  // Ratios climb towards 4 per site from below.
  for (std::size_t i = 0; i < r.gate_fit->ratios.size(); ++i) {
    const double q = r.gate_fit->ratios[i];
    CHECK(q > 2.0);
    CHECK(q <= 4.5);
    if (r.rows[i + 1].L >= 9) CHECK(q >= 3.5);
  }
  CHECK(r.gate_fit->slope > 1.0);
  CHECK(r.time_fit->r_squared >= 0.99);

  const CrossoverReport gates_only = crossover_analysis(2, 2, 1e-3, 6, 6, Resource::circuit);
  CHECK_FALSE(gates_only.gate_fit);
  CHECK_FALSE(gates_only.rows[0].min_time);

  CHECK_THROWS_WITH_AS(crossover_analysis(2, 2, 0.01, 4, 8, Resource::circuit), doctest::Contains("9/1805"), Error);
  CHECK_THROWS_AS(crossover_analysis(2, 2, 1e-3, 8, 4, Resource::circuit), Error);
  CHECK_THROWS_AS(crossover_analysis(2, 2, 1e-3, 4, 31, Resource::circuit), Error);
  CHECK_THROWS_AS(parse_resource("gates"), Error);
}

TEST_CASE("crossover values against 50-digit arithmetic") {
  const CrossoverReport r = crossover_analysis(2, 2, 1e-3, 2, 30, Resource::circuit);
  int checked = 0;
  for (const auto& row : r.rows) {
    if (row.L % 3 != 0) continue;
    CHECK(rel(grassmann_lower_big(2, row.L, 1e-3), row.grassmann_lower_log) <= 1e-12);
    CHECK(rel(circuit_ln_big(2, 2, row.L, *row.min_gates, 1e-3),
              theorem1_bound(2, 2, row.L, *row.min_gates, 1e-3).ln_value) <= 1e-12);
    ++checked;
  }
  CHECK(checked == 10);
  // Odd m: n = floor(m / 2).
  const CrossoverReport q = crossover_analysis(3, 1, 1e-3, 3, 7, Resource::circuit);
  for (const auto& row : q.rows) CHECK(rel(grassmann_lower_big(3, row.L, 1e-3), row.grassmann_lower_log) <= 1e-12);
}

TEST_CASE("report output") {
  const CrossoverReport r = crossover_analysis(2, 2, 1e-3, 5, 9, Resource::both);
  CHECK(to_json(r) == to_json(r));
  CHECK(crossover_from_json(to_json(r)) == r);
  CHECK(to_json(crossover_from_json(to_json(r))) == to_json(r));

  const std::string csv = to_csv(r);
  CHECK(csv.rfind("L,m,grassmann_lower_ln,min_gates,min_time\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "qreach_report_a.json";
  const auto b = dir / "qreach_report_b.json";
  emit_report(r, "json", a.string());
  emit_report(r, "json", b.string());
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == to_json(r));
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  CHECK_THROWS_AS(emit_report(r, "xml", ""), Error);
  CHECK_THROWS_AS(crossover_from_json("{\"d\": 2}"), Error);
}
