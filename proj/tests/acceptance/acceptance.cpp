// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qreach/circuit.hpp"
#include "qreach/grassmann.hpp"
#include "qreach/limits.hpp"
#include "qreach/metric.hpp"
#include "qreach/trotter.hpp"
#include "qreach/unitary_nets.hpp"
#include "qreach/verify.hpp"

using namespace qreach;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome trotter_soundness() {
  const TrotterBatchReport r = verify_trotter_batch(60, 20240601);
  double worst_slope = -1.0;
  bool slopes_ok = !r.slopes.empty();
  std::size_t outside = 0;
  for (double s : r.slopes) {
    if (std::abs(s + 1.0) > std::abs(worst_slope + 1.0)) worst_slope = s;
    if (std::abs(s + 1.0) > 0.15) {
      slopes_ok = false;
      ++outside;
    }
  }
  std::vector<double> sorted = r.slopes;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
  return {r.pass() && slopes_ok,
          fmt("%zu instances, %zu violations, max measured/bound %.3g; %zu slopes, %zu outside -1 +- 0.15, "
              "worst %.4f, median %.4f",
              r.instances, r.violations, r.max_ratio, r.slopes.size(), outside, worst_slope, median)};
}

Outcome exp_lipschitz() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 100;
  for (int n : {2, 3, 4, 6}) {
    for (double radius : {std::numbers::pi, kLowerBoundRadius}) {
      const LipschitzReport r = verify_lipschitz(n, radius, 10000, seed++);
      ok = ok && r.pass();
      if (radius <= kLowerBoundRadius) ok = ok && r.lower_checked == r.trials;
      detail += fmt("n=%d r=%.2f up %zu/low %zu; ", n, radius, r.upper_violations, r.lower_violations);
    }
  }
  return {ok, detail};
}

Outcome kato() {
  bool ok = true;
  std::string detail;
  const std::pair<int, int> shapes[] = {{1, 2}, {2, 4}, {3, 8}};
  std::uint64_t seed = 200;
  for (const auto& [n, m] : shapes) {
    const KatoReport r = verify_kato(n, m, 1000, seed++);
    ok = ok && r.pass() && r.trials == 1000;
    detail += fmt("(%d,%d) fail %zu unit %.1e conj %.1e ratio %.3f; ", n, m, r.failures, r.max_unitarity,
                  r.max_conjugation, r.max_distance_ratio);
  }
  return {ok, detail};
}

Outcome sandwich() {
  const SandwichReport r = verify_sandwich(200, 12, 5, 300);
  return {r.pass() && r.spaces == 200, fmt("%zu spaces, %zu checks, %zu failures", r.spaces, r.checks, r.failures)};
}

Outcome unitary_sanity() {
  bool ok = true;
  std::string detail;
  for (double eps : {0.02, 0.05, 0.1}) {
    const std::size_t c = u1_covering_number(eps);
    const bool in = static_cast<double>(c) >= 3.0 / (4.0 * eps) && static_cast<double>(c) <= 7.0 / eps;
    ok = ok && in;
    detail += fmt("N(%.2f)=%zu in [%.1f, %.1f]; ", eps, c, 3.0 / (4.0 * eps), 7.0 / eps);
  }
  const UnitaryNet net = build_unitary_net(2, 0.5);
  const CoveringCheck cc = empirical_covering_check(net, 10000, 400);
  ok = ok && cc.pass && cc.max_gap <= 0.5;
  detail += fmt("U(2) net |N|=%zu, 1e4 samples, max_gap %.4f", net.size(), cc.max_gap);
  return {ok, detail};
}

// k = 1 gates use certified U(2) lattice nets. For k = 2 the net is a set of
// Haar samples on U(4) and each gate is placed within eps of one of them.
Outcome discretization() {
  const UnitaryNet fine = build_unitary_net(2, 0.3);
  const UnitaryNet coarse = build_unitary_net(2, 0.5);
  Rng rng(500);
  std::vector<UnitaryMatrix> samples;
  for (int i = 0; i < 256; ++i) samples.push_back(haar_unitary(4, rng));
  const double pair_eps = 0.25;
  const UnitaryNet pair_net(4, pair_eps, samples);

  std::size_t violations = 0;
  double worst_dev = 0.0, worst_conj = 0.0;
  std::uniform_int_distribution<int> sites(2, 4), gates(1, 8), pick(0, 255);
  for (int trial = 0; trial < 100; ++trial) {
    const int L = sites(rng);
    const int ng = gates(rng);
    const int k = trial % 2 == 0 ? 1 : 2;
    const QuditRegister reg(L, 2);
    Circuit c = random_circuit(reg, static_cast<std::size_t>(ng), k, rng);
    const UnitaryNet* net = &pair_net;
    if (k == 1) {
      net = trial % 4 == 0 ? &fine : &coarse;
    } else {
      Circuit placed(reg);
      for (const auto& g : c.gates()) {
        const ComplexMatrix near = samples[pick(rng)].matrix() * matrix_exp(random_skew_in_ball(4, pair_eps, rng)).matrix();
        placed.add(Gate(g.support(), UnitaryMatrix(near), 2));
      }
      c = std::move(placed);
    }
    const Discretization d = discretize_circuit(c, *net);
    const ComplexMatrix u = circuit_unitary(c).matrix();
    const ComplexMatrix v = circuit_unitary(d.circuit).matrix();
    const double dev = operator_norm(u - v);
    const ComplexMatrix o = random_hermitian(1 << L, rng);
    const double conj = operator_norm(u.adjoint() * o * u - v.adjoint() * o * v);
    const double conj_bound = 2.0 * d.gate_error_bound * spectral_width(o);
    worst_dev = std::max(worst_dev, dev / std::max(d.gate_error_bound, 1e-300));
    worst_conj = std::max(worst_conj, conj / std::max(conj_bound, 1e-300));
    if (dev > d.gate_error_bound + 1e-12) ++violations;
    if (d.gate_error_bound > ng * net->epsilon() + 1e-12) ++violations;
    if (conj > conj_bound + 1e-12) ++violations;
  }
  return {violations == 0, fmt("100 circuits, %zu violations, max dev/sum %.3f, max conj/bound %.3f", violations,
                               worst_dev, worst_conj)};
}

Outcome product_quotient() {
  const LemmaReport p = verify_product_lemma();
  const LemmaReport q = verify_quotient_lemma();
  return {p.pass() && q.pass(), fmt("product %zu checks %zu failures; quotient %zu checks %zu failures", p.checks,
                                    p.failures, q.checks, q.failures)};
}

Outcome crossover() {
  const CrossoverReport r = crossover_analysis(2, 2, 1e-3, 8, 14, Resource::both);
  bool ok = r.gate_fit && r.time_fit && r.rows.size() == 7;
  double lo = 1e300, hi = 0.0;
  if (r.gate_fit) {
    for (double q : r.gate_fit->ratios) {
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      ok = ok && q >= 3.5 && q <= 4.5;
    }
  }
  const double r2 = r.time_fit ? r.time_fit->r_squared : 0.0;
  ok = ok && r2 >= 0.99;
  return {ok, fmt("gate ratios in [%.4f, %.4f], log T vs L R^2 %.6f", lo, hi, r2)};
}

Outcome coarse_graining() {
  const SpectrumProfile z4 = degeneracy_profile_extensive_z(4);
  const CoarseGraining cg = coarse_grain_spectrum(z4, 0.0, 2.0, 1.0);
  // Exact enumeration of the 16 basis states.
  std::int64_t g0 = 0, g2 = 0;
  ComplexMatrix o = ComplexMatrix::Zero(16, 16);
  for (int s = 0; s < 16; ++s) {
    const int ones = __builtin_popcount(static_cast<unsigned>(s));
    const int w = 4 - 2 * ones;
    o(s, s) = w;
    g0 += std::abs(w - 0) <= 0.5;
    g2 += std::abs(w - 2) <= 0.5;
  }
  const double dev = operator_norm(o - coarse_grain_observable(o, 0.0, 2.0, 1.0));
  const bool ok = cg.degeneracy_1 == 6 && cg.degeneracy_2 == 4 && g0 == 6 && g2 == 4 && dev <= 0.5;
  return {ok, fmt("degeneracies (%lld, %lld), enumeration (%lld, %lld), ||O - O'|| %.3g",
                  static_cast<long long>(cg.degeneracy_1), static_cast<long long>(cg.degeneracy_2),
                  static_cast<long long>(g0), static_cast<long long>(g2), dev)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 = no runtime limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Trotter certificate soundness", 300.0, trotter_soundness},
      {2, "exp-map Lipschitz", 120.0, exp_lipschitz},
      {3, "Kato construction", 0.0, kato},
      {4, "covering/packing sandwich", 0.0, sandwich},
      {5, "U(1) covering and U(2) net", 0.0, unitary_sanity},
      {6, "circuit discretization", 0.0, discretization},
      {7, "product/quotient covering", 0.0, product_quotient},
      {8, "crossover", 10.0, crossover},
      {9, "coarse-graining", 0.0, coarse_graining},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s budget)", c.budget_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
