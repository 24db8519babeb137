#include "qreach/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/statistics/linear_regression.hpp>

namespace qreach {

namespace {

// Q = W P W^dag with W = exp(X), ||X|| < 1, resampled until ||P - Q|| <= 1/sqrt2.
Projector nearby_projector(const Projector& p, Rng& rng) {
  const int m = static_cast<int>(p.ambient_dim());
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  for (;;) {
    const SkewHermitian x = random_skew_in_ball(m, radius(rng), rng);
    const ComplexMatrix w = matrix_exp(x).matrix();
    ComplexMatrix q = w * p.matrix() * w.adjoint();
    q = 0.5 * (q + q.adjoint());
    if (operator_norm(p.matrix() - q) <= 1.0 / std::numbers::sqrt2) return Projector(std::move(q));
  }
}

}  // namespace

FiniteMetricSpace random_metric_space(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> table(n * n, 0.0);
  if (unit(rng) < 0.5) {
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) p = {unit(rng), unit(rng)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        table[i * n + j] = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
  } else {
    // Complete graph with random weights, closed under Floyd-Warshall.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) table[i * n + j] = table[j * n + i] = 0.05 + unit(rng);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          table[i * n + j] = std::min(table[i * n + j], table[i * n + k] + table[k * n + j]);
  }
  return FiniteMetricSpace(n, std::move(table));
}

LipschitzReport verify_lipschitz(int n, double radius, std::size_t trials, std::uint64_t seed) {
  if (n < 1) throw Error("verify_lipschitz: n must be positive");
  if (!(radius > 0.0)) throw Error("verify_lipschitz: radius must be positive");
  Rng rng(seed);
  LipschitzReport r;
  r.n = n;
  r.radius = radius;
  r.trials = trials;
  r.min_lower_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const SkewHermitian x = random_skew_in_ball(n, radius, rng);
    const SkewHermitian y = random_skew_in_ball(n, radius, rng);
    const LipschitzTriple tri = check_exp_lipschitz(x, y);
    if (tri.upper <= 0.0) continue;
    const double ratio = tri.mid / tri.upper;
    if (ratio > r.max_upper_ratio) {
      r.max_upper_ratio = ratio;
      r.worst = tri;
    }
    if (tri.mid > tri.upper + kLipschitzSlack) ++r.upper_violations;
    if (tri.lower && tri.radius <= kLowerBoundRadius) {
      ++r.lower_checked;
      r.min_lower_ratio = std::min(r.min_lower_ratio, tri.mid / *tri.lower);
      if (*tri.lower > tri.mid + kLipschitzSlack) ++r.lower_violations;
    }
  }
  if (r.lower_checked == 0) r.min_lower_ratio = 0.0;
  return r;
}

KatoReport verify_kato(int n, int m, std::size_t trials, std::uint64_t seed) {
  if (n < 1 || n >= m) throw Error("verify_kato: need 1 <= n < m");
  Rng rng(seed);
  KatoReport r;
  r.n = n;
  r.m = m;
  r.trials = trials;
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  for (std::size_t t = 0; t < trials; ++t) {
    const Projector p = projector_from_subspace(random_subspace(n, m, rng));
    const Projector q = nearby_projector(p, rng);
    const double dist = projector_distance(p, q);
    bool ok = true;
    try {
      const ComplexMatrix v = kato_unitary(p, q).matrix();
      const double unitarity = operator_norm(v.adjoint() * v - id);
      const double conj = operator_norm(v * p.matrix() * v.adjoint() - q.matrix());
      const double gap = operator_norm(id - v);
      r.max_unitarity = std::max(r.max_unitarity, unitarity);
      r.max_conjugation = std::max(r.max_conjugation, conj);
      if (dist > 0.0) r.max_distance_ratio = std::max(r.max_distance_ratio, gap / dist);
      ok = unitarity <= kKatoUnitarityTol && conj <= kKatoConjugationTol &&
           gap <= 5.0 / std::numbers::sqrt2 * dist + kKatoDistanceSlack;
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

SandwichReport verify_sandwich(std::size_t spaces, std::size_t max_points, int eps_per_space, std::uint64_t seed) {
  if (max_points < 2 || max_points > kExactSearchLimit) throw Error("verify_sandwich: need 2 <= points <= 15");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(2, max_points);
  SandwichReport r;
  r.spaces = spaces;
  for (std::size_t s = 0; s < spaces; ++s) {
    const std::size_t n = size_dist(rng);
    const FiniteMetricSpace space = random_metric_space(n, rng);
    double diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) diameter = std::max(diameter, space.dist(i, j));
    std::uniform_real_distribution<double> eps_dist(0.02 * diameter, 0.6 * diameter);
    for (int e = 0; e < eps_per_space; ++e) {
      const double eps = eps_dist(rng);
      const std::size_t cover = brute_force_covering_number(space, eps);
      const std::size_t pack = brute_force_packing_number(space, eps);
      const std::size_t pack2 = brute_force_packing_number(space, 2.0 * eps);
      const NetResult greedy = greedy_maximal_packing(space, eps, rng());
      ++r.checks;
      const bool ok = pack2 <= cover && cover <= pack && greedy.is_covering && greedy.is_packing &&
                      greedy.selected.size() >= cover && greedy.selected.size() <= pack;
      if (!ok) {
        ++r.failures;
        if (!r.first_failure) {
          std::ostringstream msg;
          msg << "space " << s << " (" << n << " points) eps " << eps << ": packing(2eps) " << pack2
              << " covering " << cover << " packing " << pack << " greedy " << greedy.selected.size();
          r.first_failure = msg.str();
        }
      }
    }
  }
  return r;
}

LemmaReport verify_product_lemma() {
  LemmaReport r;
  r.which = "product";
  const std::pair<std::size_t, std::size_t> shapes[] = {{3, 4}, {5, 5}, {6, 8}, {8, 8}};
  const double eps_values[] = {0.5, 1.0, 1.5, 2.0, 3.0};
  for (const auto& [a, b] : shapes) {
    const FiniteMetricSpace ca = cycle_space(a);
    const FiniteMetricSpace cb = cycle_space(b);
    for (double eps : eps_values) {
      const ProductCoveringReport p = product_covering_check(ca, cb, eps);
      ++r.checks;
      if (!p.holds()) ++r.failures;
      std::ostringstream line;
      line << "C" << a << " x C" << b << " eps " << eps << ": " << p.cover1_2eps << "*" << p.cover2_2eps
           << " <= " << p.cover_product << " <= " << p.cover1_eps << "*" << p.cover2_eps << "; packing "
           << p.pack_product_2eps << " <= " << p.cover_product << " <= " << p.pack_product_eps
           << (p.holds() ? "" : "  VIOLATED");
      r.lines.push_back(line.str());
    }
  }
  return r;
}

LemmaReport verify_quotient_lemma() {
  LemmaReport r;
  r.which = "quotient";
  const std::pair<std::size_t, std::size_t> groups[] = {{8, 2}, {12, 3}, {12, 4}};
  const double eps_values[] = {0.5, 1.0, 1.5, 2.0, 3.0};
  for (const auto& [order, sub] : groups) {
    for (double eps : eps_values) {
      const QuotientCoveringReport q = quotient_covering_check(order, sub, eps);
      ++r.checks;
      if (!q.holds()) ++r.failures;
      std::ostringstream line;
      line << "Z" << order << "/Z" << sub << " eps " << eps << ": " << q.group_2eps << " <= " << q.quotient_eps
           << "*" << q.subgroup_eps << " <= " << q.group_half_eps << (q.holds() ? "" : "  VIOLATED");
      r.lines.push_back(line.str());
    }
  }
  return r;
}

double trotter_convergence_slope(const TimeDependentHamiltonian& h, double horizon, const std::vector<int>& steps) {
  if (steps.size() < 2) throw Error("need at least two step counts for a slope");
  const ComplexMatrix exact = exact_propagator(h, horizon, kCertificateOracleTolerance).matrix();
  std::vector<double> xs, ys;
  for (int n : steps) {
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(operator_norm(trotter_propagator(h, horizon, n).matrix() - exact)));
  }
  const auto [c0, c1] = boost::math::statistics::simple_ordinary_least_squares(xs, ys);
  (void)c0;
  return c1;
}

TrotterBatchReport verify_trotter_batch(std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> sites(2, 5);
  std::uniform_real_distribution<double> horizon(0.25, 2.0);
  std::bernoulli_distribution periodic(0.5);
  TrotterBatchReport r;
  r.instances = instances;
  const std::vector<int> steps(std::begin(kTrotterStepCounts), std::end(kTrotterStepCounts));
  for (std::size_t i = 0; i < instances; ++i) {
    const int L = sites(rng);
    const TimeDependentHamiltonian h = random_chain_hamiltonian(L, periodic(rng), rng);
    const double T = horizon(rng);
    const ComplexMatrix exact = exact_propagator(h, T, kCertificateOracleTolerance).matrix();
    const double bound_unit = trotter_error_bound(T, 1, static_cast<int>(h.num_terms()), commutation_degree(h),
                                                  max_term_norm(h, T));
    std::vector<double> xs, ys;
    for (int n : steps) {
      const double measured = operator_norm(trotter_propagator(h, T, n).matrix() - exact);
      const double bound = bound_unit / n;
      r.max_ratio = std::max(r.max_ratio, measured / bound);
      if (measured > bound + kCertificateSlack) ++r.violations;
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(measured));
    }
    if (h.num_terms() < 2) continue;  // a single term is reproduced exactly
    const auto [c0, c1] = boost::math::statistics::simple_ordinary_least_squares(xs, ys);
    (void)c0;
    r.slopes.push_back(c1);
  }
  return r;
}

}  // namespace qreach
