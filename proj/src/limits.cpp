#include "qreach/limits.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <Eigen/Eigenvalues>
#include <boost/math/statistics/linear_regression.hpp>

#include "qreach/circuit.hpp"
#include "qreach/grassmann.hpp"
#include "qreach/serialize.hpp"
#include "qreach/trotter.hpp"

namespace qreach {

namespace {

constexpr int kMaxProfileSites = 30;
constexpr int kMaxCrossoverSites = 30;
constexpr double kNontrivialThreshold = 9.0 / 1805.0;
constexpr int kChainZ = 3;
constexpr double kChainH = 1.0;

double replacement(double w, double omega_1, double omega_2, double half) {
  if (std::abs(w - omega_1) <= half) return omega_1;
  if (std::abs(w - omega_2) <= half) return omega_2;
  return w;
}

void check_window(double omega_1, double omega_2, double epsilon) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (!(omega_1 < omega_2)) throw Error("need omega_1 < omega_2");
  if (!(omega_2 - omega_1 > epsilon)) throw Error("eps/2-neighbourhoods of omega_1 and omega_2 overlap");
}

double grassmann_target(int d, int sites, double epsilon) {
  const double m = std::pow(static_cast<double>(d), sites);
  const Theorem3Bounds b = theorem3_bounds(std::floor(m / 2.0), m, epsilon);
  if (!b.lower_valid) throw Error("crossover: Grassmannian lower bound needs eps <= 1/71");
  if (!b.lower_nontrivial)
    throw Error("crossover: Grassmannian lower bound is vacuous at L = " + std::to_string(sites) +
                "; need eps < 9/1805 (about 0.004986)");
  return b.lower_log;
}

std::int64_t minimal_gates(int d, int k, int sites, double epsilon, double target) {
  const auto reaches = [&](std::int64_t g) { return theorem1_bound(d, k, sites, g, epsilon).ln_value >= target; };
  std::int64_t lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(5.0 * epsilon)));
  if (reaches(lo)) return lo;
  std::int64_t hi = lo * 2;
  while (!reaches(hi)) {
    lo = hi;
    if (hi > (std::int64_t{1} << 60)) throw Error("crossover: gate count search overflow");
    hi *= 2;
  }
  while (hi - lo > 1) {  // reaches(hi) and !reaches(lo)
    const std::int64_t mid = lo + (hi - lo) / 2;
    (reaches(mid) ? hi : lo) = mid;
  }
  return hi;
}

double minimal_time(int d, int k, int sites, double epsilon, double target) {
  const double terms = sites - 1;
  const auto value = [&](double t) {
    return theorem2_bound(sites, d, k, terms, kChainZ, kChainH, t, epsilon).ln_value;
  };
  // Smallest T for which the inner radius eps^2 / (16 T^2 K^2 z h^2) is at most 1/10.
  double lo = epsilon / (4.0 * terms * kChainH * std::sqrt(0.1 * kChainZ)) * (1.0 + 1e-12);
  if (value(lo) >= target) return lo;
  double hi = 2.0 * lo;
  while (value(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error("crossover: time search overflow");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

TrendFit fit_trend(const std::vector<double>& ls, const std::vector<double>& values) {
  TrendFit f;
  std::vector<double> logs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    logs.push_back(std::log(values[i]));
    if (i > 0) f.ratios.push_back(values[i] / values[i - 1]);
  }
  const auto [c0, c1, r2] = boost::math::statistics::simple_ordinary_least_squares_with_R_squared(ls, logs);
  f.intercept = c0;
  f.slope = c1;
  f.r_squared = r2;
  return f;
}

Json fit_json(const std::optional<TrendFit>& f) {
  if (!f) return nullptr;
  Json j;
  j["ratios"] = f->ratios;
  j["slope"] = f->slope;
  j["intercept"] = f->intercept;
  j["r_squared"] = f->r_squared;
  return j;
}

std::optional<TrendFit> fit_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  TrendFit f;
  f.ratios = j.at("ratios").get<std::vector<double>>();
  f.slope = j.at("slope").get<double>();
  f.intercept = j.at("intercept").get<double>();
  f.r_squared = j.at("r_squared").get<double>();
  return f;
}

std::string csv_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double SpectrumProfile::width() const {
  if (eigenvalues.empty()) return 0.0;
  return 0.5 * (eigenvalues.back() - eigenvalues.front());
}

std::int64_t SpectrumProfile::dimension() const {
  std::int64_t total = 0;
  for (auto g : degeneracies) total += g;
  return total;
}

SpectrumProfile profile_from_spectrum(std::vector<double> eigenvalues, double merge_tol) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  SpectrumProfile p;
  for (double w : eigenvalues) {
    if (!std::isfinite(w)) throw Error("non-finite eigenvalue");
    if (!p.eigenvalues.empty() && w - p.eigenvalues.back() <= merge_tol) {
      ++p.degeneracies.back();
    } else {
      p.eigenvalues.push_back(w);
      p.degeneracies.push_back(1);
    }
  }
  return p;
}

CoarseGraining coarse_grain_spectrum(const SpectrumProfile& profile, double omega_1, double omega_2, double epsilon) {
  check_window(omega_1, omega_2, epsilon);
  if (profile.eigenvalues.size() != profile.degeneracies.size()) throw Error("malformed spectrum profile");
  const double half = 0.5 * epsilon;
  CoarseGraining out;
  out.shift_bound = half;
  std::vector<std::pair<double, std::int64_t>> moved;
  for (std::size_t i = 0; i < profile.eigenvalues.size(); ++i) {
    const double w = profile.eigenvalues[i];
    const double r = replacement(w, omega_1, omega_2, half);
    out.max_shift = std::max(out.max_shift, std::abs(r - w));
    if (r == omega_1 && std::abs(w - omega_1) <= half) out.degeneracy_1 += profile.degeneracies[i];
    if (r == omega_2 && std::abs(w - omega_2) <= half) out.degeneracy_2 += profile.degeneracies[i];
    moved.emplace_back(r, profile.degeneracies[i]);
  }
  std::sort(moved.begin(), moved.end());
  for (const auto& [w, g] : moved) {
    if (!out.profile.eigenvalues.empty() && out.profile.eigenvalues.back() == w) {
      out.profile.degeneracies.back() += g;
    } else {
      out.profile.eigenvalues.push_back(w);
      out.profile.degeneracies.push_back(g);
    }
  }
  return out;
}

ComplexMatrix coarse_grain_observable(const ComplexMatrix& o, double omega_1, double omega_2, double epsilon) {
  check_window(omega_1, omega_2, epsilon);
  if (!is_hermitian(o)) throw Error("observable is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (o + o.adjoint()));
  Eigen::VectorXd w = eig.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = replacement(w(i), omega_1, omega_2, 0.5 * epsilon);
  return eig.eigenvectors() * w.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
}

SpectrumProfile degeneracy_profile_extensive_z(int sites) {
  if (sites < 1 || sites > kMaxProfileSites) throw Error("degeneracy profile needs 1 <= L <= 30");
  SpectrumProfile p;
  std::int64_t binom = 1;  // C(L, j) for j = L down to 0, ascending eigenvalue
  for (int j = sites; j >= 0; --j) {
    p.eigenvalues.push_back(static_cast<double>(sites - 2 * j));
    p.degeneracies.push_back(binom);
    binom = binom * j / (sites - j + 1);
  }
  return p;
}

std::string resource_name(Resource r) {
  switch (r) {
    case Resource::circuit: return "circuit";
    case Resource::time: return "time";
    case Resource::both: return "both";
  }
  return "circuit";
}

Resource parse_resource(const std::string& s) {
  if (s == "circuit") return Resource::circuit;
  if (s == "time") return Resource::time;
  if (s == "both") return Resource::both;
  throw Error("unknown resource \"" + s + "\" (expected circuit, time or both)");
}

CrossoverReport crossover_analysis(int d, int k, double epsilon, int lmin, int lmax, Resource resource) {
  if (d < 2 || k < 1) throw Error("crossover: need d >= 2 and k >= 1");
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (!(epsilon < kNontrivialThreshold))
    throw Error("crossover: Grassmannian lower bound is vacuous; need eps < 9/1805 (about 0.004986)");
  if (lmin < 2 || lmax < lmin || lmax > kMaxCrossoverSites) throw Error("crossover: need 2 <= lmin <= lmax <= 30");
  if (k > lmin) throw Error("crossover: locality k exceeds the smallest system size");

  CrossoverReport r;
  r.d = d;
  r.k = k;
  r.epsilon = epsilon;
  r.resource = resource;
  r.family = "nearest-neighbour chain, K = L - 1, z = 3, |h| = 1; Grassmannian at n = floor(m/2)";
  r.notes = {"finite-L trend check only; no asymptotic claim is made",
             "upper bounds on reachable sets are compared with the packing lower bound, all in natural-log domain"};
  const bool gates = resource != Resource::time;
  const bool time = resource != Resource::circuit;

  for (int L = lmin; L <= lmax; ++L) {
    CrossoverRow row;
    row.L = L;
    row.m = std::pow(static_cast<double>(d), L);
    row.grassmann_lower_log = grassmann_target(d, L, epsilon);
    if (gates) row.min_gates = minimal_gates(d, k, L, epsilon, row.grassmann_lower_log);
    if (time) row.min_time = minimal_time(d, k, L, epsilon, row.grassmann_lower_log);
    r.rows.push_back(row);
  }

  if (r.rows.size() >= 2) {
    std::vector<double> ls, ng, tt;
    for (const auto& row : r.rows) {
      ls.push_back(row.L);
      if (row.min_gates) ng.push_back(static_cast<double>(*row.min_gates));
      if (row.min_time) tt.push_back(*row.min_time);
    }
    if (gates) r.gate_fit = fit_trend(ls, ng);
    if (time) r.time_fit = fit_trend(ls, tt);
  }
  return r;
}

std::string to_json(const CrossoverReport& r) {
  Json j;
  j["d"] = r.d;
  j["k"] = r.k;
  j["eps"] = r.epsilon;
  j["resource"] = resource_name(r.resource);
  j["family"] = r.family;
  j["notes"] = r.notes;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json rj;
    rj["L"] = row.L;
    rj["m"] = row.m;
    rj["grassmann_lower_ln"] = row.grassmann_lower_log;
    rj["min_gates"] = row.min_gates ? Json(*row.min_gates) : Json(nullptr);
    rj["min_time"] = row.min_time ? Json(*row.min_time) : Json(nullptr);
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  j["gate_fit"] = fit_json(r.gate_fit);
  j["time_fit"] = fit_json(r.time_fit);
  return dump_stable(j) + "\n";
}

CrossoverReport crossover_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    CrossoverReport r;
    r.d = j.at("d").get<int>();
    r.k = j.at("k").get<int>();
    r.epsilon = j.at("eps").get<double>();
    r.resource = parse_resource(j.at("resource").get<std::string>());
    r.family = j.at("family").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& rj : j.at("rows")) {
      CrossoverRow row;
      row.L = rj.at("L").get<int>();
      row.m = rj.at("m").get<double>();
      row.grassmann_lower_log = rj.at("grassmann_lower_ln").get<double>();
      if (!rj.at("min_gates").is_null()) row.min_gates = rj["min_gates"].get<std::int64_t>();
      if (!rj.at("min_time").is_null()) row.min_time = rj["min_time"].get<double>();
      r.rows.push_back(row);
    }
    r.gate_fit = fit_from(j.at("gate_fit"));
    r.time_fit = fit_from(j.at("time_fit"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed crossover report: ") + e.what());
  }
}

std::string to_csv(const CrossoverReport& r) {
  std::string out = "L,m,grassmann_lower_ln,min_gates,min_time\n";
  for (const auto& row : r.rows) {
    out += std::to_string(row.L) + "," + csv_double(row.m) + "," + csv_double(row.grassmann_lower_log) + ",";
    if (row.min_gates) out += std::to_string(*row.min_gates);
    out += ",";
    if (row.min_time) out += csv_double(*row.min_time);
    out += "\n";
  }
  return out;
}

void emit_report(const CrossoverReport& r, const std::string& format, const std::string& path) {
  std::string text;
  if (format == "json") {
    text = to_json(r);
  } else if (format == "csv") {
    text = to_csv(r);
  } else {
    throw Error("unknown report format \"" + format + "\" (expected json or csv)");
  }
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

}  // namespace qreach
