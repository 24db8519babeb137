#include "qreach/trotter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace qreach {

namespace {

constexpr int kSupGridPoints = 1024;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_envelope(const Envelope& f) {
  std::visit(overloaded{
                 [](const ConstantEnvelope& c) {
                   if (!std::isfinite(c.value)) throw Error("unbounded envelope");
                 },
                 [](const CosineEnvelope& c) {
                   if (!std::isfinite(c.amplitude) || !std::isfinite(c.omega) || !std::isfinite(c.phase))
                     throw Error("unbounded envelope");
                 },
                 [](const PiecewiseLinearEnvelope& p) {
                   if (p.times.empty() || p.times.size() != p.values.size())
                     throw Error("piecewise-linear envelope needs matching, non-empty samples");
                   for (std::size_t i = 0; i < p.times.size(); ++i) {
                     if (!std::isfinite(p.times[i]) || !std::isfinite(p.values[i])) throw Error("unbounded envelope");
                     if (i > 0 && !(p.times[i] > p.times[i - 1]))
                       throw Error("piecewise-linear envelope times must increase");
                   }
                 },
             },
             f);
}

// Integral of the clamped interpolant from -inf-anchored breakpoints; only
// differences are used.
double pwl_antiderivative(const PiecewiseLinearEnvelope& p, double t) {
  const auto& ts = p.times;
  const auto& vs = p.values;
  if (t <= ts.front()) return vs.front() * (t - ts.front());
  double acc = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (t <= ts[i]) {
      const double frac = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
      const double vt = vs[i - 1] + frac * (vs[i] - vs[i - 1]);
      return acc + 0.5 * (vs[i - 1] + vt) * (t - ts[i - 1]);
    }
    acc += 0.5 * (vs[i - 1] + vs[i]) * (ts[i] - ts[i - 1]);
  }
  return acc + vs.back() * (t - ts.back());
}

using State = std::vector<cplx>;

}  // namespace

double envelope_value(const Envelope& f, double t) {
  return std::visit(overloaded{
                        [](const ConstantEnvelope& c) { return c.value; },
                        [t](const CosineEnvelope& c) { return c.amplitude * std::cos(c.omega * t + c.phase); },
                        [t](const PiecewiseLinearEnvelope& p) {
                          if (t <= p.times.front()) return p.values.front();
                          if (t >= p.times.back()) return p.values.back();
                          const auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
                          const auto i = static_cast<std::size_t>(it - p.times.begin());
                          const double frac = (t - p.times[i - 1]) / (p.times[i] - p.times[i - 1]);
                          return p.values[i - 1] + frac * (p.values[i] - p.values[i - 1]);
                        },
                    },
                    f);
}

double envelope_integral(const Envelope& f, double t0, double t1) {
  return std::visit(overloaded{
                        [&](const ConstantEnvelope& c) { return c.value * (t1 - t0); },
                        [&](const CosineEnvelope& c) {
                          if (c.omega == 0.0) return c.amplitude * std::cos(c.phase) * (t1 - t0);
                          return c.amplitude / c.omega *
                                 (std::sin(c.omega * t1 + c.phase) - std::sin(c.omega * t0 + c.phase));
                        },
                        [&](const PiecewiseLinearEnvelope& p) {
                          return pwl_antiderivative(p, t1) - pwl_antiderivative(p, t0);
                        },
                    },
                    f);
}

double envelope_sup(const Envelope& f, double horizon) {
  if (!(horizon > 0.0)) throw Error("time horizon must be positive");
  validate_envelope(f);
  double sup = 0.0;
  for (int i = 0; i < kSupGridPoints; ++i) {
    const double t = horizon * i / (kSupGridPoints - 1);
    sup = std::max(sup, std::abs(envelope_value(f, t)));
  }
  std::visit(overloaded{
                 [](const ConstantEnvelope&) {},
                 [&](const CosineEnvelope& c) {
                   // |f| peaks where omega t + phase is a multiple of pi.
                   if (c.omega == 0.0) return;
                   const double lo = std::min(c.phase, c.omega * horizon + c.phase);
                   const double hi = std::max(c.phase, c.omega * horizon + c.phase);
                   if (std::floor(hi / std::numbers::pi) >= std::ceil(lo / std::numbers::pi))
                     sup = std::max(sup, std::abs(c.amplitude));
                 },
                 [&](const PiecewiseLinearEnvelope& p) {
                   for (std::size_t i = 0; i < p.times.size(); ++i)
                     if (p.times[i] >= 0.0 && p.times[i] <= horizon) sup = std::max(sup, std::abs(p.values[i]));
                 },
             },
             f);
  return sup;
}

HamiltonianTerm::HamiltonianTerm(std::vector<int> support, ComplexMatrix base, Envelope envelope, int local_dim)
    : support_(std::move(support)), base_(std::move(base)), envelope_(std::move(envelope)) {
  if (support_.empty()) throw Error("term support must be non-empty");
  for (std::size_t i = 1; i < support_.size(); ++i)
    if (support_[i] <= support_[i - 1]) throw Error("term support must be sorted and distinct");
  if (support_.front() < 0) throw Error("term support indices must be non-negative");
  Eigen::Index expected = 1;
  for (std::size_t i = 0; i < support_.size(); ++i) expected *= local_dim;
  if (base_.rows() != expected || base_.cols() != expected) throw Error("term matrix dimension does not match its support");
  if (!is_hermitian(base_, 1e-10)) throw Error("term base matrix is not Hermitian");
  validate_envelope(envelope_);
}

TimeDependentHamiltonian::TimeDependentHamiltonian(QuditRegister reg, std::vector<HamiltonianTerm> terms)
    : reg_(reg), terms_(std::move(terms)) {
  if (terms_.empty()) throw Error("Hamiltonian needs at least one term");
  for (const auto& t : terms_) {
    if (t.support().back() >= reg_.sites) throw Error("term support outside the register");
    Eigen::Index expected = 1;
    for (std::size_t i = 0; i < t.support().size(); ++i) expected *= reg_.local_dim;
    if (t.base().rows() != expected) throw Error("term matrix dimension does not match the register");
  }
}

double term_norm_sup(const HamiltonianTerm& h, double horizon) {
  return envelope_sup(h.envelope(), horizon) * operator_norm(h.base());
}

double max_term_norm(const TimeDependentHamiltonian& h, double horizon) {
  double best = 0.0;
  for (const auto& t : h.terms()) best = std::max(best, term_norm_sup(t, horizon));
  return best;
}

int commutation_degree(const TimeDependentHamiltonian& h) {
  int z = 0;
  for (const auto& a : h.terms()) {
    int count = 0;
    for (const auto& b : h.terms()) {
      const bool overlap = std::any_of(a.support().begin(), a.support().end(), [&](int s) {
        return std::binary_search(b.support().begin(), b.support().end(), s);
      });
      if (overlap) ++count;
    }
    z = std::max(z, count);
  }
  return z;
}

UnitaryMatrix exact_propagator(const TimeDependentHamiltonian& h, double t0, double t1, double tol) {
  namespace odeint = boost::numeric::odeint;
  if (!(tol >= 1e-12)) throw Error("exact_propagator: tolerance must be >= 1e-12");
  if (!(t1 >= t0)) throw Error("exact_propagator: need t1 >= t0");
  const std::size_t dim_sz = h.reg().dense_dim();
  if (dim_sz > kMaxPropagatorDim) throw Error("dimension limit exceeded (d^L > 64)");
  const auto dim = static_cast<Eigen::Index>(dim_sz);

  std::vector<ComplexMatrix> generators;  // -i B_i embedded
  for (const auto& t : h.terms())
    generators.push_back(cplx(0.0, -1.0) * embed_operator(t.base(), t.support(), h.reg().sites, h.reg().local_dim));

  ComplexMatrix gen(dim, dim);
  auto rhs = [&](const State& x, State& dxdt, double t) {
    gen.setZero();
    for (std::size_t i = 0; i < generators.size(); ++i)
      gen += envelope_value(h.terms()[i].envelope(), t) * generators[i];
    Eigen::Map<const ComplexMatrix> u(x.data(), dim, dim);
    Eigen::Map<ComplexMatrix> du(dxdt.data(), dim, dim);
    du.noalias() = gen * u;
  };

  State x(static_cast<std::size_t>(dim * dim), cplx(0.0, 0.0));
  for (Eigen::Index i = 0; i < dim; ++i) x[static_cast<std::size_t>(i * dim + i)] = 1.0;

  // Local error control a tenth below the requested tolerance keeps the
  // accumulated global error within it for the step counts seen here.
  auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(0.1 * tol, 0.1 * tol);
  const double span = t1 - t0;
  double t = t0;
  double dt = span > 0.0 ? span / 16.0 : 0.0;
  const double min_step = 1e-14 * std::max(1.0, std::abs(t1));
  while (t1 - t > 1e-15 * std::max(1.0, std::abs(t1))) {
    if (t + dt > t1) dt = t1 - t;
    const auto result = stepper.try_step(rhs, x, t, dt);
    if (result == odeint::fail && dt < min_step) throw Error("exact_propagator: step-size underflow");
  }

  Eigen::Map<const ComplexMatrix> u(x.data(), dim, dim);
  return UnitaryMatrix(ComplexMatrix(u), 10.0 * tol);
}

UnitaryMatrix exact_propagator(const TimeDependentHamiltonian& h, double horizon, double tol) {
  if (!(horizon > 0.0)) throw Error("time horizon must be positive");
  return exact_propagator(h, 0.0, horizon, tol);
}

UnitaryMatrix term_propagator(const HamiltonianTerm& term, double t0, double t1) {
  return evolve_hermitian(term.base(), envelope_integral(term.envelope(), t0, t1));
}

Circuit trotter_circuit(const TimeDependentHamiltonian& h, double horizon, int steps) {
  if (steps < 1) throw Error("need at least one time step");
  if (!(horizon > 0.0)) throw Error("time horizon must be positive");
  Circuit c(h.reg());
  const double dt = horizon / steps;
  for (int n = 0; n < steps; ++n) {
    const double a = n * dt;
    const double b = (n + 1 == steps) ? horizon : (n + 1) * dt;
    for (const auto& term : h.terms()) c.add(Gate(term.support(), term_propagator(term, a, b), h.reg().local_dim));
  }
  return c;
}

UnitaryMatrix trotter_propagator(const TimeDependentHamiltonian& h, double horizon, int steps) {
  h.reg().dense_dim();
  return circuit_unitary(trotter_circuit(h, horizon, steps));
}

double trotter_error_bound(double horizon, int steps, int terms, int z, double h_max) {
  return (horizon / steps) * horizon * terms * z * h_max * h_max;
}

TrotterCertificate certify_trotter(const TimeDependentHamiltonian& h, double horizon, int steps) {
  TrotterCertificate c;
  c.T = horizon;
  c.N_t = steps;
  c.delta_t = horizon / steps;
  c.K = static_cast<int>(h.num_terms());
  c.z = commutation_degree(h);
  c.h_max = max_term_norm(h, horizon);
  c.bound = trotter_error_bound(horizon, steps, c.K, c.z, c.h_max);
  const UnitaryMatrix exact = exact_propagator(h, horizon, kCertificateOracleTolerance);
  const UnitaryMatrix approx = trotter_propagator(h, horizon, steps);
  c.measured = operator_norm(approx.matrix() - exact.matrix());
  if (c.measured > c.bound + kCertificateSlack) {
    throw PropertyViolation("Trotter error " + std::to_string(c.measured) + " exceeds the certified bound " +
                                std::to_string(c.bound),
                            c.measured, c.bound);
  }
  return c;
}

LogBound theorem2_bound(int sites, int d, int k, double terms, double z, double h_max, double horizon,
                        double epsilon) {
  if (sites < 1 || d < 2 || k < 1) throw Error("theorem2_bound: invalid register or locality");
  if (!(terms >= 1.0) || !(z >= 1.0) || !(h_max > 0.0) || !(horizon > 0.0) || !(epsilon > 0.0))
    throw Error("theorem2_bound: K, z, |h|, T and eps must be positive");
  const double load = horizon * horizon * terms * z * h_max * h_max;  // T^2 K z h^2
  const double steps = 4.0 * load / epsilon;
  const double inner = epsilon / (4.0 * terms * steps);
  if (inner > 0.1) {
    throw Error("theorem2_bound: inner net radius eps/(4 K N_t) = " + std::to_string(inner) + " exceeds 1/10");
  }
  const double gate_dim_sq = std::pow(static_cast<double>(d), 2.0 * k);
  const double exponent = 4.0 * gate_dim_sq * load * terms / epsilon;
  const double base = 112.0 * load * terms / (epsilon * epsilon);

  LogBound b;
  b.source = "tevol";
  b.ln_value = static_cast<double>(k) * terms * std::log(static_cast<double>(sites)) + exponent * std::log(base);
  b.parameters = {{"L", sites}, {"d", d}, {"k", k}, {"K", terms}, {"z", z},
                  {"h", h_max}, {"T", horizon}, {"eps", epsilon}, {"N_t", steps}};
  return b;
}

TimeDependentHamiltonian random_chain_hamiltonian(int sites, bool periodic, Rng& rng) {
  if (sites < 2) throw Error("chain needs at least two sites");
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  std::uniform_real_distribution<double> freq(0.5, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<HamiltonianTerm> terms;
  const int bonds = (periodic && sites > 2) ? sites : sites - 1;
  for (int b = 0; b < bonds; ++b) {
    std::vector<int> support = {b, (b + 1) % sites};
    std::sort(support.begin(), support.end());
    ComplexMatrix base = random_hermitian(4, rng);
    base /= operator_norm(base);
    terms.emplace_back(std::move(support), std::move(base), CosineEnvelope{amp(rng), freq(rng), phase(rng)}, 2);
  }
  return TimeDependentHamiltonian(QuditRegister(sites, 2), std::move(terms));
}

}  // namespace qreach
