#pragma once

// Time-dependent k-local Hamiltonians H(t) = sum_i f_i(t) B_i, an adaptive
// high-order propagator used as the reference solution, the first-order
// product formula over N_t steps, and its certified error bound
// dt * T * K * z * |h|^2 (hbar = 1).

#include <cstdint>
#include <variant>
#include <vector>

#include "qreach/circuit.hpp"
#include "qreach/linalg.hpp"
#include "qreach/log_bound.hpp"

namespace qreach {

struct ConstantEnvelope {
  double value = 1.0;
};

/// a cos(omega t + phase)
struct CosineEnvelope {
  double amplitude = 1.0;
  double omega = 0.0;
  double phase = 0.0;
};

/// Linear interpolation between (times[i], values[i]); constant outside.
struct PiecewiseLinearEnvelope {
  std::vector<double> times;
  std::vector<double> values;
};

using Envelope = std::variant<ConstantEnvelope, CosineEnvelope, PiecewiseLinearEnvelope>;

double envelope_value(const Envelope& f, double t);
double envelope_integral(const Envelope& f, double t0, double t1);
/// sup |f| on [0, T]: 1024-point grid plus the closed-form extrema.
double envelope_sup(const Envelope& f, double horizon);

class HamiltonianTerm {
 public:
  HamiltonianTerm(std::vector<int> support, ComplexMatrix base, Envelope envelope, int local_dim);

  const std::vector<int>& support() const noexcept { return support_; }
  const ComplexMatrix& base() const noexcept { return base_; }
  const Envelope& envelope() const noexcept { return envelope_; }

 private:
  std::vector<int> support_;
  ComplexMatrix base_;
  Envelope envelope_;
};

class TimeDependentHamiltonian {
 public:
  TimeDependentHamiltonian(QuditRegister reg, std::vector<HamiltonianTerm> terms);

  const QuditRegister& reg() const noexcept { return reg_; }
  const std::vector<HamiltonianTerm>& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }

 private:
  QuditRegister reg_;
  std::vector<HamiltonianTerm> terms_;
};

/// sup_{0<=t<=T} ||h(t)|| = envelope_sup * ||base||.
double term_norm_sup(const HamiltonianTerm& h, double horizon);
/// |h| = max over terms of term_norm_sup.
double max_term_norm(const TimeDependentHamiltonian& h, double horizon);

/// Largest number of terms (itself included) whose support overlaps a given
/// term's support. Upper-bounds the number of non-commuting partners.
int commutation_degree(const TimeDependentHamiltonian& h);

inline constexpr std::size_t kMaxPropagatorDim = 64;

/// U(t1, t0) solving i dU/dt = H(t) U by embedded Runge-Kutta-Fehlberg 7(8)
/// with step control at the given tolerance. No unitarity re-projection.
UnitaryMatrix exact_propagator(const TimeDependentHamiltonian& h, double t0, double t1, double tol);
UnitaryMatrix exact_propagator(const TimeDependentHamiltonian& h, double horizon, double tol);

/// Propagator of a single term on its own support over [t0, t1]. The term
/// commutes with itself at all times, so this is exp(-i (int f) B).
UnitaryMatrix term_propagator(const HamiltonianTerm& term, double t0, double t1);

/// The product formula as a circuit: step n = 0..N_t-1 contributes one gate
/// per term in stored order.
Circuit trotter_circuit(const TimeDependentHamiltonian& h, double horizon, int steps);
UnitaryMatrix trotter_propagator(const TimeDependentHamiltonian& h, double horizon, int steps);

struct TrotterCertificate {
  double T = 0.0;
  int N_t = 0;
  double delta_t = 0.0;
  int K = 0;
  int z = 0;
  double h_max = 0.0;
  double bound = 0.0;
  double measured = 0.0;
};

inline constexpr double kCertificateOracleTolerance = 1e-11;
inline constexpr double kCertificateSlack = 1e-9;

/// Measures ||U_trotter - U_exact|| and compares it with dt T K z |h|^2.
/// Throws PropertyViolation if the measurement exceeds the bound.
TrotterCertificate certify_trotter(const TimeDependentHamiltonian& h, double horizon, int steps);

double trotter_error_bound(double horizon, int steps, int terms, int z, double h_max);

/// ln of L^{kK} (112 T^2 K^2 z h^2 / eps^2)^{4 d^{2k} T^2 K^2 z h^2 / eps}.
/// Requires the inner net radius eps/(4 K N_t), N_t = 4 T^2 K z h^2 / eps,
/// to be at most 1/10.
LogBound theorem2_bound(int sites, int d, int k, double terms, double z, double h_max, double horizon,
                        double epsilon);

/// Open (or periodic, when sites > 2) nearest-neighbour chain of qubit terms
/// with random Hermitian bases of unit norm and random cosine envelopes.
TimeDependentHamiltonian random_chain_hamiltonian(int sites, bool periodic, Rng& rng);

}  // namespace qreach
