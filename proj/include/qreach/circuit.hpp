#pragma once

// Dense circuits of k-site gates on L qudits.
//
// Site 0 is the most significant tensor factor: a gate g on site 0 of two
// qubits embeds as g (x) 1. Gates apply in sequence order, so the circuit
// unitary is U = g_{N-1} ... g_1 g_0.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qreach/linalg.hpp"
#include "qreach/log_bound.hpp"
#include "qreach/unitary_nets.hpp"

namespace qreach {

inline constexpr std::size_t kMaxDenseDim = 4096;

struct QuditRegister {
  int sites = 1;
  int local_dim = 2;

  QuditRegister(int sites, int local_dim);
  /// d^L; throws when it exceeds kMaxDenseDim.
  std::size_t dense_dim() const;
};

class Gate {
 public:
  Gate(std::vector<int> support, UnitaryMatrix matrix, int local_dim);

  const std::vector<int>& support() const noexcept { return support_; }
  const UnitaryMatrix& matrix() const noexcept { return matrix_; }

 private:
  std::vector<int> support_;
  UnitaryMatrix matrix_;
};

class Circuit {
 public:
  explicit Circuit(QuditRegister reg) : reg_(reg) {}

  void add(Gate g);
  const QuditRegister& reg() const noexcept { return reg_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

 private:
  QuditRegister reg_;
  std::vector<Gate> gates_;
};

/// Embeds an operator acting on `support` (sorted sites) into `sites` qudits.
ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const int> support, int sites, int local_dim);

/// Left-multiplies `target` (rows = d^L) by the embedded gate in place.
void apply_gate(const Gate& gate, const QuditRegister& reg, ComplexMatrix& target);

UnitaryMatrix circuit_unitary(const Circuit& c);

/// U^dag O U. O must be Hermitian with matching dimension.
ComplexMatrix conjugate_observable(const Circuit& c, const ComplexMatrix& o);

struct Discretization {
  Circuit circuit;
  double gate_error_bound = 0.0;      // sum of per-gate distances to the net
  std::vector<double> gate_distances;
};

/// Replaces every gate (padded to k = log_d(net.n) sites with identities on
/// the lowest free sites) by its nearest net element.
Discretization discretize_circuit(const Circuit& c, const UnitaryNet& net);

/// ln of L^{k N_G} (14 N_G / eps)^{d^{2k} N_G}. Requires eps/(2 N_G) <= 1/10;
/// flags (does not reject) N_G <= L.
LogBound theorem1_bound(int d, int k, int sites, std::int64_t gates, double epsilon);

/// ln L^{k N_G}, the count of circuit topologies.
double topology_count_log(int sites, int k, std::int64_t gates);

/// Random circuit of Haar gates on uniformly chosen k-site supports.
Circuit random_circuit(const QuditRegister& reg, std::size_t gates, int k, Rng& rng);

}  // namespace qreach
