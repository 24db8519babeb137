#include "qreach/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qreach {

namespace {

std::size_t int_pow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Row offsets of the local basis states and the base rows with all support
// digits zero. support[0] is the most significant local digit.
struct LocalLayout {
  std::vector<Eigen::Index> offsets;
  std::vector<Eigen::Index> bases;
};

LocalLayout local_layout(std::span<const int> support, int sites, int d) {
  const std::size_t dim = int_pow(static_cast<std::size_t>(d), sites);
  std::vector<std::size_t> stride(sites);
  for (int s = 0; s < sites; ++s) stride[s] = int_pow(static_cast<std::size_t>(d), sites - 1 - s);

  LocalLayout layout;
  const std::size_t local = int_pow(static_cast<std::size_t>(d), static_cast<int>(support.size()));
  layout.offsets.resize(local);
  for (std::size_t r = 0; r < local; ++r) {
    std::size_t rem = r;
    std::size_t off = 0;
    for (std::size_t j = support.size(); j-- > 0;) {
      off += (rem % d) * stride[support[j]];
      rem /= d;
    }
    layout.offsets[r] = static_cast<Eigen::Index>(off);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const bool zero_on_support = std::all_of(support.begin(), support.end(),
                                             [&](int s) { return (i / stride[s]) % d == 0; });
    if (zero_on_support) layout.bases.push_back(static_cast<Eigen::Index>(i));
  }
  return layout;
}

void apply_local(const ComplexMatrix& op, std::span<const int> support, int sites, int d, ComplexMatrix& target) {
  const LocalLayout layout = local_layout(support, sites, d);
  const auto local = static_cast<Eigen::Index>(layout.offsets.size());
  if (op.rows() != local || op.cols() != local) throw Error("operator dimension does not match its support");
  ComplexMatrix gathered(local, target.cols());
  for (const Eigen::Index base : layout.bases) {
    for (Eigen::Index r = 0; r < local; ++r) gathered.row(r) = target.row(base + layout.offsets[r]);
    const ComplexMatrix updated = op * gathered;
    for (Eigen::Index r = 0; r < local; ++r) target.row(base + layout.offsets[r]) = updated.row(r);
  }
}

void validate_support(const std::vector<int>& support) {
  if (support.empty()) throw Error("gate support must be non-empty");
  for (std::size_t i = 1; i < support.size(); ++i)
    if (support[i] <= support[i - 1]) throw Error("gate support must be sorted and distinct");
}

}  // namespace

QuditRegister::QuditRegister(int sites_, int local_dim_) : sites(sites_), local_dim(local_dim_) {
  if (sites < 1) throw Error("register needs at least one site");
  if (local_dim < 2) throw Error("local dimension must be >= 2");
}

std::size_t QuditRegister::dense_dim() const {
  std::size_t dim = 1;
  for (int s = 0; s < sites; ++s) {
    dim *= static_cast<std::size_t>(local_dim);
    if (dim > kMaxDenseDim) throw Error("dimension limit exceeded (d^L > 4096)");
  }
  return dim;
}

Gate::Gate(std::vector<int> support, UnitaryMatrix matrix, int local_dim)
    : support_(std::move(support)), matrix_(std::move(matrix)) {
  validate_support(support_);
  if (support_.front() < 0) throw Error("gate support indices must be non-negative");
  const auto expected = static_cast<Eigen::Index>(int_pow(static_cast<std::size_t>(local_dim), static_cast<int>(support_.size())));
  if (matrix_.dim() != expected) throw Error("gate matrix dimension does not match its support");
}

void Circuit::add(Gate g) {
  if (g.support().back() >= reg_.sites) throw Error("gate support outside the register");
  const auto expected = static_cast<Eigen::Index>(int_pow(static_cast<std::size_t>(reg_.local_dim), static_cast<int>(g.support().size())));
  if (g.matrix().dim() != expected) throw Error("gate matrix dimension does not match the register");
  gates_.push_back(std::move(g));
}

ComplexMatrix embed_operator(const ComplexMatrix& op, std::span<const int> support, int sites, int local_dim) {
  const auto dim = static_cast<Eigen::Index>(QuditRegister(sites, local_dim).dense_dim());
  ComplexMatrix full = ComplexMatrix::Identity(dim, dim);
  apply_local(op, support, sites, local_dim, full);
  return full;
}

void apply_gate(const Gate& gate, const QuditRegister& reg, ComplexMatrix& target) {
  apply_local(gate.matrix().matrix(), gate.support(), reg.sites, reg.local_dim, target);
}

UnitaryMatrix circuit_unitary(const Circuit& c) {
  const auto dim = static_cast<Eigen::Index>(c.reg().dense_dim());
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& g : c.gates()) apply_gate(g, c.reg(), u);
  return UnitaryMatrix(std::move(u));
}

ComplexMatrix conjugate_observable(const Circuit& c, const ComplexMatrix& o) {
  const auto dim = static_cast<Eigen::Index>(c.reg().dense_dim());
  if (o.rows() != dim || o.cols() != dim) throw Error("observable dimension mismatch");
  if (!is_hermitian(o)) throw Error("observable is not Hermitian");
  const ComplexMatrix u = circuit_unitary(c).matrix();
  return u.adjoint() * o * u;
}

Discretization discretize_circuit(const Circuit& c, const UnitaryNet& net) {
  const int d = c.reg().local_dim;
  int k = 0;
  std::size_t span = 1;
  while (span < static_cast<std::size_t>(net.n())) {
    span *= static_cast<std::size_t>(d);
    ++k;
  }
  if (span != static_cast<std::size_t>(net.n())) throw Error("net dimension is not a power of the local dimension");
  if (k > c.reg().sites) throw Error("net acts on more sites than the register has");

  Discretization out{Circuit(c.reg()), 0.0, {}};
  for (const auto& g : c.gates()) {
    if (static_cast<int>(g.support().size()) > k) throw Error("gate support exceeds the net's site count");
    std::vector<int> padded = g.support();
    for (int s = 0; static_cast<int>(padded.size()) < k; ++s)
      if (std::find(g.support().begin(), g.support().end(), s) == g.support().end()) padded.push_back(s);
    std::sort(padded.begin(), padded.end());

    std::vector<int> positions;
    for (int s : g.support())
      positions.push_back(static_cast<int>(std::find(padded.begin(), padded.end(), s) - padded.begin()));
    const ComplexMatrix local = embed_operator(g.matrix().matrix(), positions, k, d);

    const auto nearest = net.nearest(local);
    out.gate_distances.push_back(nearest.distance);
    out.gate_error_bound += nearest.distance;
    out.circuit.add(Gate(padded, net.elements()[nearest.index], d));
  }
  return out;
}

double topology_count_log(int sites, int k, std::int64_t gates) {
  if (sites < 1 || k < 1 || gates < 0) throw Error("topology_count_log: arguments must be positive");
  return static_cast<double>(k) * static_cast<double>(gates) * std::log(static_cast<double>(sites));
}

LogBound theorem1_bound(int d, int k, int sites, std::int64_t gates, double epsilon) {
  if (d < 2 || k < 1 || sites < 1 || gates < 1) throw Error("theorem1_bound: invalid register or circuit size");
  if (!(epsilon > 0.0)) throw Error("theorem1_bound: epsilon must be positive");
  const double ng = static_cast<double>(gates);
  const double inner = epsilon / (2.0 * ng);
  if (inner > 0.1) {
    throw Error("theorem1_bound: inner net radius eps/(2 N_G) = " + std::to_string(inner) +
                " exceeds 1/10; need eps <= " + std::to_string(0.2 * ng));
  }
  LogBound b;
  b.source = "circuit";
  const double gate_dim_sq = std::pow(static_cast<double>(d), 2.0 * k);
  b.ln_value = topology_count_log(sites, k, gates) + gate_dim_sq * ng * std::log(14.0 * ng / epsilon);
  b.parameters = {{"d", d}, {"k", k}, {"L", sites}, {"N_G", ng}, {"eps", epsilon}};
  if (gates <= sites) b.flags.push_back("hypothesis N_G > L not satisfied");
  return b;
}

Circuit random_circuit(const QuditRegister& reg, std::size_t gates, int k, Rng& rng) {
  if (k < 1 || k > reg.sites) throw Error("random_circuit: need 1 <= k <= L");
  Circuit c(reg);
  std::vector<int> sites(reg.sites);
  std::iota(sites.begin(), sites.end(), 0);
  const int gate_dim = static_cast<int>(int_pow(static_cast<std::size_t>(reg.local_dim), k));
  for (std::size_t i = 0; i < gates; ++i) {
    std::shuffle(sites.begin(), sites.end(), rng);
    std::vector<int> support(sites.begin(), sites.begin() + k);
    std::sort(support.begin(), support.end());
    c.add(Gate(std::move(support), haar_unitary(gate_dim, rng), reg.local_dim));
  }
  return c;
}

}  // namespace qreach
