#include "qreach/unitary_nets.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

#include <Eigen/Eigenvalues>

namespace qreach {

namespace {

constexpr int kMaxGridDimension = 3;

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw Error("truncated net file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

double frobenius_sq_to(const cplx* conj_entries, const ComplexMatrix& u, double u_norm_sq, int n) {
  double re_trace = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) re_trace += (conj_entries[r * n + c] * u(r, c)).real();
  return std::max(0.0, static_cast<double>(n) + u_norm_sq - 2.0 * re_trace);
}

}  // namespace

UnitaryNet::UnitaryNet(int n, double epsilon, std::vector<UnitaryMatrix> elements,
                       std::optional<NetConstruction> construction)
    : n_(n), epsilon_(epsilon), elements_(std::move(elements)), construction_(construction) {
  if (n_ < 1) throw Error("unitary net dimension must be >= 1");
  if (!(epsilon_ > 0.0)) throw Error("unitary net epsilon must be positive");
  if (elements_.empty()) throw Error("unitary net must contain at least one element");
  flat_.reserve(elements_.size() * static_cast<std::size_t>(n_ * n_));
  for (const auto& e : elements_) {
    if (e.dim() != n_) throw Error("unitary net element has the wrong dimension");
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) flat_.push_back(std::conj(e.matrix()(r, c)));
  }
}

UnitaryNet::Nearest UnitaryNet::nearest(const ComplexMatrix& u) const {
  if (u.rows() != n_ || u.cols() != n_) throw Error("net/gate dimension mismatch");
  const std::size_t stride = static_cast<std::size_t>(n_ * n_);
  const double u_norm_sq = u.squaredNorm();
  std::vector<double> frob(elements_.size());
  std::size_t closest = 0;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    frob[i] = std::sqrt(frobenius_sq_to(&flat_[i * stride], u, u_norm_sq, n_));
    if (frob[i] < frob[closest]) closest = i;
  }

  const double root_n = std::sqrt(static_cast<double>(n_));
  Nearest best{closest, operator_norm(elements_[closest].matrix() - u)};
  std::vector<std::pair<double, std::size_t>> candidates;
  for (std::size_t i = 0; i < frob.size(); ++i)
    if (i != closest && frob[i] / root_n < best.distance) candidates.emplace_back(frob[i], i);
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [f, i] : candidates) {
    // Every later candidate has operator distance >= F / sqrt(n).
    if (f / root_n >= best.distance) break;
    const double d = operator_norm(elements_[i].matrix() - u);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

LemmaOneBounds lemma1_bounds(int n, double epsilon) {
  if (n < 1) throw Error("lemma1_bounds: n must be >= 1");
  if (!(epsilon > 0.0)) throw Error("lemma1_bounds: epsilon must be positive");
  LemmaOneBounds b;
  b.n = n;
  b.epsilon = epsilon;
  b.valid = epsilon <= 0.1;
  if (b.valid) {
    const double dim = static_cast<double>(n) * n;
    b.lower_log = dim * std::log(3.0 / (4.0 * epsilon));
    b.upper_log = dim * std::log(7.0 / epsilon);
  }
  return b;
}

std::vector<ComplexMatrix> lie_algebra_basis(int n) {
  std::vector<ComplexMatrix> basis;
  const double s = 1.0 / std::numbers::sqrt2;
  for (int k = 0; k < n; ++k) {
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    b(k, k) = cplx(0.0, 1.0);
    basis.push_back(std::move(b));
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      ComplexMatrix re = ComplexMatrix::Zero(n, n);
      re(k, l) = s;
      re(l, k) = -s;
      basis.push_back(std::move(re));
      ComplexMatrix im = ComplexMatrix::Zero(n, n);
      im(k, l) = cplx(0.0, s);
      im(l, k) = cplx(0.0, s);
      basis.push_back(std::move(im));
    }
  }
  return basis;
}

UnitaryNet build_unitary_net(int n, double epsilon, std::uint64_t max_elements) {
  if (n < 1 || n > kMaxGridDimension) throw Error("lattice nets are limited to 1 <= n <= 3");
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");

  const auto basis = lie_algebra_basis(n);
  const std::size_t dim = basis.size();
  const double spacing = 2.0 * epsilon / n;
  const double pi = std::numbers::pi;

  // |<B, X>| <= ||B||_nuclear * ||X|| bounds each coordinate of the ball;
  // diagonal generators have nuclear norm 1, off-diagonal ones sqrt2.
  std::vector<long> half_width(dim);
  double projected = 1.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double nuclear = j < static_cast<std::size_t>(n) ? 1.0 : std::numbers::sqrt2;
    half_width[j] = static_cast<long>(std::floor(nuclear * pi / spacing + 0.5));
    projected *= static_cast<double>(2 * half_width[j] + 1);
  }
  if (projected > static_cast<double>(max_elements)) {
    throw Error("net too large (projected " + std::to_string(static_cast<std::uint64_t>(projected)) +
                " lattice points, limit " + std::to_string(max_elements) + ")");
  }

  const double keep_radius = pi + epsilon + 1e-12;
  std::vector<UnitaryMatrix> elements;
  std::vector<long> idx(dim);
  for (std::size_t j = 0; j < dim; ++j) idx[j] = -half_width[j];
  for (;;) {
    // H = iG is Hermitian; its eigenvalues give both ||G|| and e^G.
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j < dim; ++j) h += cplx(0.0, static_cast<double>(idx[j]) * spacing) * basis[j];
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (norm <= keep_radius) {
      const Eigen::VectorXcd phases =
          eig.eigenvalues().unaryExpr([](double lam) { return std::polar(1.0, -lam); });
      elements.emplace_back(eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint());
    }
    std::size_t j = 0;
    while (j < dim && idx[j] == half_width[j]) {
      idx[j] = -half_width[j];
      ++j;
    }
    if (j == dim) break;
    ++idx[j];
  }

  NetConstruction log{spacing, pi, static_cast<std::uint64_t>(projected)};
  return UnitaryNet(n, epsilon, std::move(elements), log);
}

CoveringCheck empirical_covering_check(const UnitaryNet& net, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error("empirical_covering_check: samples must be >= 1");
  Rng rng(seed);
  CoveringCheck check;
  for (std::size_t s = 0; s < samples; ++s) {
    const UnitaryMatrix u = haar_unitary(net.n(), rng);
    check.max_gap = std::max(check.max_gap, net.nearest(u.matrix()).distance);
  }
  check.pass = check.max_gap <= net.epsilon();
  return check;
}

std::size_t empirical_packing_lower_bound(int n, double epsilon, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw Error("empirical_packing_lower_bound: trials must be >= 1");
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  Rng rng(seed);
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<ComplexMatrix> accepted;
  for (std::size_t t = 0; t < trials; ++t) {
    ComplexMatrix u = haar_unitary(n, rng).matrix();
    bool separated = true;
    for (const auto& a : accepted) {
      const double frob = (a - u).norm();
      if (frob <= epsilon) {
        separated = false;
      } else if (frob / root_n <= epsilon) {
        separated = operator_norm(a - u) > epsilon;
      }
      if (!separated) break;
    }
    if (separated) accepted.push_back(std::move(u));
  }
  return accepted.size();
}

std::size_t u1_covering_number(double epsilon) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (epsilon >= 2.0) return 1;
  // A chord of length eps subtends the angle 2 asin(eps/2); each closed ball
  // covers an arc of twice that.
  const double half_arc = 2.0 * std::asin(epsilon / 2.0);
  return static_cast<std::size_t>(std::ceil(std::numbers::pi / half_arc));
}

void write_net(const UnitaryNet& net, std::ostream& out) {
  put_u64(out, static_cast<std::uint64_t>(net.n()));
  put_f64(out, net.epsilon());
  put_u64(out, net.size());
  for (const auto& e : net.elements())
    for (int r = 0; r < net.n(); ++r)
      for (int c = 0; c < net.n(); ++c) {
        put_f64(out, e.matrix()(r, c).real());
        put_f64(out, e.matrix()(r, c).imag());
      }
  if (!out) throw Error("failed to write net");
}

UnitaryNet read_net(std::istream& in) {
  const std::uint64_t n = get_u64(in);
  const double epsilon = get_f64(in);
  const std::uint64_t count = get_u64(in);
  if (n < 1 || n > 4096) throw Error("net file: implausible dimension");
  std::vector<UnitaryMatrix> elements;
  elements.reserve(count);
  const auto dim = static_cast<Eigen::Index>(n);
  for (std::uint64_t k = 0; k < count; ++k) {
    ComplexMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        m(r, c) = cplx(re, im);
      }
    elements.emplace_back(std::move(m));
  }
  return UnitaryNet(static_cast<int>(n), epsilon, std::move(elements));
}

void save_net(const UnitaryNet& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_net(net, out);
}

UnitaryNet load_net(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_net(in);
}

}  // namespace qreach
