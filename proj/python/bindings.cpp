#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qreach/circuit.hpp"
#include "qreach/grassmann.hpp"
#include "qreach/limits.hpp"
#include "qreach/linalg.hpp"
#include "qreach/metric.hpp"
#include "qreach/serialize.hpp"
#include "qreach/trotter.hpp"
#include "qreach/unitary_nets.hpp"

namespace py = pybind11;
using namespace qreach;

namespace {

py::dict log_bound_dict(const LogBound& b) {
  py::dict params;
  for (const auto& [k, v] : b.parameters) params[py::str(k)] = v;
  py::dict d;
  d["source"] = b.source;
  d["ln_value"] = b.ln_value;
  d["log10_value"] = b.log10_value();
  d["parameters"] = params;
  d["flags"] = b.flags;
  return d;
}

FiniteMetricSpace space_from(const Eigen::MatrixXd& table) {
  if (table.rows() != table.cols()) throw Error("distance table must be square");
  const auto n = static_cast<std::size_t>(table.rows());
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = table(i, j);
  return FiniteMetricSpace(n, std::move(flat));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Covering-number bounds for reachable sets of quantum circuits and time evolution.";

  // Translators run newest first, so the subclass goes last.
  auto base = py::register_exception<Error>(m, "QreachError", PyExc_ValueError);
  py::register_exception<PropertyViolation>(m, "PropertyViolation", base.ptr());

  m.def("operator_norm", &operator_norm, py::arg("a"));
  m.def("expm", [](const ComplexMatrix& x) { return matrix_exp(x); }, py::arg("x"));
  m.def("haar_unitary", [](int n, std::uint64_t seed) { return haar_unitary(n, seed).matrix(); }, py::arg("n"),
        py::arg("seed"));
  m.def("spectral_width", &spectral_width, py::arg("o"));

  m.def("greedy_packing",
        [](const Eigen::MatrixXd& table, double eps, std::uint64_t seed) {
          const NetResult r = greedy_maximal_packing(space_from(table), eps, seed);
          return py::make_tuple(r.selected, r.is_covering, r.is_packing);
        },
        py::arg("table"), py::arg("eps"), py::arg("seed") = 0);
  m.def("covering_number",
        [](const Eigen::MatrixXd& table, double eps) { return brute_force_covering_number(space_from(table), eps); },
        py::arg("table"), py::arg("eps"));
  m.def("packing_number",
        [](const Eigen::MatrixXd& table, double eps) { return brute_force_packing_number(space_from(table), eps); },
        py::arg("table"), py::arg("eps"));

  m.def("circuit_bound",
        [](int d, int k, int L, std::int64_t ng, double eps) { return log_bound_dict(theorem1_bound(d, k, L, ng, eps)); },
        py::arg("d"), py::arg("k"), py::arg("L"), py::arg("ng"), py::arg("eps"));
  m.def("tevol_bound",
        [](int L, int d, int k, double K, double z, double h, double T, double eps) {
          return log_bound_dict(theorem2_bound(L, d, k, K, z, h, T, eps));
        },
        py::arg("L"), py::arg("d"), py::arg("k"), py::arg("K"), py::arg("z"), py::arg("h"), py::arg("T"),
        py::arg("eps"));
  m.def("grassmann_bounds",
        [](double n, double mm, double eps) {
          const Theorem3Bounds b = theorem3_bounds(n, mm, eps);
          py::dict d;
          d["lower_ln"] = b.lower_log;
          d["upper_ln"] = b.upper_log;
          d["lower_valid"] = b.lower_valid;
          d["upper_valid"] = b.upper_valid;
          d["lower_nontrivial"] = b.lower_nontrivial;
          return d;
        },
        py::arg("n"), py::arg("m"), py::arg("eps"));

  m.def("kato_unitary",
        [](const ComplexMatrix& p, const ComplexMatrix& q) { return kato_unitary(Projector(p), Projector(q)).matrix(); },
        py::arg("p"), py::arg("q"));

  m.def("certify_trotter",
        [](const std::string& hamiltonian_json, double T, int steps) {
          const TrotterCertificate c = certify_trotter(hamiltonian_from_json(Json::parse(hamiltonian_json)), T, steps);
          py::dict d;
          d["T"] = c.T;
          d["N_t"] = c.N_t;
          d["K"] = c.K;
          d["z"] = c.z;
          d["h_max"] = c.h_max;
          d["bound"] = c.bound;
          d["measured"] = c.measured;
          return d;
        },
        py::arg("hamiltonian_json"), py::arg("T"), py::arg("steps"));

  m.def("crossover_json",
        [](int d, int k, double eps, int lmin, int lmax, const std::string& resource) {
          return to_json(crossover_analysis(d, k, eps, lmin, lmax, parse_resource(resource)));
        },
        py::arg("d") = 2, py::arg("k") = 2, py::arg("eps") = kDefaultCrossoverEpsilon, py::arg("lmin") = 8,
        py::arg("lmax") = 14, py::arg("resource") = "circuit");

  m.def("extensive_z_profile",
        [](int L) {
          const SpectrumProfile p = degeneracy_profile_extensive_z(L);
          return py::make_tuple(p.eigenvalues, p.degeneracies);
        },
        py::arg("L"));
}
