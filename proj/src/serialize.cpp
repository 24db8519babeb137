#include "qreach/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qreach {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep a marker so the value parses back as a float.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void dump_into(const Json& v, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_into(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw Error(std::string(what) + " entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

template <class T>
T required(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(std::string("field \"") + key + "\" has the wrong type");
  }
}

Json envelope_to_json(const Envelope& f) {
  Json j;
  if (const auto* c = std::get_if<ConstantEnvelope>(&f)) {
    j["kind"] = "constant";
    j["value"] = c->value;
  } else if (const auto* c = std::get_if<CosineEnvelope>(&f)) {
    j["kind"] = "cosine";
    j["amplitude"] = c->amplitude;
    j["omega"] = c->omega;
    j["phase"] = c->phase;
  } else {
    const auto& p = std::get<PiecewiseLinearEnvelope>(f);
    j["kind"] = "pwl";
    j["times"] = p.times;
    j["values"] = p.values;
  }
  return j;
}

Envelope envelope_from_json(const Json& j) {
  const auto kind = required<std::string>(j, "kind");
  if (kind == "constant") return ConstantEnvelope{required<double>(j, "value")};
  if (kind == "cosine") {
    return CosineEnvelope{required<double>(j, "amplitude"), j.value("omega", 0.0), j.value("phase", 0.0)};
  }
  if (kind == "pwl") {
    return PiecewiseLinearEnvelope{required<std::vector<double>>(j, "times"), required<std::vector<double>>(j, "values")};
  }
  throw Error("unknown envelope kind \"" + kind + "\"");
}

}  // namespace

std::string dump_stable(const Json& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  return out;
}

Json to_json_value(const LogBound& b) {
  Json j;
  j["source"] = b.source;
  j["ln_value"] = b.ln_value;
  j["log10_value"] = b.log10_value();
  Json params = Json::object();
  for (const auto& [k, v] : b.parameters) params[k] = v;
  j["parameters"] = params;
  j["flags"] = b.flags;
  return j;
}

Json to_json_value(const Theorem3Bounds& b) {
  Json j;
  j["n"] = b.n;
  j["m"] = b.m;
  j["eps"] = b.epsilon;
  j["lower_ln"] = b.lower_log;
  j["upper_ln"] = b.upper_log;
  j["lower_valid"] = b.lower_valid;
  j["upper_valid"] = b.upper_valid;
  j["lower_nontrivial"] = b.lower_nontrivial;
  return j;
}

Json to_json_value(const TrotterCertificate& c) {
  Json j;
  j["T"] = c.T;
  j["N_t"] = c.N_t;
  j["delta_t"] = c.delta_t;
  j["K"] = c.K;
  j["z"] = c.z;
  j["h_max"] = c.h_max;
  j["bound"] = c.bound;
  j["measured"] = c.measured;
  j["holds"] = c.measured <= c.bound;
  return j;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) rows.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("matrix must be a non-empty array of [re, im] pairs");
  const auto count = static_cast<Eigen::Index>(j.size());
  const auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
  if (side * side != count) throw Error("matrix entry count is not a perfect square");
  ComplexMatrix m(side, side);
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto& e = j[static_cast<std::size_t>(i)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw Error("matrix entries must be [re, im] pairs");
    m(i / side, i % side) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

Json to_json_value(const Circuit& c) {
  Json j;
  j["L"] = c.reg().sites;
  j["d"] = c.reg().local_dim;
  Json gates = Json::array();
  for (const auto& g : c.gates()) {
    Json gj;
    gj["support"] = g.support();
    gj["matrix"] = matrix_to_json(g.matrix().matrix());
    gates.push_back(std::move(gj));
  }
  j["gates"] = std::move(gates);
  return j;
}

Circuit circuit_from_json(const Json& j) {
  const QuditRegister reg(required<int>(j, "L"), required<int>(j, "d"));
  Circuit c(reg);
  if (!j.contains("gates") || !j["gates"].is_array()) throw Error("missing field \"gates\"");
  for (const auto& g : j["gates"]) {
    if (!g.contains("support") || !g.contains("matrix")) throw Error("gate needs \"support\" and \"matrix\"");
    c.add(Gate(int_list(g["support"], "support"), UnitaryMatrix(matrix_from_json(g["matrix"])), reg.local_dim));
  }
  return c;
}

Json to_json_value(const TimeDependentHamiltonian& h) {
  Json j;
  j["L"] = h.reg().sites;
  j["d"] = h.reg().local_dim;
  Json terms = Json::array();
  for (const auto& t : h.terms()) {
    Json tj;
    tj["support"] = t.support();
    tj["base"] = matrix_to_json(t.base());
    tj["envelope"] = envelope_to_json(t.envelope());
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  return j;
}

TimeDependentHamiltonian hamiltonian_from_json(const Json& j) {
  const QuditRegister reg(required<int>(j, "L"), required<int>(j, "d"));
  if (!j.contains("terms") || !j["terms"].is_array()) throw Error("missing field \"terms\"");
  std::vector<HamiltonianTerm> terms;
  for (const auto& t : j["terms"]) {
    if (!t.contains("support") || !t.contains("base") || !t.contains("envelope"))
      throw Error("term needs \"support\", \"base\" and \"envelope\"");
    terms.emplace_back(int_list(t["support"], "support"), matrix_from_json(t["base"]), envelope_from_json(t["envelope"]),
                       reg.local_dim);
  }
  return TimeDependentHamiltonian(reg, std::move(terms));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace qreach
