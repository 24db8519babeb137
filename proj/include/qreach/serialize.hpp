#pragma once

// JSON exchange formats. Output is bit-stable: keys keep insertion order and
// every double is printed with 17 significant digits.
//
// Circuit:     {"L", "d", "gates": [{"support": [..], "matrix": [[re, im], ...]}]}
// Hamiltonian: {"L", "d", "terms": [{"support", "base", "envelope": {"kind", ...}}]}
// Matrices are row-major lists of [re, im] pairs.

#include <string>

#include <json.hpp>

#include "qreach/circuit.hpp"
#include "qreach/grassmann.hpp"
#include "qreach/log_bound.hpp"
#include "qreach/trotter.hpp"

namespace qreach {

using Json = nlohmann::ordered_json;

std::string dump_stable(const Json& value, int indent = 2);

Json to_json_value(const LogBound& b);
Json to_json_value(const Theorem3Bounds& b);
Json to_json_value(const TrotterCertificate& c);
Json to_json_value(const Circuit& c);
Json to_json_value(const TimeDependentHamiltonian& h);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Circuit circuit_from_json(const Json& j);
TimeDependentHamiltonian hamiltonian_from_json(const Json& j);

/// Reads and parses a whole file; throws Error on I/O or syntax failure.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qreach
