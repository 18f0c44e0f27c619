#pragma once

// JSON encodings used by the command-line tool.
//
//   matrix       {"n": 3, "rows": [[], [1], [1, 0]]}
//   class        {"coeffs": [t_1, ..., t_n]}
//   iso          {"C": [[...], ...]}
//   move         {"kind": "switch", "j": 2} | {"kind": "twist", "j": 3, "v": [...]}
//   move list    {"start": matrix, "moves": [move, ...]}
//   certificate  {"schema_version": 1, "A", "B", "phi", "f", "g", "A_prime", "B_prime", "phi_prime", "k_final"}
//
// Integers are JSON numbers when |x| < 2^53 and decimal strings otherwise;
// readers accept either. Malformed input raises FormatError.

#include "bott/iso.hpp"
#include "bott/moves.hpp"
#include "bott/stabilize.hpp"

#include <json.hpp>

#include <string>

namespace bott {

using Json = nlohmann::json;

Json to_json(const Integer& x);
Json to_json(const IntVector& v);
Json to_json(const BottMatrix& a);
Json to_json(const Class2& c);
Json to_json(const CohClass& c);
Json to_json(const IntMatrix& c);  // {"C": ...}
Json to_json(const MoveSpec& m);
Json to_json(const MoveSeq& seq);
Json to_json(const CertificateRecord& r);
/// The record plus a readable trace of the steps taken; the trace is not read back.
Json to_json(const StabilizationCertificate& cert);

Integer integer_from_json(const Json& j);
IntVector vector_from_json(const Json& j);
BottMatrix matrix_from_json(const Json& j);
/// Accepts {"coeffs": [...]} or a bare array.
IntVector class_from_json(const Json& j, int n);
/// Accepts {"C": [[...]]} or a bare array of rows.
IntMatrix iso_matrix_from_json(const Json& j);
MoveSpec move_from_json(const Json& j);
CertificateRecord certificate_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// Two-space indentation, sorted keys, trailing newline.
std::string dump(const Json& j);

}  // namespace bott
