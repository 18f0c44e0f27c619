#include "bott/json_io.hpp"

#include <fstream>
#include <sstream>

namespace bott {

namespace {

const Integer kExactLimit = Integer(1) << 53;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object with key \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw FormatError(std::string("\"") + key + "\" must be an array");
  return a;
}

int small_int(const Json& j, const char* what) {
  Integer x = integer_from_json(j);
  if (x < -1000000 || x > 1000000) throw FormatError(std::string(what) + " out of range");
  return static_cast<int>(x);
}

}  // namespace

Json to_json(const Integer& x) {
  if (abs_value(x) < kExactLimit) return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const BottMatrix& a) {
  Json rows = Json::array();
  for (const auto& r : a.rows()) rows.push_back(to_json(r));
  return Json{{"n", a.n()}, {"rows", rows}};
}

Json to_json(const Class2& c) { return Json{{"coeffs", to_json(c.coeffs())}}; }

Json to_json(const CohClass& c) {
  Json terms = Json::array();
  for (const auto& [mono, coeff] : c.terms()) {
    terms.push_back(Json{{"monomial", mono}, {"coeff", to_json(coeff)}});
  }
  return terms;
}

Json to_json(const IntMatrix& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows()) rows.push_back(to_json(r));
  return Json{{"C", rows}};
}

Json to_json(const MoveSpec& m) {
  if (m.kind == MoveKind::Switch) return Json{{"kind", "switch"}, {"j", m.j}};
  return Json{{"kind", "twist"}, {"j", m.j}, {"v", to_json(m.v)}};
}

Json to_json(const MoveSeq& seq) {
  Json moves = Json::array();
  for (const auto& s : seq.specs()) moves.push_back(to_json(s));
  return Json{{"start", to_json(seq.start())}, {"moves", moves}};
}

Json to_json(const CertificateRecord& r) {
  auto seq = [](const BottMatrix& start, const std::vector<MoveSpec>& specs) {
    Json moves = Json::array();
    for (const auto& s : specs) moves.push_back(to_json(s));
    return Json{{"start", to_json(start)}, {"moves", moves}};
  };
  return Json{{"schema_version", r.schema_version},
              {"A", to_json(r.a)},
              {"B", to_json(r.b)},
              {"phi", to_json(r.phi)},
              {"f", seq(r.a_prime, r.f_moves)},
              {"g", seq(r.b, r.g_moves)},
              {"A_prime", to_json(r.a_prime)},
              {"B_prime", to_json(r.b_prime)},
              {"phi_prime", to_json(r.phi_prime)},
              {"k_final", r.k_final}};
}

Json to_json(const StabilizationCertificate& cert) {
  Json out = to_json(to_record(cert));
  Json rounds = Json::array();
  for (const auto& t : cert.trace) {
    Json steps = Json::array();
    for (const auto& s : t.steps) {
      Json moves = Json::array();
      for (const auto& m : s.trace.moves) moves.push_back(to_json(m));
      steps.push_back(Json{{"side", s.side == Side::Target ? "target" : "source"},
                           {"ell", s.trace.ell},
                           {"p", to_json(s.trace.p)},
                           {"case", to_string(s.trace.kind)},
                           {"eps_times_2", to_json(s.trace.eps.twice())},
                           {"moves", moves},
                           {"new_height", s.trace.new_height}});
    }
    Json claims = Json::array();
    for (const auto& c : t.claims) {
      claims.push_back(Json{{"rule", c.rule}, {"i", c.i}, {"j", c.j}, {"holds", c.holds}});
    }
    rounds.push_back(Json{{"k", t.k},
                          {"reached", t.reached},
                          {"source_detour", t.source_detour},
                          {"steps", steps},
                          {"claims", claims}});
  }
  out["trace"] = rounds;
  return out;
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw FormatError("expected an integer, got " + j.dump());
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of integers, got " + j.dump());
  IntVector out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(integer_from_json(x));
  return out;
}

BottMatrix matrix_from_json(const Json& j) {
  const int n = small_int(field(j, "n"), "n");
  const Json& rows = array_field(j, "rows");
  std::vector<IntVector> parsed;
  for (const auto& r : rows) parsed.push_back(vector_from_json(r));
  return BottMatrix::from_rows(n, std::move(parsed));
}

IntVector class_from_json(const Json& j, int n) {
  IntVector v = vector_from_json(j.is_object() ? field(j, "coeffs") : j);
  if (static_cast<int>(v.size()) != n) {
    throw ShapeError("class has " + std::to_string(v.size()) + " coefficients, expected " + std::to_string(n));
  }
  return v;
}

IntMatrix iso_matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? field(j, "C") : j;
  if (!rows.is_array() || rows.empty()) throw FormatError("\"C\" must be a nonempty array of rows");
  std::vector<IntVector> parsed;
  for (const auto& r : rows) parsed.push_back(vector_from_json(r));
  for (const auto& r : parsed) {
    if (r.size() != parsed.size()) throw ShapeError("\"C\" is not square");
  }
  return IntMatrix::from_rows(parsed);
}

MoveSpec move_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw FormatError("move kind must be a string");
  const int idx = small_int(field(j, "j"), "j");
  const std::string k = kind.get<std::string>();
  if (k == "switch") return MoveSpec::make_switch(idx);
  if (k == "twist") return MoveSpec::make_twist(idx, vector_from_json(field(j, "v")));
  throw FormatError("unknown move kind \"" + k + "\"");
}

CertificateRecord certificate_from_json(const Json& j) {
  CertificateRecord r;
  r.schema_version = small_int(field(j, "schema_version"), "schema_version");
  r.a = matrix_from_json(field(j, "A"));
  r.b = matrix_from_json(field(j, "B"));
  r.phi = iso_matrix_from_json(field(j, "phi"));
  const Json& f = field(j, "f");
  const Json& g = field(j, "g");
  r.a_prime = matrix_from_json(field(f, "start"));
  if (matrix_from_json(field(g, "start")) != r.b) throw FormatError("g does not start at B");
  if (j.contains("A_prime") && matrix_from_json(j["A_prime"]) != r.a_prime) {
    throw FormatError("A_prime differs from the start of f");
  }
  r.b_prime = matrix_from_json(field(j, "B_prime"));
  for (const auto& m : array_field(f, "moves")) r.f_moves.push_back(move_from_json(m));
  for (const auto& m : array_field(g, "moves")) r.g_moves.push_back(move_from_json(m));
  r.phi_prime = iso_matrix_from_json(field(j, "phi_prime"));
  r.k_final = small_int(field(j, "k_final"), "k_final");
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bott
