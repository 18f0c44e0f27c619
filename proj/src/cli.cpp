#include "bott/cli.hpp"

#include "bott/iso_search.hpp"
#include "bott/json_io.hpp"
#include "bott/stabilize.hpp"
#include "bott/structure.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace bott::cli {

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

// "[1,-2,0]" or "1,-2,0".
IntVector parse_class_arg(const std::string& text, int n) {
  Json j;
  const std::string trimmed = text.find('[') == std::string::npos ? "[" + text + "]" : text;
  try {
    j = Json::parse(trimmed);
  } catch (const Json::exception&) {
    throw FormatError("cannot parse class \"" + text + "\"");
  }
  return class_from_json(j, n);
}

int search_bound_default() {
  const char* env = std::getenv("BOTT_SEARCH_BOUND");
  if (env == nullptr || *env == '\0') return kDefaultSearchBound;
  try {
    std::size_t used = 0;
    int b = std::stoi(env, &used);
    if (used == std::string(env).size() && b >= 0) return b;
  } catch (const std::exception&) {
  }
  throw FormatError(std::string("BOTT_SEARCH_BOUND must be a nonnegative integer, got \"") + env + "\"");
}

GradedIso load_iso(const std::string& a_path, const std::string& b_path, const std::string& c_path) {
  BottMatrix a = matrix_from_json(read_json_file(a_path));
  BottMatrix b = matrix_from_json(read_json_file(b_path));
  IntMatrix c = iso_matrix_from_json(read_json_file(c_path));
  return make_iso(a, b, c);
}

Json cmd_ring(const std::string& path, const std::optional<std::string>& square,
              const std::vector<std::string>& product) {
  BottMatrix a = matrix_from_json(read_json_file(path));
  const int n = a.n();
  if (square) {
    CohClass z = CohClass::from_class2(Class2(a, parse_class_arg(*square, n)));
    return Json{{"square", to_json(multiply(z, z))}};
  }
  if (!product.empty()) {
    CohClass s = CohClass::from_class2(Class2(a, parse_class_arg(product[0], n)));
    CohClass t = CohClass::from_class2(Class2(a, parse_class_arg(product[1], n)));
    return Json{{"product", to_json(multiply(s, t))}};
  }
  Json alphas = Json::array(), sq = Json::array();
  for (int i = 1; i <= n; ++i) {
    alphas.push_back(to_json(a.alpha(i).coeffs()));
    sq.push_back(alpha_squared_zero(a, i));
  }
  return Json{{"n", n}, {"alpha", alphas}, {"alpha_squared_zero", sq}};
}

Json cmd_sqzero(const std::string& path) {
  BottMatrix a = matrix_from_json(read_json_file(path));
  Json gens = Json::array();
  for (const auto& g : square_zero_generators(a)) {
    gens.push_back(Json{{"index", g.index},
                        {"gen", to_json(g.gen.coeffs())},
                        {"primitive", to_json(g.primitive_form.coeffs())}});
  }
  return Json{{"generators", gens}};
}

Json cmd_decompose(const std::string& path) {
  BottMatrix a = matrix_from_json(read_json_file(path));
  DecompositionTower t = decompose_tower(a);
  Json levels = Json::array(), blocks = Json::array(), switches = Json::array();
  for (int i = 1; i <= a.n(); ++i) levels.push_back(t.source_level(i));
  for (int s = 1; s <= t.stages(); ++s) {
    for (const auto& c : blocks_at(a, t, s).classes) blocks.push_back(c);
  }
  for (const auto& m : t.moves_applied) switches.push_back(m.j());
  auto part = qtrivial_partition(a);
  return Json{{"dims", t.dims},
              {"levels", levels},
              {"blocks", blocks},
              {"partition_if_qtrivial", part ? Json(*part) : Json(nullptr)},
              {"base", to_json(t.base)},
              {"switches", switches}};
}

int cmd_iso_check(const std::string& a_path, const std::string& b_path, const std::string& c_path,
                  std::ostream& out) {
  BottMatrix a = matrix_from_json(read_json_file(a_path));
  BottMatrix b = matrix_from_json(read_json_file(b_path));
  IntMatrix c = iso_matrix_from_json(read_json_file(c_path));
  IsoCheck check = check_iso(a, b, c);
  if (!check.ok) {
    Json j{{"valid", false}, {"error", check.error}, {"detail", check.detail}};
    if (check.failing_index > 0) j["failing_index"] = check.failing_index;
    out << dump(j);
    return kDomainError;
  }
  GradedIso phi = make_iso(a, b, c);
  SigmaEps se = extract_sigma_eps(phi);
  Json eps = Json::array();
  for (const auto& e : se.eps) eps.push_back(to_json(e.twice()));
  out << dump(Json{{"valid", true}, {"max_stable", max_stable(phi)}, {"sigma", se.sigma}, {"eps_times_2", eps}});
  return kOk;
}

Json cmd_iso_search(const std::string& a_path, const std::string& b_path, std::optional<int> bound, int jobs) {
  BottMatrix a = matrix_from_json(read_json_file(a_path));
  BottMatrix b = matrix_from_json(read_json_file(b_path));
  const int bnd = bound ? *bound : search_bound_default();
  Json isos = Json::array();
  for (const auto& phi : search_isos(a, b, bnd, std::max(jobs, 1))) isos.push_back(to_json(phi.matrix()));
  return Json{{"bound", bnd}, {"isos", isos}};
}

Json cmd_stabilize(const std::string& a_path, const std::string& b_path, const std::string& c_path,
                   const std::optional<std::string>& out_path) {
  GradedIso phi = load_iso(a_path, b_path, c_path);
  StabilizationCertificate cert = stabilize_full(phi);
  Json j = to_json(cert);
  if (!out_path) return j;
  std::ofstream f(*out_path);
  if (!f) throw FormatError("cannot write " + *out_path);
  f << dump(j);
  if (!f) throw FormatError("cannot write " + *out_path);
  return Json{{"k_initial", max_stable(phi)},
              {"k_final", cert.k_final},
              {"f_moves", cert.f_seq.size()},
              {"g_moves", cert.g_seq.size()},
              {"out", *out_path}};
}

int cmd_verify(const std::string& path, std::ostream& out) {
  Json j = read_json_file(path);
  VerifyResult r;
  try {
    r = verify_record(certificate_from_json(j));
  } catch (const BottError& e) {
    r = {false, e.what()};
  }
  Json res{{"valid", r.valid}};
  if (!r.valid) res["diagnostic"] = r.diagnostic;
  out << dump(res);
  return r.valid ? kOk : kDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomology rings of Bott towers and stabilization of their isomorphisms", "bott"};
  app.require_subcommand(1);

  std::string a_path, b_path, c_path, cert_path;
  std::optional<std::string> square, out_path;
  std::vector<std::string> product;
  std::optional<int> bound;
  int jobs = 1;

  auto* ring = app.add_subcommand("ring", "Ring data, or a square / product in normal form");
  ring->add_option("A", a_path, "matrix JSON")->required();
  ring->add_option("--square", square, "class as [t_1,...,t_n]");
  auto* prod = ring->add_option("--product", product, "two classes")->expected(2)->allow_extra_args(false);
  ring->get_option("--square")->excludes(prod);

  auto* sqzero = app.add_subcommand("sqzero", "Square-zero generators 2x_i - alpha_i");
  sqzero->add_option("A", a_path, "matrix JSON")->required();

  auto* decompose = app.add_subcommand("decompose", "Levels, blocks and the Q-trivial tower");
  decompose->add_option("A", a_path, "matrix JSON")->required();

  auto* check = app.add_subcommand("iso-check", "Validate an isomorphism and extract sigma, eps");
  check->add_option("A", a_path, "source matrix JSON")->required();
  check->add_option("B", b_path, "target matrix JSON")->required();
  check->add_option("C", c_path, "iso JSON")->required();

  auto* search = app.add_subcommand("iso-search", "All isomorphisms with bounded entries");
  search->add_option("A", a_path, "source matrix JSON")->required();
  search->add_option("B", b_path, "target matrix JSON")->required();
  search->add_option("--bound", bound, "entry bound (default 6 or BOTT_SEARCH_BOUND)")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* stab = app.add_subcommand("stabilize", "Stabilize an isomorphism and emit a certificate");
  stab->add_option("A", a_path, "source matrix JSON")->required();
  stab->add_option("B", b_path, "target matrix JSON")->required();
  stab->add_option("C", c_path, "iso JSON")->required();
  stab->add_option("--out", out_path, "certificate path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify-cert", "Replay and check a certificate");
  verify->add_option("cert", cert_path, "certificate JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*ring) {
      out << dump(cmd_ring(a_path, square, product));
    } else if (*sqzero) {
      out << dump(cmd_sqzero(a_path));
    } else if (*decompose) {
      out << dump(cmd_decompose(a_path));
    } else if (*check) {
      return cmd_iso_check(a_path, b_path, c_path, out);
    } else if (*search) {
      out << dump(cmd_iso_search(a_path, b_path, bound, jobs));
    } else if (*stab) {
      out << dump(cmd_stabilize(a_path, b_path, c_path, out_path));
    } else if (*verify) {
      return cmd_verify(cert_path, out);
    }
  } catch (const BottError& e) {
    out << dump(Json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}});
    return kDomainError;
  } catch (const Json::exception& e) {
    out << dump(Json{{"error", {{"kind", "FormatError"}, {"message", e.what()}}}});
    return kDomainError;
  }
  return kOk;
}

}  // namespace bott::cli
