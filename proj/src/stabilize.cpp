#include "bott/stabilize.hpp"

#include "bott/structure.hpp"

#include <sstream>

namespace bott {

namespace {

std::string idx(int i) { return std::to_string(i); }

std::string show(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t q = 0; q < v.size(); ++q) os << (q ? "," : "") << v[q];
  os << ']';
  return os.str();
}

// beta_i truncated to the y_j with k < j < i.
IntVector bar_beta(const BottMatrix& b, int i, int k) {
  IntVector out(static_cast<std::size_t>(b.n()), 0);
  for (int j = k + 1; j < i; ++j) out[j - 1] = b.at(i, j);
  return out;
}

IntVector full_beta(const BottMatrix& b, int i) {
  IntVector out(static_cast<std::size_t>(b.n()), 0);
  for (int j = 1; j < i; ++j) out[j - 1] = b.at(i, j);
  return out;
}

// phi(alpha_i) as a row vector.
IntVector image_of_alpha(const GradedIso& phi, int i) {
  IntVector out(static_cast<std::size_t>(phi.n()), 0);
  for (int j = 1; j < i; ++j) {
    const Integer& a = phi.source().at(i, j);
    if (a == 0) continue;
    for (int m = 1; m <= phi.n(); ++m) out[m - 1] += a * phi.matrix().at(j, m);
  }
  return out;
}

IntVector scaled(const Integer& s, IntVector v) {
  for (auto& x : v) x *= s;
  return v;
}

IntVector plus(IntVector a, const IntVector& b) {
  for (std::size_t q = 0; q < a.size(); ++q) a[q] += b[q];
  return a;
}

IntVector minus(IntVector a, const IntVector& b) {
  for (std::size_t q = 0; q < a.size(); ++q) a[q] -= b[q];
  return a;
}

// Moves issued by the key step must be admissible; a refusal means a checked
// identity above was insufficient, which is a bug here, not bad input.
template <typename F>
Move issue(const char* what, F&& make) {
  try {
    return make();
  } catch (const BottError& e) {
    throw ContractViolation(std::string(what) + " refused: " + e.what());
  }
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractViolation(msg);
}

void require_path(bool cond, const std::string& msg) {
  if (!cond) throw ProofPathViolation(msg);
}

}  // namespace

std::string to_string(KeyCase c) {
  switch (c) {
    case KeyCase::Zero: return "zero";
    case KeyCase::Even: return "even";
    case KeyCase::Odd: return "odd";
  }
  return "?";
}

std::optional<XkDecomposition> decompose_xk(const GradedIso& phi, int k) {
  const int n = phi.n();
  if (k < 0 || k >= n) throw RangeError("k = " + idx(k) + " outside 0.." + idx(n - 1));
  if (!is_stable(phi, k)) throw PreconditionError("isomorphism is not " + idx(k) + "-stable");
  const IntVector v = phi.matrix().row(k + 1);
  const int ell = height(v);
  if (ell <= k + 1) return std::nullopt;

  const Integer& c = v[ell - 1];
  const BottMatrix& b = phi.target();
  for (int j = k + 1; j < ell; ++j) {
    if (2 * v[j - 1] != -c * b.at(ell, j)) {
      throw DecompositionInconsistent("coefficient of y_" + idx(j) + " in phi(x_" + idx(k + 1) + ") is " +
                                      v[j - 1].str() + ", expected -(" + c.str() + "/2) * b_{" + idx(ell) +
                                      "," + idx(j) + "}");
    }
  }
  XkDecomposition out;
  out.ell = ell;
  out.eps = Half::from_twice(c);
  out.w.assign(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= k; ++j) out.w[j - 1] = v[j - 1];
  return out;
}

KeyStepResult key_step(const GradedIso& phi, int k) {
  const int n = phi.n();
  auto dec = decompose_xk(phi, k);
  if (!dec) throw PreconditionError("phi(x_" + idx(k + 1) + ") already lies in F_" + idx(k + 1));
  const BottMatrix& b = phi.target();
  const int ell = dec->ell;
  const Integer p = b.at(ell, ell - 1);
  const KeyCase kind = p == 0 ? KeyCase::Zero : is_even(p) ? KeyCase::Even : KeyCase::Odd;
  if (kind == KeyCase::Odd && ell == k + 2) {
    throw OddAtBoundary("b_{" + idx(ell) + "," + idx(ell - 1) + "} = " + p.str() + " is odd and ell = k+2 = " +
                        idx(ell));
  }

  // u = (phi(alpha_{k+1}) - 2w) / eps, computed as 2u = 4(phi(alpha) - 2w) / (2 eps).
  const Integer& e2 = dec->eps.twice();
  const IntVector phi_alpha = image_of_alpha(phi, k + 1);
  IntVector twice_u(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    Integer num = 4 * (phi_alpha[m] - 2 * dec->w[m]);
    require(num % e2 == 0, "u has a denominator other than 1 or 2 at y_" + idx(m + 1));
    twice_u[m] = num / e2;
  }
  const HalfClass2 u = HalfClass2::from_twice(twice_u);
  const IntVector beta_l = full_beta(b, ell);
  const IntVector bar_l = bar_beta(b, ell, k);

  // beta_ell = bar beta_ell + u/2
  require(scaled(4, minus(beta_l, bar_l)) == twice_u,
          "beta_" + idx(ell) + " - bar beta_" + idx(ell) + " != u/2 with 2u = " + show(twice_u));
  IntVector u_int = twice_u;
  for (auto& x : u_int) x /= 2;  // exact: 4 divides twice_u by the line above
  // bar beta_ell (bar beta_ell + u) = 0
  require(product_vanishes(b, bar_l, plus(bar_l, u_int)),
          "bar beta_" + idx(ell) + " (bar beta_" + idx(ell) + " + u) != 0");

  const IntVector bar_prev = bar_beta(b, ell - 1, k);
  if (kind != KeyCase::Zero) {
    // 2 bar beta_ell = p (2 y_{ell-1} - bar beta_{ell-1})
    IntVector rhs = scaled(-p, bar_prev);
    rhs[ell - 2] += 2 * p;
    require(scaled(2, bar_l) == rhs, "bar beta_" + idx(ell) + " is not p (y_" + idx(ell - 1) + " - bar beta_" +
                                         idx(ell - 1) + " / 2)");
  }

  KeyStepTrace trace;
  trace.k = k;
  trace.ell = ell;
  trace.p = p;
  trace.eps = dec->eps;
  trace.w = dec->w;
  trace.u = u;
  trace.kind = kind;
  trace.before = b;

  MoveSeq g(b);
  switch (kind) {
    case KeyCase::Zero:
      g.push(issue("switch", [&] { return switch_move(g.end(), ell - 1); }));
      break;
    case KeyCase::Even: {
      IntVector v(static_cast<std::size_t>(n), 0);
      v[ell - 2] = p / 2;
      require(product_vanishes(b, v, minus(beta_l, v)),
              "v = (p/2) y_" + idx(ell - 1) + " does not satisfy v (beta_" + idx(ell) + " - v) = 0");
      g.push(issue("twist", [&] { return twist_move(g.end(), ell, v); }));
      g.push(issue("switch", [&] { return switch_move(g.end(), ell - 1); }));
      break;
    }
    case KeyCase::Odd: {
      // p (beta_{ell-1} - bar beta_{ell-1}) = -u
      require(scaled(p, minus(full_beta(b, ell - 1), bar_prev)) == scaled(-1, u_int),
              "p (beta_" + idx(ell - 1) + " - bar beta_" + idx(ell - 1) + ") != -u");
      // bar beta_{ell-1} (p bar beta_{ell-1} - 2u) = 0
      require(product_vanishes(b, bar_prev, minus(scaled(p, bar_prev), scaled(2, u_int))),
              "bar beta_" + idx(ell - 1) + " (bar beta_" + idx(ell - 1) + "/2 - u/p) != 0");
      IntVector v = bar_prev;
      for (auto& x : v) {
        require(is_even(x), "bar beta_" + idx(ell - 1) + " = " + show(bar_prev) + " is not divisible by 2");
        x /= 2;
      }
      g.push(issue("twist", [&] { return twist_move(g.end(), ell - 1, v); }));
      const BottMatrix& b1 = g.end();
      for (int j = k + 1; j < ell - 1; ++j) {
        require(b1.at(ell - 1, j) == 0, "after twisting, b'_{" + idx(ell - 1) + "," + idx(j) + "} = " +
                                            b1.at(ell - 1, j).str());
      }
      require(b1.at(ell, ell - 2) == 0,
              "after twisting, b'_{" + idx(ell) + "," + idx(ell - 2) + "} = " + b1.at(ell, ell - 2).str());
      g.push(issue("switch", [&] { return switch_move(g.end(), ell - 2); }));
      require(g.end().at(ell, ell - 1) == 0, "after the first switch, b''_{" + idx(ell) + "," + idx(ell - 1) + "} != 0");
      g.push(issue("switch", [&] { return switch_move(g.end(), ell - 1); }));
      break;
    }
  }

  GradedIso phi_new = compose(g.composite(), phi);
  const BottMatrix& after = g.end();
  const int keep = kind == KeyCase::Odd ? ell - 2 : ell - 1;
  for (int i = 1; i < keep; ++i) {
    require(after.row(i) == b.row(i), "row " + idx(i) + " of the target changed");
  }
  require(is_stable(phi_new, k), "key step broke " + idx(k) + "-stability");
  const int new_height = height(phi_new.matrix().row(k + 1));
  require(new_height < ell, "height of the image of x_" + idx(k + 1) + " did not drop below " + idx(ell));

  trace.after = after;
  trace.moves = g.specs();
  trace.new_height = new_height;
  return {std::move(g), std::move(phi_new), std::move(trace)};
}

RaiseResult raise_stability(const GradedIso& phi, int k) {
  const int n = phi.n();
  if (k < 0 || k >= n) throw RangeError("k = " + idx(k) + " outside 0.." + idx(n - 1));
  if (!is_stable(phi, k)) throw PreconditionError("isomorphism is not " + idx(k) + "-stable");

  const BottMatrix& a = phi.source();
  RaiseResult out{MoveSeq(a), MoveSeq(phi.target()), phi, {}};
  out.trace.k = k;
  out.trace.reached = k + 1;
  auto tracked = [k](const GradedIso& iso) { return height(iso.matrix().row(k + 1)); };
  if (tracked(phi) <= k + 1) return out;

  // Target side: push phi(x_{k+1}) down to height k+2.
  GradedIso psi = phi;
  while (tracked(psi) > k + 2) {
    KeyStepResult step = key_step(psi, k);
    out.g.append(step.g);
    psi = std::move(step.phi_new);
    out.trace.steps.push_back({Side::Target, std::move(step.trace)});
  }
  const BottMatrix bp = psi.target();
  if (is_even(bp.at(k + 2, k + 1))) {
    KeyStepResult step = key_step(psi, k);
    out.g.append(step.g);
    psi = std::move(step.phi_new);
    out.trace.steps.push_back({Side::Target, std::move(step.trace)});
    require_path(tracked(psi) <= k + 1, "final target step left x_" + idx(k + 1) + " above F_" + idx(k + 1));
    out.phi_prime = psi;
    require(out.phi_prime == compose(out.g.composite(), phi), "phi' != g o phi");
    return out;
  }
  if (k + 2 >= n) {
    throw OddAtBoundary("b'_{" + idx(k + 2) + "," + idx(k + 1) + "} is odd with k+2 = n; no room to raise");
  }

  // Odd boundary: k+1 and k+2 must share a level and a block for B'.
  {
    DecompositionTower tb = decompose_tower(bp);
    const bool level = tb.source_level(k + 1) == tb.source_level(k + 2);
    out.trace.claims.push_back({"same_level", bp, k + 1, k + 2, level});
    require_path(level, "lev(y'_" + idx(k + 1) + ") != lev(y'_" + idx(k + 2) + ")");
    const bool block = same_block(tb, k + 1, k + 2);
    out.trace.claims.push_back({"same_block", bp, k + 1, k + 2, block});
    require_path(block, idx(k + 1) + " and " + idx(k + 2) + " are not in the same block for B'");
  }

  // Source side: run the key step on the inverse, with moves acting on A.
  out.trace.source_detour = true;
  GradedIso chi = invert(psi);
  MoveSeq h(a);
  while (tracked(chi) > k + 2) {
    if (tracked(chi) == k + 3) {
      const BottMatrix& ap = chi.target();
      const bool block = same_block(ap, k + 1, k + 3);
      out.trace.claims.push_back({"same_block", ap, k + 1, k + 3, block});
      require_path(block, idx(k + 1) + " and " + idx(k + 3) + " are not in the same block for A'");
      const bool even = is_even(ap.at(k + 3, k + 2));
      out.trace.claims.push_back({"even_entry", ap, k + 3, k + 2, even});
      require_path(even, "a'_{" + idx(k + 3) + "," + idx(k + 2) + "} = " + ap.at(k + 3, k + 2).str() + " is odd");
    }
    KeyStepResult step = key_step(chi, k);
    for (int i = 1; i <= k + 1; ++i) {
      require_path(step.g.end().row(i) == a.row(i), "source step changed row " + idx(i) + " of A");
    }
    h.append(step.g);
    chi = std::move(step.phi_new);
    out.trace.steps.push_back({Side::Source, std::move(step.trace)});
  }
  out.f = h.inverse();
  out.phi_prime = compose(psi, out.f.composite());
  require(out.phi_prime == invert(chi), "phi' does not invert the source-side isomorphism");
  require(out.phi_prime == compose(out.g.composite(), compose(phi, out.f.composite())), "phi' != g o phi o f");
  require_path(is_stable(out.phi_prime, k + 2), "source detour did not reach " + idx(k + 2) + "-stability");
  out.trace.reached = k + 2;
  return out;
}

StabilizationCertificate stabilize_full(const GradedIso& phi) {
  const int n = phi.n();
  StabilizationCertificate cert{phi.source(), phi.target(), phi, MoveSeq(phi.source()), MoveSeq(phi.target()),
                                phi, max_stable(phi), {}};
  const std::size_t cap = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 2);
  std::size_t steps = 0;
  GradedIso cur = phi;
  int k = cert.k_final;
  while (k < n - 2) {
    RaiseResult r = raise_stability(cur, k);
    steps += r.trace.steps.size();
    if (steps > cap) {
      throw NonTermination(std::to_string(steps) + " key steps exceed the cap " + std::to_string(cap));
    }
    MoveSeq f = r.f;
    f.append(cert.f_seq);
    cert.f_seq = std::move(f);
    cert.g_seq.append(r.g);
    cur = r.phi_prime;
    const int next = max_stable(cur);
    require_path(next > k, "stability did not increase past " + idx(k));
    k = next;
    cert.trace.push_back(std::move(r.trace));
  }
  cert.phi_prime = cur;
  cert.k_final = k;
  require(cur == compose(cert.g_seq.composite(), compose(phi, cert.f_seq.composite())),
          "phi' != g o phi o f for the accumulated sequences");
  return cert;
}

CertificateRecord to_record(const StabilizationCertificate& cert) {
  CertificateRecord r;
  r.a = cert.a;
  r.b = cert.b;
  r.phi = cert.phi.matrix();
  r.a_prime = cert.f_seq.start();
  r.b_prime = cert.g_seq.end();
  r.f_moves = cert.f_seq.specs();
  r.g_moves = cert.g_seq.specs();
  r.phi_prime = cert.phi_prime.matrix();
  r.k_final = cert.k_final;
  return r;
}

VerifyResult verify_record(const CertificateRecord& r) {
  auto fail = [](std::string msg) { return VerifyResult{false, std::move(msg)}; };
  if (r.schema_version != kCertificateSchemaVersion) {
    return fail("unsupported schema version " + std::to_string(r.schema_version));
  }
  const int n = r.a.n();
  if (r.b.n() != n || r.a_prime.n() != n || r.b_prime.n() != n) return fail("matrix sizes differ");
  if (r.phi.n() != n || r.phi_prime.n() != n) return fail("isomorphism matrices have the wrong size");

  IsoCheck c = check_iso(r.a, r.b, r.phi);
  if (!c.ok) return fail("phi is not an isomorphism: " + c.error + " " + c.detail);
  c = check_iso(r.a_prime, r.b_prime, r.phi_prime);
  if (!c.ok) return fail("phi' is not an isomorphism: " + c.error + " " + c.detail);

  auto rebuild = [&](const BottMatrix& start, const std::vector<MoveSpec>& specs, const char* name,
                     std::optional<MoveSeq>& seq) -> std::string {
    try {
      seq = MoveSeq::build(start, specs);
    } catch (const BottError& e) {
      return std::string(name) + " does not replay: " + e.what();
    }
    ReplayResult rr = replay(*seq);
    if (!rr.ok) return std::string(name) + " does not replay: " + rr.diagnostic;
    return {};
  };
  std::optional<MoveSeq> f, g;
  if (auto msg = rebuild(r.a_prime, r.f_moves, "f", f); !msg.empty()) return fail(msg);
  if (auto msg = rebuild(r.b, r.g_moves, "g", g); !msg.empty()) return fail(msg);
  if (f->end() != r.a) return fail("f does not end at A");
  if (g->end() != r.b_prime) return fail("g does not end at B'");

  const IntMatrix expected = f->composite().matrix() * r.phi * g->composite().matrix();
  if (expected != r.phi_prime) return fail("phi' != g o phi o f");

  const GradedIso phi_prime = make_iso(r.a_prime, r.b_prime, r.phi_prime);
  const int k = max_stable(phi_prime);
  if (k != r.k_final) return fail("claimed k_final " + std::to_string(r.k_final) + " but phi' is " + std::to_string(k) + "-stable");
  if (k < n - 2) return fail("phi' is only " + std::to_string(k) + "-stable");
  return {};
}

VerifyResult verify_certificate(const StabilizationCertificate& cert) { return verify_record(to_record(cert)); }

}  // namespace bott
