#include "bott/stabilize.hpp"
#include "bott/iso_search.hpp"
#include "bott/structure.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <optional>

using namespace bott;
using namespace bott::testing;

namespace {

BottMatrix m2(int a21) { return BottMatrix::from_rows(2, {{}, {a21}}); }

GradedIso find_iso(const BottMatrix& a, const BottMatrix& b, int bound, const IntVector& first_row) {
  for (const auto& phi : search_isos(a, b, bound)) {
    if (phi.matrix().row(1) == first_row) return phi;
  }
  FAIL("no isomorphism with the requested first row");
  return identity_iso(a);
}

// A random isomorphism built from moves on both sides; usually far from stable.
GradedIso random_unstable(Rng& rng, int n) {
  BottMatrix a = random_sparse_matrix(rng, n, 3);
  return random_move_iso(rng, a, uniform(rng, 0, 4), uniform(rng, 1, 6));
}

// Isomorphisms found by search between a random matrix and a move-equivalent
// one. These include the automorphisms that force the odd-case paths.
std::vector<GradedIso> searched_pool(Rng& rng, int pairs) {
  std::vector<GradedIso> out;
  for (int t = 0; t < pairs; ++t) {
    const int n = uniform(rng, 3, 4);
    BottMatrix a = uniform(rng, 0, 1) ? random_sparse_matrix(rng, n, 2) : random_matrix(rng, n, 1);
    BottMatrix b = random_moves(rng, a, uniform(rng, 0, 5)).end();
    for (auto& phi : search_isos(a, b, 2)) out.push_back(std::move(phi));
  }
  return out;
}

std::vector<GradedIso> mixed_pool(Rng& rng, int random_count, int pairs) {
  std::vector<GradedIso> out = searched_pool(rng, pairs);
  for (int t = 0; t < random_count; ++t) out.push_back(random_unstable(rng, uniform(rng, 2, 6)));
  return out;
}

void check_step(const GradedIso& phi, int k, const KeyStepResult& r) {
  const KeyStepTrace& t = r.trace;
  REQUIRE(t.k == k);
  REQUIRE(t.ell == height(phi.matrix().row(k + 1)));
  REQUIRE(t.p == phi.target().at(t.ell, t.ell - 1));
  if (t.p == 0) {
    REQUIRE(t.kind == KeyCase::Zero);
    REQUIRE(t.moves == std::vector<MoveSpec>{MoveSpec::make_switch(t.ell - 1)});
  } else if (is_even(t.p)) {
    REQUIRE(t.kind == KeyCase::Even);
    REQUIRE(t.moves.size() == 2);
    REQUIRE(t.moves[0].kind == MoveKind::Twist);
    REQUIRE(t.moves[0].j == t.ell);
    IntVector v(static_cast<std::size_t>(phi.n()), 0);
    v[t.ell - 2] = t.p / 2;
    REQUIRE(t.moves[0].v == v);
    REQUIRE(t.moves[1] == MoveSpec::make_switch(t.ell - 1));
  } else {
    REQUIRE(t.kind == KeyCase::Odd);
    REQUIRE(t.ell > k + 2);
    REQUIRE(t.moves.size() == 3);
    REQUIRE(t.moves[0].kind == MoveKind::Twist);
    REQUIRE(t.moves[0].j == t.ell - 1);
    REQUIRE(t.moves[1] == MoveSpec::make_switch(t.ell - 2));
    REQUIRE(t.moves[2] == MoveSpec::make_switch(t.ell - 1));
  }
  REQUIRE(replay(r.g).ok);
  REQUIRE(r.g.start() == phi.target());
  REQUIRE(r.phi_new == compose(r.g.composite(), phi));
  REQUIRE(is_stable(r.phi_new, k));
  REQUIRE(r.trace.new_height == height(r.phi_new.matrix().row(k + 1)));
  REQUIRE(r.trace.new_height < t.ell);
  const int keep = t.kind == KeyCase::Odd ? t.ell - 2 : t.ell - 1;
  for (int i = 1; i < keep; ++i) REQUIRE(r.g.end().row(i) == phi.target().row(i));
}

void check_claims(const RaiseTrace& t) {
  for (const auto& c : t.claims) {
    if (c.rule == "same_level") {
      DecompositionTower tw = decompose_tower(c.matrix);
      REQUIRE((tw.source_level(c.i) == tw.source_level(c.j)) == c.holds);
    } else if (c.rule == "same_block") {
      REQUIRE(same_block(c.matrix, c.i, c.j) == c.holds);
    } else {
      REQUIRE(c.rule == "even_entry");
      REQUIRE(is_even(c.matrix.at(c.i, c.j)) == c.holds);
    }
    REQUIRE(c.holds);
  }
}

}  // namespace

TEST_CASE("decompose_xk") {
  BottMatrix z3 = BottMatrix::zero(3);
  for (int k = 0; k < 3; ++k) CHECK_FALSE(decompose_xk(identity_iso(z3), k).has_value());

  GradedIso hirz = make_iso(m2(0), m2(2), IntMatrix::from_rows({{1, 0}, {-1, 1}}));
  CHECK_FALSE(decompose_xk(hirz, 0).has_value());

  GradedIso phi = find_iso(m2(0), m2(2), 2, {-1, 1});
  auto d = decompose_xk(phi, 0);
  REQUIRE(d.has_value());
  CHECK(d->ell == 2);
  CHECK(d->eps == Half::from_twice(1));
  CHECK(d->w == IntVector{0, 0});

  GradedIso swap = make_iso(BottMatrix::zero(2), BottMatrix::zero(2), IntMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(decompose_xk(swap, 1), PreconditionError);
  CHECK_THROWS_AS(decompose_xk(swap, 2), RangeError);
}

TEST_CASE("key step: zero case") {
  BottMatrix z2 = BottMatrix::zero(2);
  GradedIso swap = make_iso(z2, z2, IntMatrix::from_rows({{0, 1}, {1, 0}}));
  KeyStepResult r = key_step(swap, 0);
  check_step(swap, 0, r);
  CHECK(r.trace.kind == KeyCase::Zero);
  CHECK(r.trace.new_height == 1);
  CHECK(max_stable(r.phi_new) == 2);
}

TEST_CASE("key step: even case") {
  BottMatrix b = BottMatrix::from_rows(3, {{}, {0}, {0, 2}});
  // y_3 - y_2 is the primitive square-zero class of height 3.
  GradedIso phi = find_iso(b, b, 2, {0, -1, 1});
  KeyStepResult r = key_step(phi, 0);
  check_step(phi, 0, r);
  CHECK(r.trace.kind == KeyCase::Even);
  CHECK(r.trace.ell == 3);
  CHECK(r.trace.eps == Half::from_twice(1));
  CHECK(r.trace.new_height <= 2);
}

TEST_CASE("key step: odd p next to the boundary") {
  BottMatrix f1 = m2(1);
  GradedIso phi = make_iso(f1, f1, IntMatrix::from_rows({{-1, 2}, {0, 1}}));
  CHECK_THROWS_AS(key_step(phi, 0), OddAtBoundary);
  CHECK_THROWS_AS(raise_stability(phi, 0), OddAtBoundary);
}

TEST_CASE("key step on random instances") {
  Rng rng(61);
  int zero = 0, even = 0, odd = 0;
  std::vector<GradedIso> pool = mixed_pool(rng, 400, 60);
  for (std::size_t q = 0, size = pool.size(); q < size; ++q) pool.push_back(invert(pool[q]));
  for (GradedIso phi : pool) {
    // Push each row down in turn until an odd boundary stops the target-only route.
    for (int k = max_stable(phi); k < phi.n() - 1; k = max_stable(phi)) {
      bool stuck = false;
      while (decompose_xk(phi, k)) {
        const int ell = height(phi.matrix().row(k + 1));
        const Integer p = phi.target().at(ell, ell - 1);
        if (!is_even(p) && ell == k + 2) {
          REQUIRE_THROWS_AS(key_step(phi, k), OddAtBoundary);
          stuck = true;
          break;
        }
        KeyStepResult r = key_step(phi, k);
        check_step(phi, k, r);
        zero += r.trace.kind == KeyCase::Zero;
        even += r.trace.kind == KeyCase::Even;
        odd += r.trace.kind == KeyCase::Odd;
        phi = r.phi_new;
      }
      if (stuck) break;
    }
  }
  CHECK(zero > 20);
  CHECK(even > 20);
  CHECK(odd > 5);
}

TEST_CASE("raise_stability") {
  BottMatrix h = BottMatrix::from_rows(3, {{}, {1}, {1, 0}});
  RaiseResult same = raise_stability(identity_iso(h), 0);
  CHECK(same.f.empty());
  CHECK(same.g.empty());
  CHECK(same.phi_prime == identity_iso(h));

  Rng rng(62);
  bool target_only = false, detour = false, source_moves = false;
  for (const GradedIso& phi : mixed_pool(rng, 300, 40)) {
    const int k = max_stable(phi);
    if (k >= phi.n() - 1) continue;
    std::optional<RaiseResult> got;
    try {
      got = raise_stability(phi, k);
    } catch (const OddAtBoundary&) {
      REQUIRE(k + 2 >= phi.n());
      continue;
    }
    const RaiseResult& r = *got;
    REQUIRE(replay(r.f).ok);
    REQUIRE(replay(r.g).ok);
    REQUIRE(r.f.end() == phi.source());
    REQUIRE(r.g.start() == phi.target());
    REQUIRE(r.phi_prime == compose(r.g.composite(), compose(phi, r.f.composite())));
    REQUIRE((is_stable(r.phi_prime, k + 1) || is_stable(r.phi_prime, k + 2)));
    REQUIRE(max_stable(r.phi_prime) > k);
    check_claims(r.trace);
    for (std::size_t s = 1; s < r.trace.steps.size(); ++s) {
      const auto& prev = r.trace.steps[s - 1];
      const auto& cur = r.trace.steps[s];
      if (prev.side == cur.side) REQUIRE(cur.trace.ell < prev.trace.ell);
    }
    if (r.trace.source_detour) {
      detour = true;
      source_moves = source_moves || (!r.f.empty() && !r.g.empty());
      REQUIRE(is_stable(r.phi_prime, k + 2));
      REQUIRE(r.trace.reached == k + 2);
      for (int i = 1; i <= k + 1; ++i) REQUIRE(r.f.start().row(i) == phi.source().row(i));
    } else if (!r.g.empty()) {
      target_only = true;
      REQUIRE(r.f.empty());
      REQUIRE(is_stable(r.phi_prime, k + 1));
    }
  }
  CHECK(target_only);
  CHECK(detour);
  CHECK(source_moves);
}

TEST_CASE("stabilize_full") {
  for (int n = 1; n <= 4; ++n) {
    BottMatrix z = BottMatrix::zero(n);
    StabilizationCertificate c = stabilize_full(identity_iso(z));
    CHECK(c.f_seq.empty());
    CHECK(c.g_seq.empty());
    CHECK(c.k_final == n);
    CHECK(verify_certificate(c).valid);
  }
  // n <= 2 needs nothing.
  GradedIso swap = make_iso(BottMatrix::zero(2), BottMatrix::zero(2), IntMatrix::from_rows({{0, 1}, {1, 0}}));
  StabilizationCertificate s = stabilize_full(swap);
  CHECK(s.g_seq.empty());
  CHECK(s.k_final == 0);
  CHECK(verify_certificate(s).valid);

  Rng rng(63);
  for (const GradedIso& phi : mixed_pool(rng, 300, 20)) {
    StabilizationCertificate c = stabilize_full(phi);
    const int n = phi.n();
    REQUIRE(c.k_final >= n - 2);
    REQUIRE(c.k_final == max_stable(c.phi_prime));
    REQUIRE(c.phi_prime == compose(c.g_seq.composite(), compose(phi, c.f_seq.composite())));
    REQUIRE(replay(c.f_seq).ok);
    REQUIRE(replay(c.g_seq).ok);
    REQUIRE(static_cast<int>(c.trace.size()) <= n);
    if (!c.trace.empty()) REQUIRE(c.trace.front().k == max_stable(phi));
    int prev = -1;
    for (const auto& round : c.trace) {
      REQUIRE(round.k > prev);
      REQUIRE(round.reached > round.k);
      check_claims(round);
      prev = round.k;
    }
    REQUIRE(verify_certificate(c).valid);
  }
}

TEST_CASE("verification rejects tampering") {
  Rng rng(64);
  int tampered = 0;
  for (const GradedIso& phi : mixed_pool(rng, 100, 10)) {
    if (tampered == 30) break;
    StabilizationCertificate c = stabilize_full(phi);
    if (c.g_seq.empty()) continue;
    CertificateRecord rec = to_record(c);
    REQUIRE(verify_record(rec).valid);

    CertificateRecord wrong_k = rec;
    wrong_k.k_final += 1;
    REQUIRE_FALSE(verify_record(wrong_k).valid);

    CertificateRecord wrong_entry = rec;
    wrong_entry.phi_prime.at(1, 1) += 1;
    VerifyResult v = verify_record(wrong_entry);
    REQUIRE_FALSE(v.valid);
    REQUIRE_FALSE(v.diagnostic.empty());

    CertificateRecord wrong_b = rec;
    wrong_b.b_prime = wrong_b.b_prime.with_entry(2, 1, wrong_b.b_prime.at(2, 1) + 1);
    REQUIRE_FALSE(verify_record(wrong_b).valid);

    CertificateRecord dropped = rec;
    dropped.g_moves.pop_back();
    REQUIRE_FALSE(verify_record(dropped).valid);

    CertificateRecord old = rec;
    old.schema_version = 0;
    REQUIRE_FALSE(verify_record(old).valid);
    ++tampered;
  }
  CHECK(tampered == 30);
}
