#include "bott/moves.hpp"

#include <optional>

namespace bott {

std::string to_string(MoveKind kind) { return kind == MoveKind::Switch ? "switch" : "twist"; }

Class2 Move::v() const {
  if (spec_.kind == MoveKind::Switch) return Class2::zero(before());
  return Class2(before(), spec_.v);
}

Move switch_move(const BottMatrix& b, int j) {
  const int n = b.n();
  if (j < 1 || j >= n) {
    throw RangeError("switch needs 1 <= j < n, got j=" + std::to_string(j) + ", n=" + std::to_string(n));
  }
  if (b.at(j + 1, j) != 0) {
    throw SwitchBlocked("b_{" + std::to_string(j + 1) + "," + std::to_string(j) + "} = " +
                        b.at(j + 1, j).str() + " is nonzero");
  }
  auto swap_index = [j](int i) { return i == j ? j + 1 : (i == j + 1 ? j : i); };
  std::vector<IntVector> rows(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    for (int m = 1; m < i; ++m) rows[i - 1].push_back(b.at(swap_index(i), swap_index(m)));
  }
  BottMatrix after = BottMatrix::from_rows(n, std::move(rows));

  IntMatrix c = IntMatrix::identity(n);
  c.at(j, j) = 0;
  c.at(j + 1, j + 1) = 0;
  c.at(j, j + 1) = 1;
  c.at(j + 1, j) = 1;
  try {
    return Move(MoveSpec::make_switch(j), make_iso(b, std::move(after), std::move(c)));
  } catch (const BottError& e) {
    throw ContractViolation(std::string("switch produced an invalid isomorphism: ") + e.what());
  }
}

Move twist_move(const BottMatrix& b, int j, const IntVector& v) {
  const int n = b.n();
  if (j < 1 || j > n) {
    throw RangeError("twist needs 1 <= j <= n, got j=" + std::to_string(j) + ", n=" + std::to_string(n));
  }
  if (v.size() != static_cast<std::size_t>(n)) {
    throw ShapeError("twist class has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
  }
  if (height(v) >= j) {
    throw TwistInvalid("twist class has height " + std::to_string(height(v)) + ", must be below " +
                       std::to_string(j));
  }
  IntVector beta_minus_v = b.alpha(j).coeffs();
  for (int m = 0; m < n; ++m) beta_minus_v[m] -= v[m];
  if (!product_vanishes(b, v, beta_minus_v)) {
    throw TwistInvalid("v(beta_" + std::to_string(j) + " - v) is nonzero");
  }

  std::vector<IntVector> rows = b.rows();
  for (int m = 1; m < j; ++m) rows[j - 1][m - 1] -= 2 * v[m - 1];
  for (int i = j + 1; i <= n; ++i) {
    const Integer bij = b.at(i, j);
    if (bij == 0) continue;
    for (int m = 1; m < j; ++m) rows[i - 1][m - 1] += bij * v[m - 1];
  }
  BottMatrix after = BottMatrix::from_rows(n, std::move(rows));

  IntMatrix c = IntMatrix::identity(n);
  for (int m = 1; m < j; ++m) c.at(j, m) = v[m - 1];
  try {
    return Move(MoveSpec::make_twist(j, v), make_iso(b, std::move(after), std::move(c)));
  } catch (const BottError& e) {
    throw ContractViolation(std::string("twist produced an invalid isomorphism: ") + e.what());
  }
}

Move twist_move(const BottMatrix& b, int j, const Class2& v) {
  if (v.context() != b) throw ContextMismatch("twist class is not in the ring being twisted");
  return twist_move(b, j, v.coeffs());
}

Move apply_spec(const BottMatrix& b, const MoveSpec& spec) {
  if (spec.kind == MoveKind::Switch) return switch_move(b, spec.j);
  return twist_move(b, spec.j, spec.v);
}

Move inverse_move(const Move& m) {
  if (m.kind() == MoveKind::Switch) return switch_move(m.after(), m.j());
  IntVector neg = m.spec().v;
  for (auto& x : neg) x = -x;
  return twist_move(m.after(), m.j(), neg);
}

// ---------------------------------------------------------------------------
// MoveSeq

MoveSeq::MoveSeq(BottMatrix start) : start_(start), composite_(identity_iso(start)) {}

MoveSeq MoveSeq::build(const BottMatrix& start, const std::vector<MoveSpec>& specs) {
  MoveSeq seq(start);
  for (const auto& s : specs) seq.push(apply_spec(seq.end(), s));
  return seq;
}

MoveSeq MoveSeq::from_parts(BottMatrix start, std::vector<Move> moves, GradedIso composite) {
  MoveSeq seq(std::move(start));
  seq.moves_ = std::move(moves);
  seq.composite_ = std::move(composite);
  return seq;
}

void MoveSeq::push(Move m) {
  if (m.before() != end()) throw ContextMismatch("move does not start where the sequence ends");
  composite_ = compose(m.induced(), composite_);
  moves_.push_back(std::move(m));
}

void MoveSeq::append(const MoveSeq& other) {
  for (const auto& m : other.moves()) push(m);
}

std::vector<MoveSpec> MoveSeq::specs() const {
  std::vector<MoveSpec> out;
  out.reserve(moves_.size());
  for (const auto& m : moves_) out.push_back(m.spec());
  return out;
}

MoveSeq MoveSeq::inverse() const {
  MoveSeq out(end());
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) out.push(inverse_move(*it));
  return out;
}

ReplayResult replay(const MoveSeq& seq) {
  auto fail = [](std::string msg) { return ReplayResult{false, std::move(msg)}; };
  BottMatrix current = seq.start();
  IntMatrix product = IntMatrix::identity(current.n());
  for (std::size_t idx = 0; idx < seq.moves().size(); ++idx) {
    const Move& m = seq.moves()[idx];
    const std::string where = "move " + std::to_string(idx + 1) + " (" + to_string(m.kind()) +
                              " at j=" + std::to_string(m.j()) + ")";
    if (m.before() != current) return fail(where + ": does not start where the previous move ended");
    std::optional<Move> fresh;
    try {
      fresh.emplace(apply_spec(current, m.spec()));
    } catch (const BottError& e) {
      return fail(where + ": " + e.what());
    }
    if (fresh->after() != m.after()) return fail(where + ": recorded result matrix is wrong");
    if (fresh->induced().matrix() != m.induced().matrix()) return fail(where + ": recorded isomorphism is wrong");
    IsoCheck check = check_iso(m.before(), m.after(), m.induced().matrix());
    if (!check.ok) return fail(where + ": induced map is not an isomorphism: " + check.detail);
    product = product * m.induced().matrix();
    current = m.after();
  }
  if (seq.composite().source() != seq.start()) return fail("composite does not start at the sequence start");
  if (seq.composite().target() != current) return fail("composite does not end at the last matrix");
  if (seq.composite().matrix() != product) return fail("composite is not the product of the move isomorphisms");
  return {};
}

}  // namespace bott
