#pragma once

// Realizable elementary moves on Bott matrices and their induced ring
// isomorphisms:
//
//   switch(j): b_{j+1,j} = 0; exchange rows and columns j, j+1.
//   twist(j, v): v in F_{j-1}, v(beta_j - v) = 0; beta_j -> beta_j - 2v,
//                beta_i -> beta_i + b_ij v for i > j, g(y_j) = y'_j + v.

#include "bott/iso.hpp"

#include <string>
#include <vector>

namespace bott {

enum class MoveKind { Switch, Twist };

/// The serializable part of a move: what to do, not its result.
struct MoveSpec {
  MoveKind kind = MoveKind::Switch;
  int j = 1;
  IntVector v;  // twist only

  static MoveSpec make_switch(int j) { return {MoveKind::Switch, j, {}}; }
  static MoveSpec make_twist(int j, IntVector v) { return {MoveKind::Twist, j, std::move(v)}; }

  friend bool operator==(const MoveSpec&, const MoveSpec&) = default;
};

class Move {
 public:
  MoveKind kind() const { return spec_.kind; }
  int j() const { return spec_.j; }
  /// Twist class (zero for a switch).
  Class2 v() const;
  const MoveSpec& spec() const { return spec_; }

  const BottMatrix& before() const { return induced_.source(); }
  const BottMatrix& after() const { return induced_.target(); }
  /// Isomorphism from the ring of before() to the ring of after().
  const GradedIso& induced() const { return induced_; }

  friend Move switch_move(const BottMatrix& b, int j);
  friend Move twist_move(const BottMatrix& b, int j, const IntVector& v);

 private:
  Move(MoveSpec spec, GradedIso induced) : spec_(std::move(spec)), induced_(std::move(induced)) {}

  MoveSpec spec_;
  GradedIso induced_;
};

/// Throws RangeError or SwitchBlocked.
Move switch_move(const BottMatrix& b, int j);
/// Throws RangeError or TwistInvalid.
Move twist_move(const BottMatrix& b, int j, const IntVector& v);
Move twist_move(const BottMatrix& b, int j, const Class2& v);
Move apply_spec(const BottMatrix& b, const MoveSpec& spec);

/// Move from after() back to before() whose induced isomorphism inverts m's.
Move inverse_move(const Move& m);

struct ReplayResult {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

/// A chain of moves start -> ... -> end together with the composite isomorphism.
class MoveSeq {
 public:
  explicit MoveSeq(BottMatrix start);

  /// Recomputes every move from its spec.
  static MoveSeq build(const BottMatrix& start, const std::vector<MoveSpec>& specs);
  /// Trusts the given pieces; use replay() to check them.
  static MoveSeq from_parts(BottMatrix start, std::vector<Move> moves, GradedIso composite);

  /// Appends a move; throws ContextMismatch if it does not start at end().
  void push(Move m);
  void append(const MoveSeq& other);

  const BottMatrix& start() const { return start_; }
  const BottMatrix& end() const { return composite_.target(); }
  const std::vector<Move>& moves() const { return moves_; }
  const GradedIso& composite() const { return composite_; }
  bool empty() const { return moves_.empty(); }
  std::size_t size() const { return moves_.size(); }

  std::vector<MoveSpec> specs() const;

  /// The reversed chain end -> start made of inverse moves.
  MoveSeq inverse() const;

 private:
  BottMatrix start_;
  std::vector<Move> moves_;
  GradedIso composite_;
};

/// Re-verifies chaining, every move from scratch, and the composite.
ReplayResult replay(const MoveSeq& seq);

std::string to_string(MoveKind kind);

}  // namespace bott
