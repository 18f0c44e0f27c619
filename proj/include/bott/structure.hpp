#pragma once

// Square-zero classes, well-ordering, the tower of Q-trivial stages with its
// levels, and the block structure at each level.

#include "bott/moves.hpp"
#include "bott/ring.hpp"

#include <map>
#include <optional>
#include <vector>

namespace bott {

/// alpha_i^2 = 0 in H*(B_n(A)).
bool alpha_squared_zero(const BottMatrix& a, int i);

struct SquareZeroGenerator {
  int index = 0;
  Class2 gen;             // 2x_i - alpha_i
  Class2 primitive_form;  // gen / 2 when every coefficient is even
};

/// One entry per i with alpha_i^2 = 0, ascending.
std::vector<SquareZeroGenerator> square_zero_generators(const BottMatrix& a);

/// Every nonzero z with coefficients in [-bound, bound] and z^2 = 0, found by
/// enumeration and full ring multiplication. Lexicographic order.
std::vector<Class2> square_zero_bruteforce(const BottMatrix& a, int bound);

struct WellOrdering {
  BottMatrix result;
  std::vector<Move> moves;
};

/// alpha_j^2 = 0 implies alpha_i^2 = 0 for all i < j.
bool is_well_ordered(const BottMatrix& a);

/// Bubbles square-zero rows upward with adjacent switches. Throws
/// WellOrderFailure if a needed switch is blocked.
WellOrdering well_order(const BottMatrix& a);

/// Tower of Q-trivial stages. The base is the well-ordered matrix reached from
/// the source by switches; position maps source generators to base generators.
struct DecompositionTower {
  BottMatrix source;
  BottMatrix base;
  std::vector<int> dims;  // d_1 < d_2 < ... < d_m = n
  std::vector<Move> moves_applied;
  std::vector<int> position;  // position[i-1] = base index of source x_i

  int stages() const { return static_cast<int>(dims.size()); }
  /// dim Q_s; 0 for s = 0.
  int dim(int stage) const;
  /// Level of the base generator x_r.
  int base_level(int r) const;
  /// Level of the source generator x_i.
  int source_level(int i) const;
  /// Level of a class written in source coordinates; 0 for the zero class.
  int source_level(const Class2& c) const;
};

DecompositionTower decompose_tower(const BottMatrix& a);

/// Level of a class in the context of t.base; 0 for the zero class.
int level(const Class2& c, const DecompositionTower& t);

/// Blocks of one level. Indices and classes are in source coordinates.
struct BlockStructure {
  int level = 0;
  std::map<int, IntVector> z;     // primitive square-zero representative z_r
  std::map<int, IntVector> reps;  // z_r mod 2
  std::vector<std::vector<int>> classes;
};

BlockStructure blocks_at(const BottMatrix& a, const DecompositionTower& t, int level);

bool same_block(const BottMatrix& a, int i, int j);
bool same_block(const DecompositionTower& t, int i, int j);

/// Block sizes (descending) when every alpha_i^2 vanishes; nullopt otherwise.
std::optional<std::vector<int>> qtrivial_partition(const BottMatrix& a);

}  // namespace bott
