#include "bott/structure.hpp"

#include <algorithm>
#include <functional>

namespace bott {

bool alpha_squared_zero(const BottMatrix& a, int i) {
  const IntVector alpha = a.alpha(i).coeffs();
  return product_vanishes(a, alpha, alpha);
}

std::vector<SquareZeroGenerator> square_zero_generators(const BottMatrix& a) {
  std::vector<SquareZeroGenerator> out;
  for (int i = 1; i <= a.n(); ++i) {
    if (!alpha_squared_zero(a, i)) continue;
    Class2 gen = 2 * Class2::generator(a, i) - a.alpha(i);
    IntVector prim = gen.coeffs();
    if (std::all_of(prim.begin(), prim.end(), [](const Integer& x) { return is_even(x); })) {
      for (auto& x : prim) x /= 2;
    }
    out.push_back({i, gen, Class2(a, std::move(prim))});
  }
  return out;
}

std::vector<Class2> square_zero_bruteforce(const BottMatrix& a, int bound) {
  std::vector<Class2> out;
  if (bound <= 0) return out;
  const int n = a.n();
  IntVector t(static_cast<std::size_t>(n), -bound);
  for (;;) {
    Class2 z(a, t);
    if (!z.is_zero()) {
      CohClass zc = CohClass::from_class2(z);
      if (multiply(zc, zc).is_zero()) out.push_back(z);
    }
    int pos = n - 1;
    while (pos >= 0 && t[pos] == bound) t[pos--] = -bound;
    if (pos < 0) break;
    ++t[pos];
  }
  return out;
}

bool is_well_ordered(const BottMatrix& a) {
  bool seen_nonzero = false;
  for (int i = 1; i <= a.n(); ++i) {
    bool sz = alpha_squared_zero(a, i);
    if (sz && seen_nonzero) return false;
    if (!sz) seen_nonzero = true;
  }
  return true;
}

WellOrdering well_order(const BottMatrix& a) {
  WellOrdering out{a, {}};
  const int n = a.n();
  for (;;) {
    int j = 0;
    for (int i = 1; i < n; ++i) {
      if (!alpha_squared_zero(out.result, i) && alpha_squared_zero(out.result, i + 1)) {
        j = i;
        break;
      }
    }
    if (j == 0) break;
    if (out.result.at(j + 1, j) != 0) {
      throw WellOrderFailure("row " + std::to_string(j + 1) + " must move above row " + std::to_string(j) +
                             " but a_{" + std::to_string(j + 1) + "," + std::to_string(j) + "} = " +
                             out.result.at(j + 1, j).str());
    }
    Move m = switch_move(out.result, j);
    out.result = m.after();
    out.moves.push_back(std::move(m));
  }
  return out;
}

int DecompositionTower::dim(int stage) const {
  if (stage == 0) return 0;
  if (stage < 0 || stage > stages()) throw RangeError("stage " + std::to_string(stage) + " out of range");
  return dims[static_cast<std::size_t>(stage - 1)];
}

int DecompositionTower::base_level(int r) const {
  if (r == 0) return 0;
  for (int s = 1; s <= stages(); ++s) {
    if (r <= dims[static_cast<std::size_t>(s - 1)]) return s;
  }
  throw RangeError("index " + std::to_string(r) + " exceeds the tower height");
}

int DecompositionTower::source_level(int i) const {
  if (i < 1 || i > static_cast<int>(position.size())) throw RangeError("index out of range");
  return base_level(position[static_cast<std::size_t>(i - 1)]);
}

int DecompositionTower::source_level(const Class2& c) const {
  if (c.context() != source) throw ContextMismatch("class is not in the tower's source ring");
  int lev = 0;
  for (int i = 1; i <= c.n(); ++i) {
    if (c.coeff(i) != 0) lev = std::max(lev, source_level(i));
  }
  return lev;
}

DecompositionTower decompose_tower(const BottMatrix& a) {
  const int n = a.n();
  DecompositionTower t{a, a, {}, {}, {}};
  t.position.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) t.position[static_cast<std::size_t>(i - 1)] = i;

  int offset = 0;
  while (offset < n) {
    BottMatrix fiber = offset == 0 ? t.base : sub_bar(t.base, offset);
    WellOrdering wo = well_order(fiber);
    for (const Move& local : wo.moves) {
      const int j = local.j() + offset;
      Move m = switch_move(t.base, j);
      t.base = m.after();
      t.moves_applied.push_back(std::move(m));
      for (auto& p : t.position) {
        if (p == j) {
          p = j + 1;
        } else if (p == j + 1) {
          p = j;
        }
      }
    }
    int k = 0;
    for (int i = 1; i <= wo.result.n(); ++i) {
      if (alpha_squared_zero(wo.result, i)) k = i;
    }
    // alpha_1 = 0, so every stage is nonempty.
    t.dims.push_back(offset + k);
    offset += k;
  }
  return t;
}

int level(const Class2& c, const DecompositionTower& t) {
  if (c.context() != t.base) throw ContextMismatch("class is not in the tower's base ring");
  return t.base_level(height(c));
}

BlockStructure blocks_at(const BottMatrix& a, const DecompositionTower& t, int lev) {
  if (a != t.source) throw ContextMismatch("tower was computed for a different matrix");
  if (lev < 1 || lev > t.stages()) {
    throw RangeError("level " + std::to_string(lev) + " outside 1.." + std::to_string(t.stages()));
  }
  const int n = a.n();
  const int k = t.dim(lev - 1);
  const int top = t.dim(lev);
  std::vector<int> source_of(static_cast<std::size_t>(n + 1), 0);
  for (int i = 1; i <= n; ++i) source_of[static_cast<std::size_t>(t.position[i - 1])] = i;

  BlockStructure out;
  out.level = lev;
  for (int r = k + 1; r <= top; ++r) {
    // Project 2x_r - alpha_r away from x_1..x_k, then halve if imprimitive.
    IntVector zb(static_cast<std::size_t>(n), 0);
    for (int j = k + 1; j < r; ++j) zb[j - 1] = -t.base.at(r, j);
    zb[r - 1] = 2;
    if (std::all_of(zb.begin(), zb.end(), [](const Integer& x) { return is_even(x); })) {
      for (auto& x : zb) x /= 2;
    }
    IntVector zs(static_cast<std::size_t>(n), 0), mod2(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i) {
      zs[i - 1] = zb[t.position[i - 1] - 1];
      mod2[i - 1] = is_even(zs[i - 1]) ? 0 : 1;
    }
    const int src = source_of[static_cast<std::size_t>(r)];
    out.z.emplace(src, std::move(zs));
    out.reps.emplace(src, std::move(mod2));
  }
  std::map<IntVector, std::vector<int>> groups;
  for (const auto& [idx, rep] : out.reps) groups[rep].push_back(idx);
  for (auto& [rep, members] : groups) {
    std::sort(members.begin(), members.end());
    out.classes.push_back(members);
  }
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

bool same_block(const DecompositionTower& t, int i, int j) {
  const int li = t.source_level(i);
  if (li != t.source_level(j)) return false;
  BlockStructure bs = blocks_at(t.source, t, li);
  return bs.reps.at(i) == bs.reps.at(j);
}

bool same_block(const BottMatrix& a, int i, int j) { return same_block(decompose_tower(a), i, j); }

std::optional<std::vector<int>> qtrivial_partition(const BottMatrix& a) {
  for (int i = 1; i <= a.n(); ++i) {
    if (!alpha_squared_zero(a, i)) return std::nullopt;
  }
  DecompositionTower t = decompose_tower(a);
  BlockStructure bs = blocks_at(a, t, 1);
  std::vector<int> parts;
  for (const auto& c : bs.classes) parts.push_back(static_cast<int>(c.size()));
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

}  // namespace bott
