#pragma once

// Independent reference implementations used only by tests. They share no
// code with the library beyond reading matrix entries: plain int64
// arithmetic, exponent-vector polynomials, reduction smallest-index-first,
// and exhaustive enumeration.

#include "bott/ring.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace bott::oracle {

using i64 = std::int64_t;
using Mat = std::vector<std::vector<i64>>;  // full n x n, 0-based
using Vec = std::vector<i64>;
using Exps = std::vector<int>;
using Poly = std::map<Exps, i64>;

inline Mat lower(const BottMatrix& a) {
  const int n = a.n();
  Mat m(n, Vec(n, 0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j < i; ++j) m[i - 1][j - 1] = static_cast<i64>(a.at(i, j));
  }
  return m;
}

inline Vec to_vec(const IntVector& v) {
  Vec out;
  for (const auto& x : v) out.push_back(static_cast<i64>(x));
  return out;
}

inline void add(Poly& p, const Exps& e, i64 c) {
  if (c == 0) return;
  i64& slot = p[e];
  slot += c;
  if (slot == 0) p.erase(e);
}

inline Poly linear(const Vec& t) {
  Poly p;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Exps e(t.size(), 0);
    e[i] = 1;
    add(p, e, t[i]);
  }
  return p;
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add(out, e, ca * cb);
    }
  }
  return out;
}

/// Normal form: rewrite x_i^2 -> sum_j a_ij x_j x_i, smallest repeated index first.
inline Poly normal_form(Poly p, const Mat& a) {
  const int n = static_cast<int>(a.size());
  for (;;) {
    Poly next;
    bool changed = false;
    for (const auto& [e, c] : p) {
      int i = -1;
      for (int q = 0; q < n; ++q) {
        if (e[q] >= 2) {
          i = q;
          break;
        }
      }
      if (i < 0) {
        add(next, e, c);
        continue;
      }
      changed = true;
      for (int j = 0; j < i; ++j) {
        if (a[i][j] == 0) continue;
        Exps f = e;
        f[i] -= 1;
        f[j] += 1;
        add(next, f, c * a[i][j]);
      }
    }
    p = std::move(next);
    if (!changed) return p;
  }
}

inline bool square_is_zero(const Mat& a, const Vec& z) {
  Poly l = linear(z);
  return normal_form(mul(l, l), a).empty();
}

inline bool product_is_zero(const Mat& a, const Vec& s, const Vec& t) {
  return normal_form(mul(linear(s), linear(t)), a).empty();
}

inline i64 det(Mat m) {
  // Cofactor expansion; n <= 6 in every use.
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  i64 total = 0;
  for (int c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Mat minor;
    for (int r = 1; r < n; ++r) {
      Vec row;
      for (int q = 0; q < n; ++q) {
        if (q != c) row.push_back(m[r][q]);
      }
      minor.push_back(row);
    }
    const i64 sub = det(minor);
    total += (c % 2 == 0 ? 1 : -1) * m[0][c] * sub;
  }
  return total;
}

/// C (rows are images of x_i) is a ring isomorphism from A to B.
inline bool is_iso(const Mat& a, const Mat& b, const Mat& c) {
  const i64 d = det(c);
  if (d != 1 && d != -1) return false;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) {
    Vec img_alpha(n, 0);
    for (int j = 0; j < i; ++j) {
      for (int m = 0; m < n; ++m) img_alpha[m] += a[i][j] * c[j][m];
    }
    Vec diff(n);
    for (int m = 0; m < n; ++m) diff[m] = c[i][m] - img_alpha[m];
    if (!product_is_zero(b, c[i], diff)) return false;
  }
  return true;
}

/// Every isomorphism with |c_ij| <= bound, by enumerating all matrices.
inline std::set<Mat> all_isos(const Mat& a, const Mat& b, int bound) {
  const int n = static_cast<int>(a.size());
  std::set<Mat> out;
  Vec cells(static_cast<std::size_t>(n * n), -bound);
  for (;;) {
    Mat c(n, Vec(n));
    for (int q = 0; q < n * n; ++q) c[q / n][q % n] = cells[q];
    if (is_iso(a, b, c)) out.insert(c);
    int pos = n * n - 1;
    while (pos >= 0 && cells[pos] == bound) cells[pos--] = -bound;
    if (pos < 0) break;
    ++cells[pos];
  }
  return out;
}

/// Nonzero z with entries in [-bound, bound] and z^2 = 0.
inline std::set<Vec> square_zero_classes(const Mat& a, int bound) {
  const int n = static_cast<int>(a.size());
  std::set<Vec> out;
  Vec z(n, -bound);
  for (;;) {
    bool nonzero = false;
    for (auto x : z) nonzero = nonzero || x != 0;
    if (nonzero && square_is_zero(a, z)) out.insert(z);
    int pos = n - 1;
    while (pos >= 0 && z[pos] == bound) z[pos--] = -bound;
    if (pos < 0) break;
    ++z[pos];
  }
  return out;
}

}  // namespace bott::oracle
