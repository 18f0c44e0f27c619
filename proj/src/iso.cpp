#include "bott/iso.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <sstream>
#include <utility>

namespace bott {

using Rational = boost::multiprecision::cpp_rational;

IntMatrix::IntMatrix(int n) : n_(n), cells_(static_cast<std::size_t>(n * n), 0) {
  if (n < 0) throw ShapeError("negative matrix size");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 1; i <= n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  const int n = static_cast<int>(rows.size());
  IntMatrix m(n);
  for (int i = 1; i <= n; ++i) {
    if (rows[i - 1].size() != rows.size()) {
      throw ShapeError("matrix row " + std::to_string(i) + " has length " +
                       std::to_string(rows[i - 1].size()) + ", expected " + std::to_string(n));
    }
    for (int j = 1; j <= n; ++j) m.at(i, j) = rows[i - 1][j - 1];
  }
  return m;
}

IntVector IntMatrix::row(int i) const {
  if (i < 1 || i > n_) throw RangeError("matrix row " + std::to_string(i) + " out of range");
  return IntVector(cells_.begin() + (i - 1) * n_, cells_.begin() + i * n_);
}

std::vector<IntVector> IntMatrix::rows() const {
  std::vector<IntVector> out;
  for (int i = 1; i <= n_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) throw ShapeError("multiplying matrices of different sizes");
  IntMatrix out(a.n_);
  for (int i = 1; i <= a.n_; ++i) {
    for (int k = 1; k <= a.n_; ++k) {
      const Integer& x = a.at(i, k);
      if (x == 0) continue;
      for (int j = 1; j <= a.n_; ++j) out.at(i, j) += x * b.at(k, j);
    }
  }
  return out;
}

Integer determinant(const IntMatrix& m) {
  const int n = m.n();
  if (n == 0) return 1;
  std::vector<IntVector> a = m.rows();
  Integer sign = 1;
  Integer prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[r][k] != 0) {
          swap = r;
          break;
        }
      }
      if (swap < 0) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  const int n = m.n();
  Integer det = determinant(m);
  if (det != 1 && det != -1) throw NotUnimodular("determinant is " + det.str() + ", not +-1");
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n),
                                       std::vector<Rational>(static_cast<std::size_t>(2 * n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rational(m.at(i + 1, j + 1));
    a[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (a[pivot][col] == 0) ++pivot;
    std::swap(a[pivot], a[col]);
    Rational inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  IntMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (denominator(x) != 1) throw NotUnimodular("inverse is not integral");
      out.at(i + 1, j + 1) = numerator(x);
    }
  }
  return out;
}

IntVector row_times(const IntVector& v, const IntMatrix& m) {
  if (v.size() != static_cast<std::size_t>(m.n())) throw ShapeError("vector/matrix size mismatch");
  IntVector out(v.size(), 0);
  for (int i = 1; i <= m.n(); ++i) {
    const Integer& x = v[i - 1];
    if (x == 0) continue;
    for (int j = 1; j <= m.n(); ++j) out[j - 1] += x * m.at(i, j);
  }
  return out;
}

namespace {

std::string degree4_to_string(const IntVector& d, int n) {
  std::ostringstream os;
  bool first = true;
  for (int i = 2; i <= n; ++i) {
    for (int j = 1; j < i; ++j) {
      const Integer& c = d[static_cast<std::size_t>((i - 1) * (i - 2) / 2 + (j - 1))];
      if (c == 0) continue;
      if (!first) os << " + ";
      os << c << "*y" << j << "*y" << i;
      first = false;
    }
  }
  return first ? "0" : os.str();
}

}  // namespace

IsoCheck check_iso(const BottMatrix& source, const BottMatrix& target, const IntMatrix& c) {
  IsoCheck r;
  const int n = source.n();
  if (target.n() != n || c.n() != n) {
    r.error = "ShapeError";
    r.detail = "source, target and matrix sizes differ";
    return r;
  }
  Integer det = determinant(c);
  if (det != 1 && det != -1) {
    r.error = "NotUnimodular";
    r.detail = "determinant " + det.str();
    return r;
  }
  std::vector<IntVector> images = c.rows();
  for (int i = 1; i <= n; ++i) {
    // phi(x_i) * (phi(x_i) - phi(alpha_i)) must vanish in the target ring.
    IntVector diff = images[i - 1];
    const IntVector& arow = source.row(i);
    for (int j = 1; j < i; ++j) {
      const Integer& aij = arow[j - 1];
      if (aij == 0) continue;
      for (int m = 0; m < n; ++m) diff[m] -= aij * images[j - 1][m];
    }
    IntVector residue = product_degree4(target, images[i - 1], diff);
    for (const auto& x : residue) {
      if (x != 0) {
        r.error = "RelationViolated";
        r.failing_index = i;
        r.detail = "relation " + std::to_string(i) + " leaves residue " + degree4_to_string(residue, n);
        return r;
      }
    }
  }
  r.ok = true;
  return r;
}

GradedIso make_iso(BottMatrix source, BottMatrix target, IntMatrix c) {
  IsoCheck r = check_iso(source, target, c);
  if (!r.ok) {
    if (r.error == "NotUnimodular") throw NotUnimodular(r.detail);
    if (r.error == "RelationViolated") throw RelationViolated(r.detail);
    throw ShapeError(r.detail);
  }
  return GradedIso(std::move(source), std::move(target), std::move(c));
}

GradedIso identity_iso(const BottMatrix& a) { return make_iso(a, a, IntMatrix::identity(a.n())); }

Class2 GradedIso::image(int i) const { return Class2(target_, c_.row(i)); }

Class2 apply2(const GradedIso& phi, const Class2& c) {
  if (c.context() != phi.source()) throw ContextMismatch("class is not in the source ring of the isomorphism");
  return Class2(phi.target(), row_times(c.coeffs(), phi.matrix()));
}

CohClass apply(const GradedIso& phi, const CohClass& c) {
  if (c.context() != phi.source()) throw ContextMismatch("class is not in the source ring of the isomorphism");
  std::vector<CohClass> images;
  for (int i = 1; i <= phi.n(); ++i) images.push_back(CohClass::from_class2(phi.image(i)));
  CohClass out(phi.target());
  for (const auto& [mask, coeff] : c.raw_terms()) {
    CohClass term = CohClass::one(phi.target());
    for (CohClass::Mask rest = mask; rest != 0; rest &= rest - 1) {
      term = multiply(term, images[static_cast<std::size_t>(std::countr_zero(rest))]);
    }
    out = out + coeff * term;
  }
  return out;
}

GradedIso compose(const GradedIso& g, const GradedIso& f) {
  if (f.target() != g.source()) throw ContextMismatch("composition: target of f is not the source of g");
  return make_iso(f.source(), g.target(), f.matrix() * g.matrix());
}

GradedIso invert(const GradedIso& phi) {
  return make_iso(phi.target(), phi.source(), inverse_unimodular(phi.matrix()));
}

bool is_stable(const GradedIso& phi, int k) {
  const int n = phi.n();
  if (k < 0 || k > n) throw RangeError("stability index " + std::to_string(k) + " out of range");
  for (int i = 1; i <= k; ++i) {
    for (int j = k + 1; j <= n; ++j) {
      if (phi.matrix().at(i, j) != 0) return false;
    }
  }
  return true;
}

int max_stable(const GradedIso& phi) {
  const int n = phi.n();
  bool every = true;
  for (int k = 1; k < n && every; ++k) every = is_stable(phi, k);
  if (every) return n;
  for (int k = n - 1; k >= 0; --k) {
    if (is_stable(phi, k)) return k;
  }
  return 0;
}

}  // namespace bott
