#pragma once

// Graded ring isomorphisms H*(B_n(A)) -> H*(B_n(B)), represented by the
// degree-2 matrix C with phi(x_i) = sum_j c_ij y_j. The rings are generated in
// degree 2, so C determines phi; make_iso checks it really is an isomorphism.

#include "bott/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bott {

/// Dense square integer matrix, 1-based access.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n);

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  int n() const { return n_; }
  Integer& at(int i, int j) { return cells_[index(i, j)]; }
  const Integer& at(int i, int j) const { return cells_[index(i, j)]; }

  IntVector row(int i) const;
  std::vector<IntVector> rows() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }
  friend bool operator<(const IntMatrix& a, const IntMatrix& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.cells_ < b.cells_;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>((i - 1) * n_ + (j - 1));
  }
  int n_ = 0;
  IntVector cells_;
};

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

/// Exact inverse of a matrix with determinant +-1; throws NotUnimodular otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

/// Row vector times matrix.
IntVector row_times(const IntVector& v, const IntMatrix& m);

/// Outcome of checking whether C defines an isomorphism.
struct IsoCheck {
  bool ok = false;
  std::string error;      // "NotUnimodular", "RelationViolated", "ShapeError" or empty
  int failing_index = 0;  // relation index for RelationViolated
  std::string detail;
};

IsoCheck check_iso(const BottMatrix& source, const BottMatrix& target, const IntMatrix& c);

class GradedIso {
 public:
  const BottMatrix& source() const { return source_; }
  const BottMatrix& target() const { return target_; }
  const IntMatrix& matrix() const { return c_; }
  int n() const { return c_.n(); }

  /// phi(x_i).
  Class2 image(int i) const;

  friend GradedIso make_iso(BottMatrix source, BottMatrix target, IntMatrix c);

  friend bool operator==(const GradedIso& a, const GradedIso& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.c_ == b.c_;
  }

 private:
  GradedIso(BottMatrix s, BottMatrix t, IntMatrix c)
      : source_(std::move(s)), target_(std::move(t)), c_(std::move(c)) {}

  BottMatrix source_;
  BottMatrix target_;
  IntMatrix c_;
};

/// Validates and builds; throws ShapeError, NotUnimodular or RelationViolated.
GradedIso make_iso(BottMatrix source, BottMatrix target, IntMatrix c);
GradedIso identity_iso(const BottMatrix& a);

Class2 apply2(const GradedIso& phi, const Class2& c);
CohClass apply(const GradedIso& phi, const CohClass& c);

/// g o f; requires f.target() == g.source().
GradedIso compose(const GradedIso& g, const GradedIso& f);
GradedIso invert(const GradedIso& phi);

/// phi(F_k(A)) is contained in F_k(B).
bool is_stable(const GradedIso& phi, int k);

/// n when phi preserves every F_k (C lower triangular); otherwise the largest
/// k < n for which phi is k-stable.
int max_stable(const GradedIso& phi);

}  // namespace bott
