#pragma once

// Integral cohomology rings of Bott towers:
//
//   H*(B_n(A)) = Z[x_1, ..., x_n] / (x_i^2 - alpha_i x_i),  alpha_i = sum_{j<i} a_ij x_j.
//
// Elements are kept in normal form on the square-free monomial basis. All
// indices in this interface are 1-based.

#include "bott/errors.hpp"
#include "bott/integer.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace bott {

class Class2;

/// Largest tower height supported (monomials are stored as 64-bit masks).
inline constexpr int kMaxHeight = 64;

/// Strictly lower-triangular integer matrix defining a Bott tower. Immutable;
/// copies share storage.
class BottMatrix {
 public:
  /// The 1x1 zero matrix (CP^1).
  BottMatrix();

  /// Row i (1-based) must hold exactly i-1 entries a_{i,1}, ..., a_{i,i-1}.
  static BottMatrix from_rows(int n, std::vector<IntVector> rows);
  static BottMatrix zero(int n);

  int n() const { return data_->n; }

  /// a_ij, or 0 whenever j >= i.
  const Integer& at(int i, int j) const;

  /// The stored part of row i: a_{i,1}, ..., a_{i,i-1}.
  const IntVector& row(int i) const;
  const std::vector<IntVector>& rows() const { return data_->rows; }

  /// alpha_i as a degree-2 class.
  Class2 alpha(int i) const;

  /// Copy with a_ij replaced (j < i).
  BottMatrix with_entry(int i, int j, Integer value) const;

  friend bool operator==(const BottMatrix& a, const BottMatrix& b);
  friend bool operator!=(const BottMatrix& a, const BottMatrix& b) { return !(a == b); }

 private:
  struct Data {
    int n = 1;
    std::vector<IntVector> rows;
  };
  explicit BottMatrix(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Element sum t_i x_i of H^2.
class Class2 {
 public:
  Class2(BottMatrix context, IntVector coeffs);

  static Class2 zero(const BottMatrix& context);
  static Class2 generator(const BottMatrix& context, int i);

  const BottMatrix& context() const { return context_; }
  int n() const { return context_.n(); }
  const Integer& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i - 1)]; }
  const IntVector& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Class2 operator-() const;
  friend Class2 operator+(const Class2& a, const Class2& b);
  friend Class2 operator-(const Class2& a, const Class2& b);
  friend Class2 operator*(const Integer& s, const Class2& a);

  friend bool operator==(const Class2& a, const Class2& b);

 private:
  BottMatrix context_;
  IntVector coeffs_;
};

/// Index of the last nonzero coefficient; 0 for the zero vector.
int height(const IntVector& coeffs);
int height(const Class2& c);

/// A rational scalar with denominator 1 or 2, kept in lowest terms.
class Half {
 public:
  Half() = default;
  explicit Half(Integer value) : twice_(2 * value) {}

  static Half from_twice(Integer twice) {
    Half h;
    h.twice_ = std::move(twice);
    return h;
  }

  /// Twice the value; always an integer.
  const Integer& twice() const { return twice_; }
  bool is_integral() const { return is_even(twice_); }
  /// Throws NotIntegral when the denominator is 2.
  Integer to_integer() const;
  Integer numerator() const { return is_integral() ? Integer(twice_ / 2) : twice_; }
  int denominator() const { return is_integral() ? 1 : 2; }

  friend bool operator==(const Half& a, const Half& b) { return a.twice_ == b.twice_; }

 private:
  Integer twice_ = 0;
};

/// A vector of (1/2)Z coefficients: numerators over a common denominator 1 or 2.
class HalfClass2 {
 public:
  HalfClass2() = default;
  static HalfClass2 from_twice(IntVector twice);
  static HalfClass2 integral(IntVector values);

  const IntVector& numerators() const { return numerators_; }
  int denominator() const { return denominator_; }
  /// Twice the value, componentwise.
  IntVector twice() const;
  bool is_integral() const { return denominator_ == 1; }
  /// Throws NotIntegral when the denominator is 2.
  const IntVector& to_integral() const;

  friend bool operator==(const HalfClass2& a, const HalfClass2& b) {
    return a.denominator_ == b.denominator_ && a.numerators_ == b.numerators_;
  }

 private:
  IntVector numerators_;
  int denominator_ = 1;
};

/// Sorted 1-based indices of a square-free monomial.
using IndexSet = std::vector<int>;

/// Arbitrary element of H*(B_n(A)) in normal form.
class CohClass {
 public:
  using Mask = std::uint64_t;
  using Term = std::pair<IndexSet, Integer>;

  explicit CohClass(BottMatrix context);

  static CohClass one(const BottMatrix& context);
  static CohClass monomial(const BottMatrix& context, const IndexSet& indices,
                           Integer coeff = 1);
  static CohClass from_class2(const Class2& c);

  const BottMatrix& context() const { return context_; }
  bool is_zero() const { return terms_.empty(); }

  /// Terms ordered by degree, then lexicographically by index set.
  std::vector<Term> terms() const;
  Integer coeff(const IndexSet& indices) const;

  /// Component of cohomological degree 2*monomial_degree.
  CohClass homogeneous(int monomial_degree) const;

  /// Degree-2 part as a Class2.
  Class2 degree2() const;

  CohClass operator-() const;
  friend CohClass operator+(const CohClass& a, const CohClass& b);
  friend CohClass operator-(const CohClass& a, const CohClass& b);
  friend CohClass operator*(const Integer& s, const CohClass& a);
  friend CohClass operator*(const CohClass& a, const CohClass& b);

  friend bool operator==(const CohClass& a, const CohClass& b);

  const std::map<Mask, Integer>& raw_terms() const { return terms_; }
  void add_raw(Mask m, const Integer& c);

 private:
  BottMatrix context_;
  std::map<Mask, Integer> terms_;
};

/// Normal-form product; throws ContextMismatch if the matrices differ.
CohClass multiply(const CohClass& a, const CohClass& b);

/// A formal polynomial in x_1..x_n before reduction.
class RawPolynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit RawPolynomial(int n) : n_(n) {}

  static RawPolynomial variable(int n, int i);
  static RawPolynomial constant(int n, Integer c);
  static RawPolynomial linear(const IntVector& coeffs);

  int n() const { return n_; }
  void add_term(Exponents exponents, const Integer& coeff);
  const std::map<Exponents, Integer>& terms() const { return terms_; }

  friend RawPolynomial operator+(const RawPolynomial& a, const RawPolynomial& b);
  friend RawPolynomial operator*(const RawPolynomial& a, const RawPolynomial& b);

 private:
  int n_;
  std::map<Exponents, Integer> terms_;
};

/// Rewrites x_i^2 -> alpha_i x_i, largest repeated index first, until square-free.
CohClass reduce(const RawPolynomial& raw, const BottMatrix& a);

/// Coefficients of s*t in the basis {x_j x_i : j < i}, packed at
/// position (i-1)(i-2)/2 + (j-1). Closed form: s_i t_i a_ij + s_i t_j + s_j t_i.
IntVector product_degree4(const BottMatrix& a, const IntVector& s, const IntVector& t);
bool product_vanishes(const BottMatrix& a, const IntVector& s, const IntVector& t);

/// Upper-left k x k block.
BottMatrix sub_hat(const BottMatrix& a, int k);
/// Lower-right (n-k) x (n-k) block.
BottMatrix sub_bar(const BottMatrix& a, int k);

}  // namespace bott
