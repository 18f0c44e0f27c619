#include "bott/ring.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace bott {

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, abs_value(x));
  return g;
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw FormatError("empty integer literal");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw FormatError("invalid integer literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s);
}

namespace {

const Integer kZero = 0;

void check_index(int i, int n, const char* what) {
  if (i < 1 || i > n) {
    throw RangeError(std::string(what) + " index " + std::to_string(i) + " outside 1.." +
                     std::to_string(n));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// BottMatrix

BottMatrix::BottMatrix() : BottMatrix(zero(1)) {}

BottMatrix BottMatrix::from_rows(int n, std::vector<IntVector> rows) {
  if (n < 1) throw ShapeError("tower height must be at least 1");
  if (n > kMaxHeight) throw ShapeError("tower height exceeds " + std::to_string(kMaxHeight));
  if (rows.size() != static_cast<std::size_t>(n)) {
    throw ShapeError("expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  }
  for (int i = 1; i <= n; ++i) {
    if (rows[i - 1].size() != static_cast<std::size_t>(i - 1)) {
      throw ShapeError("row " + std::to_string(i) + " must have length " + std::to_string(i - 1) +
                       ", got " + std::to_string(rows[i - 1].size()));
    }
  }
  auto data = std::make_shared<Data>();
  data->n = n;
  data->rows = std::move(rows);
  return BottMatrix(std::move(data));
}

BottMatrix BottMatrix::zero(int n) {
  if (n < 1) throw ShapeError("tower height must be at least 1");
  std::vector<IntVector> rows(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 1; i <= n; ++i) rows[i - 1].assign(static_cast<std::size_t>(i - 1), 0);
  return from_rows(n, std::move(rows));
}

const Integer& BottMatrix::at(int i, int j) const {
  if (j >= i || j < 1 || i > n()) return kZero;
  return data_->rows[i - 1][j - 1];
}

const IntVector& BottMatrix::row(int i) const {
  check_index(i, n(), "row");
  return data_->rows[i - 1];
}

Class2 BottMatrix::alpha(int i) const {
  check_index(i, n(), "alpha");
  IntVector c(static_cast<std::size_t>(n()), 0);
  std::copy(data_->rows[i - 1].begin(), data_->rows[i - 1].end(), c.begin());
  return Class2(*this, std::move(c));
}

BottMatrix BottMatrix::with_entry(int i, int j, Integer value) const {
  check_index(i, n(), "row");
  if (j < 1 || j >= i) throw RangeError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") is not strictly below the diagonal");
  auto rows = data_->rows;
  rows[i - 1][j - 1] = std::move(value);
  return from_rows(n(), std::move(rows));
}

bool operator==(const BottMatrix& a, const BottMatrix& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->n == b.data_->n && a.data_->rows == b.data_->rows;
}

// ---------------------------------------------------------------------------
// Class2

Class2::Class2(BottMatrix context, IntVector coeffs)
    : context_(std::move(context)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(context_.n())) {
    throw ShapeError("class has " + std::to_string(coeffs_.size()) +
                     " coefficients but the tower has height " + std::to_string(context_.n()));
  }
}

Class2 Class2::zero(const BottMatrix& context) {
  return Class2(context, IntVector(static_cast<std::size_t>(context.n()), 0));
}

Class2 Class2::generator(const BottMatrix& context, int i) {
  check_index(i, context.n(), "generator");
  IntVector c(static_cast<std::size_t>(context.n()), 0);
  c[i - 1] = 1;
  return Class2(context, std::move(c));
}

bool Class2::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& x) { return x == 0; });
}

Class2 Class2::operator-() const {
  IntVector c = coeffs_;
  for (auto& x : c) x = -x;
  return Class2(context_, std::move(c));
}

Class2 operator+(const Class2& a, const Class2& b) {
  if (a.context_ != b.context_) throw ContextMismatch("adding classes of different rings");
  IntVector c = a.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
  return Class2(a.context_, std::move(c));
}

Class2 operator-(const Class2& a, const Class2& b) { return a + (-b); }

Class2 operator*(const Integer& s, const Class2& a) {
  IntVector c = a.coeffs_;
  for (auto& x : c) x *= s;
  return Class2(a.context_, std::move(c));
}

bool operator==(const Class2& a, const Class2& b) {
  return a.context_ == b.context_ && a.coeffs_ == b.coeffs_;
}

int height(const IntVector& coeffs) {
  for (std::size_t i = coeffs.size(); i > 0; --i) {
    if (coeffs[i - 1] != 0) return static_cast<int>(i);
  }
  return 0;
}

int height(const Class2& c) { return height(c.coeffs()); }

// ---------------------------------------------------------------------------
// Half / HalfClass2

Integer Half::to_integer() const {
  if (!is_integral()) throw NotIntegral("half-integer " + twice_.str() + "/2 is not integral");
  return twice_ / 2;
}

HalfClass2 HalfClass2::from_twice(IntVector twice) {
  HalfClass2 h;
  bool all_even = std::all_of(twice.begin(), twice.end(), [](const Integer& x) { return is_even(x); });
  if (all_even) {
    for (auto& x : twice) x /= 2;
    h.denominator_ = 1;
  } else {
    h.denominator_ = 2;
  }
  h.numerators_ = std::move(twice);
  return h;
}

HalfClass2 HalfClass2::integral(IntVector values) {
  HalfClass2 h;
  h.numerators_ = std::move(values);
  h.denominator_ = 1;
  return h;
}

IntVector HalfClass2::twice() const {
  IntVector t = numerators_;
  if (denominator_ == 1) {
    for (auto& x : t) x *= 2;
  }
  return t;
}

const IntVector& HalfClass2::to_integral() const {
  if (denominator_ != 1) throw NotIntegral("class with denominator 2 used where an integral class is required");
  return numerators_;
}

// ---------------------------------------------------------------------------
// CohClass

namespace {

using Mask = CohClass::Mask;

Mask bit(int i) { return Mask{1} << (i - 1); }

IndexSet indices_of(Mask m) {
  IndexSet s;
  while (m != 0) {
    int b = std::countr_zero(m);
    s.push_back(b + 1);
    m &= m - 1;
  }
  return s;
}

Mask mask_of(const IndexSet& s, int n) {
  Mask m = 0;
  for (int i : s) {
    check_index(i, n, "monomial");
    if (m & bit(i)) throw ShapeError("monomial index " + std::to_string(i) + " repeated");
    m |= bit(i);
  }
  return m;
}

void accumulate(std::map<Mask, Integer>& acc, Mask m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

// x_U * x_j. When j is already in U, x_j^2 = alpha_j x_j turns the product
// into sum_{m<j} a_jm x_U x_m; indices strictly decrease, so this terminates.
void multiply_generator(const BottMatrix& a, Mask u, int j, const Integer& c,
                        std::map<Mask, Integer>& out) {
  if ((u & bit(j)) == 0) {
    accumulate(out, u | bit(j), c);
    return;
  }
  const IntVector& row = a.row(j);
  for (int m = 1; m < j; ++m) {
    if (row[m - 1] != 0) multiply_generator(a, u, m, c * row[m - 1], out);
  }
}

}  // namespace

CohClass::CohClass(BottMatrix context) : context_(std::move(context)) {}

CohClass CohClass::one(const BottMatrix& context) { return monomial(context, {}, 1); }

CohClass CohClass::monomial(const BottMatrix& context, const IndexSet& indices, Integer coeff) {
  CohClass c(context);
  accumulate(c.terms_, mask_of(indices, context.n()), coeff);
  return c;
}

CohClass CohClass::from_class2(const Class2& c) {
  CohClass out(c.context());
  for (int i = 1; i <= c.n(); ++i) accumulate(out.terms_, bit(i), c.coeff(i));
  return out;
}

std::vector<CohClass::Term> CohClass::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.emplace_back(indices_of(m), c);
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    return x.first < y.first;
  });
  return out;
}

Integer CohClass::coeff(const IndexSet& indices) const {
  auto it = terms_.find(mask_of(indices, context_.n()));
  return it == terms_.end() ? Integer(0) : it->second;
}

CohClass CohClass::homogeneous(int monomial_degree) const {
  CohClass out(context_);
  for (const auto& [m, c] : terms_) {
    if (std::popcount(m) == monomial_degree) out.terms_.emplace(m, c);
  }
  return out;
}

Class2 CohClass::degree2() const {
  IntVector c(static_cast<std::size_t>(context_.n()), 0);
  for (const auto& [m, v] : terms_) {
    if (std::popcount(m) == 1) c[static_cast<std::size_t>(std::countr_zero(m))] = v;
  }
  return Class2(context_, std::move(c));
}

void CohClass::add_raw(Mask m, const Integer& c) { accumulate(terms_, m, c); }

CohClass CohClass::operator-() const {
  CohClass out(context_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

CohClass operator+(const CohClass& a, const CohClass& b) {
  if (a.context_ != b.context_) throw ContextMismatch("adding classes of different rings");
  CohClass out = a;
  for (const auto& [m, c] : b.terms_) accumulate(out.terms_, m, c);
  return out;
}

CohClass operator-(const CohClass& a, const CohClass& b) { return a + (-b); }

CohClass operator*(const Integer& s, const CohClass& a) {
  CohClass out(a.context_);
  if (s == 0) return out;
  for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
  return out;
}

CohClass operator*(const CohClass& a, const CohClass& b) { return multiply(a, b); }

bool operator==(const CohClass& a, const CohClass& b) {
  return a.context_ == b.context_ && a.terms_ == b.terms_;
}

CohClass multiply(const CohClass& a, const CohClass& b) {
  if (a.context() != b.context()) throw ContextMismatch("multiplying classes of different rings");
  const BottMatrix& ctx = a.context();
  CohClass out(ctx);
  std::map<Mask, Integer> current, next;
  for (const auto& [sa, ca] : a.raw_terms()) {
    for (const auto& [sb, cb] : b.raw_terms()) {
      current.clear();
      current.emplace(sa, ca * cb);
      for (Mask rest = sb; rest != 0; rest &= rest - 1) {
        int j = std::countr_zero(rest) + 1;
        next.clear();
        for (const auto& [u, c] : current) multiply_generator(ctx, u, j, c, next);
        current.swap(next);
      }
      for (const auto& [u, c] : current) out.add_raw(u, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RawPolynomial and reduction

RawPolynomial RawPolynomial::variable(int n, int i) {
  check_index(i, n, "variable");
  RawPolynomial p(n);
  Exponents e(static_cast<std::size_t>(n), 0);
  e[i - 1] = 1;
  p.add_term(std::move(e), 1);
  return p;
}

RawPolynomial RawPolynomial::constant(int n, Integer c) {
  RawPolynomial p(n);
  p.add_term(Exponents(static_cast<std::size_t>(n), 0), c);
  return p;
}

RawPolynomial RawPolynomial::linear(const IntVector& coeffs) {
  int n = static_cast<int>(coeffs.size());
  RawPolynomial p(n);
  for (int i = 1; i <= n; ++i) {
    Exponents e(static_cast<std::size_t>(n), 0);
    e[i - 1] = 1;
    p.add_term(std::move(e), coeffs[i - 1]);
  }
  return p;
}

void RawPolynomial::add_term(Exponents exponents, const Integer& coeff) {
  if (exponents.size() != static_cast<std::size_t>(n_)) {
    throw ShapeError("exponent vector has length " + std::to_string(exponents.size()) +
                     ", expected " + std::to_string(n_));
  }
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(exponents), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

RawPolynomial operator+(const RawPolynomial& a, const RawPolynomial& b) {
  if (a.n_ != b.n_) throw ShapeError("adding polynomials in different numbers of variables");
  RawPolynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

RawPolynomial operator*(const RawPolynomial& a, const RawPolynomial& b) {
  if (a.n_ != b.n_) throw ShapeError("multiplying polynomials in different numbers of variables");
  RawPolynomial out(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      RawPolynomial::Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(std::move(e), ca * cb);
    }
  }
  return out;
}

CohClass reduce(const RawPolynomial& raw, const BottMatrix& a) {
  if (raw.n() != a.n()) throw ShapeError("polynomial and matrix have different numbers of variables");
  std::map<RawPolynomial::Exponents, Integer> work = raw.terms();
  CohClass out(a);
  while (!work.empty()) {
    auto node = work.extract(work.begin());
    RawPolynomial::Exponents e = std::move(node.key());
    const Integer& c = node.mapped();
    int top = 0;
    for (int i = a.n(); i >= 1; --i) {
      if (e[i - 1] >= 2) {
        top = i;
        break;
      }
    }
    if (top == 0) {
      Mask m = 0;
      for (int i = 1; i <= a.n(); ++i) {
        if (e[i - 1] == 1) m |= bit(i);
      }
      out.add_raw(m, c);
      continue;
    }
    // x_top^2 -> sum_j a_{top,j} x_j x_top
    e[top - 1] -= 1;
    for (int j = 1; j < top; ++j) {
      const Integer& coef = a.at(top, j);
      if (coef == 0) continue;
      auto f = e;
      f[j - 1] += 1;
      Integer add = c * coef;
      auto [it, inserted] = work.try_emplace(std::move(f), add);
      if (!inserted) {
        it->second += add;
        if (it->second == 0) work.erase(it);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Degree-4 closed form

IntVector product_degree4(const BottMatrix& a, const IntVector& s, const IntVector& t) {
  const int n = a.n();
  if (s.size() != static_cast<std::size_t>(n) || t.size() != static_cast<std::size_t>(n)) {
    throw ShapeError("degree-2 vectors must have length " + std::to_string(n));
  }
  IntVector out(static_cast<std::size_t>(n * (n - 1) / 2), 0);
  for (int i = 2; i <= n; ++i) {
    const Integer st = s[i - 1] * t[i - 1];
    const IntVector& row = a.row(i);
    std::size_t base = static_cast<std::size_t>((i - 1) * (i - 2) / 2);
    for (int j = 1; j < i; ++j) {
      Integer& cell = out[base + static_cast<std::size_t>(j - 1)];
      if (st != 0 && row[j - 1] != 0) cell += st * row[j - 1];
      cell += s[i - 1] * t[j - 1];
      cell += s[j - 1] * t[i - 1];
    }
  }
  return out;
}

bool product_vanishes(const BottMatrix& a, const IntVector& s, const IntVector& t) {
  for (const auto& x : product_degree4(a, s, t)) {
    if (x != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sub-towers

BottMatrix sub_hat(const BottMatrix& a, int k) {
  if (k < 1 || k >= a.n()) {
    throw RangeError("sub_hat needs 1 <= k < n, got k=" + std::to_string(k) + ", n=" + std::to_string(a.n()));
  }
  std::vector<IntVector> rows(a.rows().begin(), a.rows().begin() + k);
  return BottMatrix::from_rows(k, std::move(rows));
}

BottMatrix sub_bar(const BottMatrix& a, int k) {
  if (k < 1 || k >= a.n()) {
    throw RangeError("sub_bar needs 1 <= k < n, got k=" + std::to_string(k) + ", n=" + std::to_string(a.n()));
  }
  const int m = a.n() - k;
  std::vector<IntVector> rows(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j < i; ++j) rows[i - 1].push_back(a.at(i + k, j + k));
  }
  return BottMatrix::from_rows(m, std::move(rows));
}

}  // namespace bott
