#include "bott/iso_search.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace bott {

namespace {

// phi(2x_i - alpha_i) as a row vector.
IntVector image_of_generator(const GradedIso& phi, int i) {
  const IntMatrix& c = phi.matrix();
  IntVector out = c.row(i);
  for (auto& x : out) x *= 2;
  const IntVector& arow = phi.source().row(i);
  for (int j = 1; j < i; ++j) {
    if (arow[j - 1] == 0) continue;
    for (int m = 1; m <= phi.n(); ++m) out[m - 1] -= arow[j - 1] * c.at(j, m);
  }
  return out;
}

}  // namespace

SigmaEps extract_sigma_eps(const GradedIso& phi, const DecompositionTower& ta,
                           const DecompositionTower& tb) {
  if (ta.source != phi.source() || tb.source != phi.target()) {
    throw ContextMismatch("towers do not belong to the isomorphism's rings");
  }
  const int n = phi.n();
  const BottMatrix& b = phi.target();
  SigmaEps out;
  std::vector<bool> hit(static_cast<std::size_t>(n + 1), false);
  for (int i = 1; i <= n; ++i) {
    IntVector img = image_of_generator(phi, i);
    const int s = height(img);
    if (s == 0) throw ExtractionFailure("image of 2x_" + std::to_string(i) + " - alpha_" + std::to_string(i) + " is zero");
    const Integer e2 = img[s - 1];  // 2 * eps_i
    // 2 * img == e2 * (2y_s - beta_s)
    for (int m = 1; m <= n; ++m) {
      Integer expected = m == s ? Integer(2 * e2) : Integer(-e2 * b.at(s, m));
      if (2 * img[m - 1] != expected) {
        throw ExtractionFailure("image of 2x_" + std::to_string(i) + " - alpha_" + std::to_string(i) +
                                " is not a multiple of 2y_" + std::to_string(s) + " - beta_" + std::to_string(s));
      }
    }
    if (hit[static_cast<std::size_t>(s)]) throw ExtractionFailure("sigma is not injective at " + std::to_string(s));
    hit[static_cast<std::size_t>(s)] = true;
    if (ta.source_level(i) != tb.source_level(s)) {
      throw ExtractionFailure("level of x_" + std::to_string(i) + " differs from level of y_" + std::to_string(s));
    }
    out.sigma.push_back(s);
    out.eps.push_back(Half::from_twice(e2));
  }
  return out;
}

SigmaEps extract_sigma_eps(const GradedIso& phi) {
  return extract_sigma_eps(phi, decompose_tower(phi.source()), decompose_tower(phi.target()));
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const BottMatrix& a, const BottMatrix& b, int bound)
      : a_(a), b_(b), n_(a.n()), bound_(bound) {
    DecompositionTower ta = decompose_tower(a), tb = decompose_tower(b);
    for (int i = 1; i <= n_; ++i) {
      level_a_.push_back(ta.source_level(i));
      level_b_.push_back(tb.source_level(i));
      IntVector gen = b.alpha(i).coeffs();
      for (auto& x : gen) x = -x;
      gen[i - 1] = 2;
      gen_b_.push_back(std::move(gen));
    }
  }

  /// Candidate rows for C_i given rows 1..i-1.
  std::vector<std::pair<int, IntVector>> candidates(int i, const std::vector<IntVector>& rows,
                                                    const std::vector<bool>& used) const {
    std::vector<std::pair<int, IntVector>> out;
    IntVector s(static_cast<std::size_t>(n_), 0);  // phi(alpha_i)
    for (int j = 1; j < i; ++j) {
      const Integer& aij = a_.at(i, j);
      if (aij == 0) continue;
      for (int m = 0; m < n_; ++m) s[m] += aij * rows[j - 1][m];
    }
    for (int m = 1; m <= n_; ++m) {
      if (used[m - 1] || level_a_[i - 1] != level_b_[m - 1]) continue;
      const IntVector& gen = gen_b_[m - 1];
      for (int cm = -bound_; cm <= bound_; ++cm) {
        // e = 2 eps_i is the y_m coefficient of phi(2x_i - alpha_i).
        Integer e = 2 * cm - s[m - 1];
        if (e == 0) continue;
        // C_i = (e * gen_m + 2 s) / 4
        IntVector row(static_cast<std::size_t>(n_));
        bool ok = true;
        for (int q = 0; q < n_ && ok; ++q) {
          Integer num = e * gen[q] + 2 * s[q];
          if (num % 4 != 0) {
            ok = false;
            break;
          }
          row[q] = num / 4;
          if (abs_value(row[q]) > bound_) ok = false;
        }
        if (!ok) continue;
        IntVector diff = row;
        for (int q = 0; q < n_; ++q) diff[q] -= s[q];
        if (!product_vanishes(b_, row, diff)) continue;
        out.emplace_back(m, std::move(row));
      }
    }
    return out;
  }

  void run(int i, std::vector<IntVector>& rows, std::vector<bool>& used,
           std::vector<IntMatrix>& found) const {
    if (i > n_) {
      IntMatrix c = IntMatrix::from_rows(rows);
      if (check_iso(a_, b_, c).ok) found.push_back(std::move(c));
      return;
    }
    for (auto& [m, row] : candidates(i, rows, used)) {
      used[m - 1] = true;
      rows.push_back(std::move(row));
      run(i + 1, rows, used, found);
      rows.pop_back();
      used[m - 1] = false;
    }
  }

  int n() const { return n_; }

 private:
  BottMatrix a_, b_;
  int n_;
  int bound_;
  std::vector<int> level_a_, level_b_;
  std::vector<IntVector> gen_b_;
};

}  // namespace

std::vector<GradedIso> search_isos(const BottMatrix& a, const BottMatrix& b, int bound, int jobs) {
  if (a.n() != b.n() || bound < 0) return {};
  IsoSearch search(a, b, bound);
  const int n = a.n();

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<IntVector> rows;
  auto first = search.candidates(1, rows, used);

  std::vector<std::vector<IntMatrix>> partial(first.size());
  auto branch = [&](std::size_t idx) {
    std::vector<bool> u(static_cast<std::size_t>(n), false);
    u[static_cast<std::size_t>(first[idx].first - 1)] = true;
    std::vector<IntVector> r{first[idx].second};
    search.run(2, r, u, partial[idx]);
  };
  if (jobs <= 1 || first.size() <= 1) {
    for (std::size_t idx = 0; idx < first.size(); ++idx) branch(idx);
  } else {
    std::size_t next = 0;
    while (next < first.size()) {
      std::vector<std::future<void>> batch;
      for (int t = 0; t < jobs && next < first.size(); ++t, ++next) {
        batch.push_back(std::async(std::launch::async, branch, next));
      }
      for (auto& f : batch) f.get();
    }
  }

  std::set<IntMatrix> unique;
  for (auto& p : partial) {
    for (auto& c : p) unique.insert(std::move(c));
  }
  std::vector<GradedIso> out;
  out.reserve(unique.size());
  for (const auto& c : unique) out.push_back(make_iso(a, b, c));
  return out;
}

}  // namespace bott
