#pragma once

// Permutation/scalar data attached to an isomorphism,
//
//   phi(2x_i - alpha_i) = eps_i (2y_sigma(i) - beta_sigma(i)),  lev(x_i) = lev(y_sigma(i)),
//
// and a bounded isomorphism search pruned by that identity.

#include "bott/iso.hpp"
#include "bott/structure.hpp"

#include <vector>

namespace bott {

struct SigmaEps {
  std::vector<int> sigma;  // sigma[i-1] = sigma(i)
  std::vector<Half> eps;
};

/// Throws ExtractionFailure when the identity or level preservation fails.
SigmaEps extract_sigma_eps(const GradedIso& phi, const DecompositionTower& source_tower,
                           const DecompositionTower& target_tower);
SigmaEps extract_sigma_eps(const GradedIso& phi);

inline constexpr int kDefaultSearchBound = 6;

/// All isomorphisms with |c_ij| <= bound, sorted by matrix. Branches of the
/// search run on up to `jobs` threads; the result does not depend on it.
std::vector<GradedIso> search_isos(const BottMatrix& a, const BottMatrix& b, int bound,
                                   int jobs = 1);

}  // namespace bott
