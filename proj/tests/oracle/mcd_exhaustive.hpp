#pragma once

// Brute-force MCD: the h-subset with the smallest sample-covariance
// determinant over all C(n, h) subsets. Determinants by cofactor expansion.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "oracle/linalg.hpp"

namespace oracle {

struct ExhaustiveMcd {
  std::vector<std::size_t> subset;  // lexicographically smallest among ties
  double logdet = std::numeric_limits<double>::infinity();
  std::size_t examined = 0;
};

inline double subset_logdet(const Dense& x, const std::vector<std::size_t>& rows) {
  Dense sub;
  for (auto r : rows) sub.push_back(x[r]);
  const double det = cofactor_det(moments(sub).cov);
  return det > 0.0 ? std::log(det) : -std::numeric_limits<double>::infinity();
}

// `tie_rel` matches the library's tie tolerance on log-determinants.
inline ExhaustiveMcd exhaustive_mcd(const Dense& x, std::size_t h, double tie_rel = 1e-10) {
  const std::size_t n = x.size();
  ExhaustiveMcd best;
  std::vector<std::size_t> c(h);
  for (std::size_t i = 0; i < h; ++i) c[i] = i;
  while (true) {
    ++best.examined;
    const double ld = subset_logdet(x, c);
    // Enumeration is lexicographic, so the first subset at the minimum wins
    // ties.
    if (ld < best.logdet - tie_rel * std::max(1.0, std::abs(best.logdet)) ||
        best.subset.empty()) {
      best.logdet = ld;
      best.subset = c;
    }
    std::size_t i = h;
    while (i > 0 && c[i - 1] == n - h + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < h; ++j) c[j] = c[j - 1] + 1;
  }
  return best;
}

}  // namespace oracle
