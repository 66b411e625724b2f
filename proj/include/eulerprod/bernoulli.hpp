// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <mutex>
#include <vector>

#include "eulerprod/combinatorics.hpp"

namespace eulerprod {

/// Exact Bernoulli number B_n (B_1 = -1/2 convention), from the recurrence
/// sum_{j<=m} C(m+1, j) B_j = 0. Cached; cheap for the small n needed here.
inline mpq_class bernoulli(unsigned long n) {
  static std::mutex mu;
  static std::vector<mpq_class> cache{mpq_class(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    unsigned long m = cache.size();
    mpq_class s = 0;
    for (unsigned long j = 0; j < m; ++j)
      s += mpq_class(binomial(m + 1, j)) * cache[j];
    cache.push_back(-s / mpq_class(m + 1));
  }
  return cache[n];
}

}  // namespace eulerprod
