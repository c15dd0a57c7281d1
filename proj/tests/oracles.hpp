#pragma once

// Independent reference sequences used by the test suites.

#include <cstdint>
#include <vector>

#include "zdzeta/arith.hpp"

namespace zdzeta::testing {

/// Partition numbers p(0..n) by Euler's pentagonal recurrence.
inline std::vector<BigInt> partition_numbers(std::size_t n) {
  std::vector<BigInt> p(n + 1, BigInt(0));
  p[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::int64_t k = 1;; ++k) {
      const auto g1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
      if (g1 > m) break;
      const bool plus = k % 2 == 1;
      const auto g2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
      if (plus) {
        p[m] += p[m - g1];
        if (g2 <= m) p[m] += p[m - g2];
      } else {
        p[m] -= p[m - g1];
        if (g2 <= m) p[m] -= p[m - g2];
      }
    }
  }
  return p;
}

}  // namespace zdzeta::testing
