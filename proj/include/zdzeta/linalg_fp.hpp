#pragma once

// Rank of dense matrices over F_p by Gaussian elimination.

#include <cstdint>
#include <utility>
#include <vector>

#include "zdzeta/arith.hpp"

namespace zdzeta {

using FpRow = std::vector<std::uint32_t>;

namespace detail {

inline std::size_t rank_gf2(const std::vector<FpRow>& rows, std::size_t ncols) {
  const std::size_t words = (ncols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<std::uint64_t> packed(words, 0);
    for (std::size_t c = 0; c < ncols; ++c) {
      if (r[c] & 1U) packed[c / 64] |= std::uint64_t{1} << (c % 64);
    }
    m.push_back(std::move(packed));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < m.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < m.size() && !(m[piv][w] & bit)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const auto& prow = m[rank];
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (!(m[r][w] & bit)) continue;
      for (std::size_t k = w; k < words; ++k) m[r][k] ^= prow[k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank over F_p of the given rows (entries already reduced mod p).
inline std::size_t rank_fp(std::uint32_t p, std::vector<FpRow> rows, std::size_t ncols) {
  if (p == 2) return detail::rank_gf2(rows, ncols);
  const std::uint64_t mod = p;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const std::uint64_t inv = powmod_u64(rows[rank][c], mod - 2, mod);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const std::uint64_t f = mod - rows[r][c] * inv % mod;
      for (std::size_t k = c; k < ncols; ++k) {
        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + f * rows[rank][k]) % mod);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace zdzeta
