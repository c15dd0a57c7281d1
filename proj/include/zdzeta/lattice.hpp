#pragma once

// Finite-index subgroups of Z^d in column Hermite normal form.
//
// A subgroup is stored as an upper-triangular d x d matrix whose COLUMNS
// generate it: diagonal a_1..a_d >= 1 and 0 <= b_mn < a_m above the diagonal.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "zdzeta/arith.hpp"
#include "zdzeta/error.hpp"

namespace zdzeta {

using IntVec = std::vector<std::int64_t>;

inline constexpr int kMaxDimension = 3;

class Subgroup {
 public:
  Subgroup() = default;

  /// Takes a row-major upper-triangular matrix already in normal form.
  Subgroup(int d, std::vector<std::int64_t> row_major) : d_(d), m_(std::move(row_major)) {
    if (d < 1) throw Error(ErrorKind::UnsupportedDimension, "dimension must be positive");
    if (m_.size() != static_cast<std::size_t>(d * d)) {
      throw Error(ErrorKind::ParseError, "HNF needs d*d entries");
    }
    for (int r = 0; r < d; ++r) {
      if (at(r, r) < 1) throw Error(ErrorKind::NotFiniteIndex, "HNF diagonal entries must be >= 1");
      for (int c = 0; c < d; ++c) {
        if (c < r && at(r, c) != 0) throw Error(ErrorKind::ParseError, "HNF must be upper triangular");
        if (c > r && (at(r, c) < 0 || at(r, c) >= at(r, r))) {
          throw Error(ErrorKind::ParseError, "HNF off-diagonal entry out of range [0, a_m)");
        }
      }
    }
  }

  static Subgroup identity(int d) {
    std::vector<std::int64_t> m(static_cast<std::size_t>(d * d), 0);
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i * d + i)] = 1;
    return Subgroup(d, std::move(m));
  }

  static Subgroup diagonal(const IntVec& diag) {
    const int d = static_cast<int>(diag.size());
    std::vector<std::int64_t> m(static_cast<std::size_t>(d * d), 0);
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i * d + i)] = diag[static_cast<std::size_t>(i)];
    return Subgroup(d, std::move(m));
  }

  int dim() const { return d_; }
  std::int64_t at(int row, int col) const { return m_[static_cast<std::size_t>(row * d_ + col)]; }
  std::int64_t diag(int i) const { return at(i, i); }
  const std::vector<std::int64_t>& row_major() const { return m_; }

  std::int64_t index() const {
    std::int64_t n = 1;
    for (int i = 0; i < d_; ++i) n *= diag(i);
    return n;
  }

  IntVec column(int j) const {
    IntVec v(static_cast<std::size_t>(d_));
    for (int r = 0; r < d_; ++r) v[static_cast<std::size_t>(r)] = at(r, j);
    return v;
  }

  std::vector<IntVec> generators() const {
    std::vector<IntVec> g;
    for (int j = 0; j < d_; ++j) g.push_back(column(j));
    return g;
  }

  /// The top-left (d-1)-block, i.e. the intersection with Z^{d-1} x {0}.
  Subgroup leading_block() const {
    if (d_ < 2) throw Error(ErrorKind::UnsupportedDimension, "leading block needs d >= 2");
    const int k = d_ - 1;
    std::vector<std::int64_t> m;
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) m.push_back(at(r, c));
    return Subgroup(k, std::move(m));
  }

  /// Canonical coset representative of v modulo the subgroup: 0 <= r_i < a_i.
  IntVec reduce(IntVec v) const {
    for (int j = d_ - 1; j >= 0; --j) {
      const std::int64_t a = diag(j);
      std::int64_t q = v[static_cast<std::size_t>(j)] / a;
      if (v[static_cast<std::size_t>(j)] - q * a < 0) --q;
      if (q != 0) {
        for (int r = 0; r <= j; ++r) v[static_cast<std::size_t>(r)] -= q * at(r, j);
      }
    }
    return v;
  }

  bool contains(const IntVec& v) const {
    const IntVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
  }

  /// Subgroup inclusion: every generator of *this lies in other.
  bool is_subgroup_of(const Subgroup& other) const {
    for (int j = 0; j < d_; ++j) {
      if (!other.contains(column(j))) return false;
    }
    return true;
  }

  /// Enumeration key: (a_1..a_d, b_12, b_13, .., b_23, ..).
  std::vector<std::int64_t> sort_key() const {
    std::vector<std::int64_t> key;
    for (int i = 0; i < d_; ++i) key.push_back(diag(i));
    for (int r = 0; r < d_; ++r)
      for (int c = r + 1; c < d_; ++c) key.push_back(at(r, c));
    return key;
  }

  /// Row-major list, e.g. "[3,1,0,1]".
  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m_.size(); ++i) os << (i ? "," : "") << m_[i];
    os << ']';
    return os.str();
  }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.d_ != b.d_) return a.d_ < b.d_;
    return a.sort_key() < b.sort_key();
  }

 private:
  int d_ = 0;
  std::vector<std::int64_t> m_;
};

namespace detail {

inline void check_dimension(int d) {
  if (d < 1 || d > kMaxDimension) {
    throw Error(ErrorKind::UnsupportedDimension, "dimension " + std::to_string(d) + " outside 1.." +
                                                     std::to_string(kMaxDimension));
  }
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      if (k != n / k) out.push_back(n / k);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void ordered_factorizations(std::int64_t n, int parts, IntVec& prefix, std::vector<IntVec>& out) {
  if (parts == 1) {
    prefix.push_back(n);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::int64_t a : divisors(n)) {
    prefix.push_back(a);
    ordered_factorizations(n / a, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// Every subgroup of index n in Z^d, each exactly once, sorted by
/// (a_1..a_d, b_12, b_13, .., b_23, ..).
inline std::vector<Subgroup> enumerate_subgroups(int d, std::int64_t n) {
  detail::check_dimension(d);
  if (n <= 0) throw Error(ErrorKind::InvalidIndex, "index must be >= 1, got " + std::to_string(n));

  std::vector<IntVec> diags;
  IntVec prefix;
  detail::ordered_factorizations(n, d, prefix, diags);

  std::vector<Subgroup> out;
  for (const IntVec& a : diags) {
    // Off-diagonal slots in row-major order with their bounds a_row.
    std::vector<std::pair<int, int>> slots;
    for (int r = 0; r < d; ++r)
      for (int c = r + 1; c < d; ++c) slots.emplace_back(r, c);
    IntVec b(slots.size(), 0);
    // Odometer over b with the last slot fastest.
    auto advance = [&] {
      for (std::size_t s = slots.size(); s-- > 0;) {
        if (++b[s] < a[static_cast<std::size_t>(slots[s].first)]) return true;
        b[s] = 0;
      }
      return false;
    };
    do {
      std::vector<std::int64_t> m(static_cast<std::size_t>(d * d), 0);
      for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i * d + i)] = a[static_cast<std::size_t>(i)];
      for (std::size_t s = 0; s < slots.size(); ++s) {
        m[static_cast<std::size_t>(slots[s].first * d + slots[s].second)] = b[s];
      }
      out.emplace_back(d, std::move(m));
    } while (advance());
  }
  return out;
}

/// Number of index-n subgroups of Z^d from the divisor recursion, without
/// building matrices: sum over a_1..a_d of a_1^{d-1} a_2^{d-2} ...
inline std::uint64_t count_subgroups(int d, std::int64_t n) {
  detail::check_dimension(d);
  if (n <= 0) throw Error(ErrorKind::InvalidIndex, "index must be >= 1");
  std::vector<IntVec> diags;
  IntVec prefix;
  detail::ordered_factorizations(n, d, prefix, diags);
  std::uint64_t total = 0;
  for (const IntVec& a : diags) {
    std::uint64_t term = 1;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d - 1 - i; ++k) term *= static_cast<std::uint64_t>(a[static_cast<std::size_t>(i)]);
    total += term;
  }
  return total;
}

/// Column HNF of the integer span of the given vectors.
inline Subgroup hnf_canonicalize(int d, const std::vector<IntVec>& generators) {
  if (d < 1) throw Error(ErrorKind::UnsupportedDimension, "dimension must be positive");
  std::vector<IntVec> cols;
  for (const auto& g : generators) {
    if (g.size() != static_cast<std::size_t>(d)) {
      throw Error(ErrorKind::ParseError, "generator has wrong length");
    }
    cols.push_back(g);
  }

  std::vector<IntVec> basis(static_cast<std::size_t>(d));
  for (int row = d - 1; row >= 0; --row) {
    // Euclid on the entries in this row across the active columns.
    std::optional<std::size_t> pivot;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j][static_cast<std::size_t>(row)] == 0) continue;
      if (!pivot) {
        pivot = j;
        continue;
      }
      IntVec& x = cols[*pivot];
      IntVec& y = cols[j];
      while (y[static_cast<std::size_t>(row)] != 0) {
        const std::int64_t q = x[static_cast<std::size_t>(row)] / y[static_cast<std::size_t>(row)];
        for (int r = 0; r < d; ++r) x[static_cast<std::size_t>(r)] -= q * y[static_cast<std::size_t>(r)];
        std::swap(x, y);
      }
    }
    if (!pivot) {
      throw Error(ErrorKind::NotFiniteIndex, "generators span a subgroup of rank < " + std::to_string(d));
    }
    IntVec col = cols[*pivot];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(*pivot));
    if (col[static_cast<std::size_t>(row)] < 0) {
      for (auto& x : col) x = -x;
    }
    basis[static_cast<std::size_t>(row)] = std::move(col);
  }

  // Reduce entries above the diagonal, column by column.
  for (int c = 0; c < d; ++c) {
    IntVec& col = basis[static_cast<std::size_t>(c)];
    for (int m = c - 1; m >= 0; --m) {
      const IntVec& piv = basis[static_cast<std::size_t>(m)];
      const std::int64_t q = detail::floor_div(col[static_cast<std::size_t>(m)], piv[static_cast<std::size_t>(m)]);
      if (q != 0) {
        for (int r = 0; r <= m; ++r) col[static_cast<std::size_t>(r)] -= q * piv[static_cast<std::size_t>(r)];
      }
    }
  }

  std::vector<std::int64_t> m(static_cast<std::size_t>(d * d), 0);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) m[static_cast<std::size_t>(r * d + c)] = basis[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
  return Subgroup(d, std::move(m));
}

/// Minkowski constant for the Euclidean ball: every lattice of covolume V in
/// R^d has a nonzero vector of norm <= minkowski_constant(d) * V^{1/d}.
inline double minkowski_constant(int d) {
  const double pi = std::numbers::pi;
  switch (d) {
    case 1: return 1.0;
    case 2: return 2.0 / std::sqrt(pi);
    case 3: return 2.0 * std::cbrt(3.0 / (4.0 * pi));
    default: return std::sqrt(static_cast<double>(d));
  }
}

inline std::int64_t norm2(const IntVec& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x * x;
  return s;
}

inline std::int64_t norm1(const IntVec& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x < 0 ? -x : x;
  return s;
}

/// Flip sign so the first nonzero coordinate is positive.
inline IntVec sign_normalized(IntVec v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

/// A nonzero vector of minimal Euclidean norm; ties go to the
/// lexicographically smallest sign-normalized vector.
inline IntVec short_vector(const Subgroup& s) {
  const int d = s.dim();
  std::int64_t bound = std::numeric_limits<std::int64_t>::max();
  for (int j = 0; j < d; ++j) bound = std::min(bound, norm2(s.column(j)));
  const double mk = minkowski_constant(d) * std::pow(static_cast<double>(s.index()), 1.0 / d);
  bound = std::min(bound, static_cast<std::int64_t>(std::floor(mk * mk)) + 1);

  std::optional<IntVec> best;
  std::int64_t best_norm = bound;
  IntVec coeff(static_cast<std::size_t>(d), 0);
  IntVec x(static_cast<std::size_t>(d), 0);

  // Depth-first over rows d-1..0; x_i = a_i k_i + sum_{j>i} h_ij k_j.
  auto recurse = [&](auto&& self, int row, std::int64_t partial) -> void {
    if (partial > best_norm) return;
    if (row < 0) {
      if (partial == 0) return;
      IntVec cand = sign_normalized(x);
      if (!best || partial < best_norm || (partial == best_norm && cand < *best)) {
        best = cand;
        best_norm = partial;
      }
      return;
    }
    std::int64_t offset = 0;
    for (int j = row + 1; j < d; ++j) offset += s.at(row, j) * coeff[static_cast<std::size_t>(j)];
    const std::int64_t a = s.diag(row);
    const double room = std::sqrt(static_cast<double>(best_norm - partial)) + 1.0;
    const auto lo = static_cast<std::int64_t>(std::floor((-room - static_cast<double>(offset)) / static_cast<double>(a)));
    const auto hi = static_cast<std::int64_t>(std::ceil((room - static_cast<double>(offset)) / static_cast<double>(a)));
    for (std::int64_t k = lo; k <= hi; ++k) {
      const std::int64_t xi = a * k + offset;
      const std::int64_t next = partial + xi * xi;
      if (next > best_norm) continue;
      coeff[static_cast<std::size_t>(row)] = k;
      x[static_cast<std::size_t>(row)] = xi;
      self(self, row - 1, next);
    }
    coeff[static_cast<std::size_t>(row)] = 0;
    x[static_cast<std::size_t>(row)] = 0;
  };
  recurse(recurse, d - 1, 0);
  if (!best) throw InternalError("short_vector found no vector inside the Minkowski ball");
  return *best;
}

struct GronwallWitness {
  std::uint64_t n = 0;
  double ratio = 0.0;  // sigma(N) / (N ln ln N)
};

/// Smallest N > 0 with N = t (mod q) and n_k | N, where n_k is the product
/// of the primes <= k not dividing q.
inline GronwallWitness gronwall_witness(std::uint64_t t, std::uint64_t q, std::uint64_t k) {
  if (q < 1 || t >= q) throw Error(ErrorKind::InvalidIndex, "need q >= 1 and 0 <= t < q");
  if (k < 3) throw Error(ErrorKind::InvalidIndex, "cutoff k must be >= 3");
  std::uint64_t nk = 1;
  for (auto prime : primes_up_to(k)) {
    if (q % prime != 0) nk *= prime;
  }
  if (std::gcd(q, nk) != 1) throw Error(ErrorKind::NoSolution, "incompatible congruences");

  // N = nk * m with nk * m = t (mod q).
  const std::uint64_t limit = q * nk;
  std::uint64_t found = 0;
  for (std::uint64_t m = 1; m <= q; ++m) {
    const std::uint64_t cand = nk * m;
    if (cand % q == t % q) {
      found = cand;
      break;
    }
  }
  if (found == 0 || found > limit) throw Error(ErrorKind::NoSolution, "no N <= q*n_k in the progression");
  const double n = static_cast<double>(found);
  const double loglog = std::log(std::log(n));
  if (!(loglog > 0.0)) throw Error(ErrorKind::NoSolution, "ln ln N undefined or nonpositive for N = " + std::to_string(found));
  return {found, static_cast<double>(sigma(static_cast<std::int64_t>(found))) / (n * loglog)};
}

}  // namespace zdzeta
