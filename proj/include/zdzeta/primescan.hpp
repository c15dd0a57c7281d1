#pragma once

// Counts over subgroups of prime index and the multiplicative-order
// condition that makes their value set finite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zdzeta/action.hpp"
#include "zdzeta/arith.hpp"
#include "zdzeta/error.hpp"
#include "zdzeta/lattice.hpp"
#include "zdzeta/parallel.hpp"

namespace zdzeta {

struct PrimeScanConfig {
  std::set<std::uint64_t> primes;  // P: characteristics of the spec
  BigRational eps{1, 10};
  int d = 2;
  std::uint64_t qmax = 1000;
};

inline PrimeScanConfig scan_config(const ActionSpec& spec, BigRational eps = BigRational(1, 10), std::uint64_t qmax = 1000) {
  return PrimeScanConfig{spec.primes(), std::move(eps), spec.d(), qmax};
}

namespace detail {

inline void check_config(const PrimeScanConfig& cfg) {
  if (cfg.eps <= 0) throw Error(ErrorKind::InvalidSpec, "eps must be positive");
  if (cfg.d < 1 || cfg.d > kMaxDimension) throw Error(ErrorKind::UnsupportedDimension, "d must be 1, 2 or 3");
}

}  // namespace detail

/// q not in P and m_p(q) > q^{1/d + eps} for every p in P, decided by
/// m^{d b} > q^{b + d a} with eps = a/b.
inline bool qualifies(const PrimeScanConfig& cfg, std::uint64_t q) {
  detail::check_config(cfg);
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not prime");
  if (cfg.primes.count(q)) return false;
  const auto a = static_cast<unsigned>(boost::multiprecision::numerator(cfg.eps));
  const auto b = static_cast<unsigned>(boost::multiprecision::denominator(cfg.eps));
  const auto d = static_cast<unsigned>(cfg.d);
  const BigInt rhs = boost::multiprecision::pow(BigInt(q), b + d * a);
  for (auto p : cfg.primes) {
    const BigInt lhs = boost::multiprecision::pow(BigInt(mult_order(p, q)), d * b);
    if (lhs <= rhs) return false;
  }
  return true;
}

struct Density {
  std::uint64_t qualifying = 0;
  std::uint64_t primes = 0;
  double ratio() const { return primes ? static_cast<double>(qualifying) / static_cast<double>(primes) : 0.0; }
};

inline Density qualifying_density(const PrimeScanConfig& cfg, std::uint64_t qmax) {
  if (qmax < 10) throw Error(ErrorKind::InvalidIndex, "qmax must be >= 10");
  Density out;
  for (auto q : primes_up_to(qmax)) {
    ++out.primes;
    out.qualifying += qualifies(cfg, q) ? 1 : 0;
  }
  return out;
}

namespace detail {

inline void require_entropy_rank_one(const ActionSpec& spec) {
  if (spec.d() < 2) throw Error(ErrorKind::UnsupportedDimension, "prime scan needs d >= 2");
  if (!spec.principals().empty()) throw Error(ErrorKind::NotEntropyRankOne, "spec has a principal component");
  if (spec.suspended()) throw Error(ErrorKind::NotEntropyRankOne, "a suspended spec has a free coordinate of positive entropy");
  require_mixing(spec);
}

}  // namespace detail

/// Beyond q0, a count at a qualifying prime index is too small to hold a
/// full orbit of p under multiplication mod q: q0 = max_p (K / log p)^{1/eps}
/// with K the Minkowski tail constant.
inline double prime_threshold(const ActionSpec& spec, const BigRational& eps) {
  detail::require_entropy_rank_one(spec);
  if (eps <= 0) throw Error(ErrorKind::InvalidSpec, "eps must be positive");
  const double k = growth_constants(spec).tail_constant;
  double q0 = 1.0;
  for (auto p : spec.primes()) q0 = std::max(q0, std::pow(k / std::log(static_cast<double>(p)), 1.0 / static_cast<double>(eps)));
  return q0;
}

/// Bound for the counts that survive at qualifying primes: the product over
/// curves of p^{mult deg(num - den of u_1)} with S-factors removed.
inline Factored prime_value_bound(const ActionSpec& spec) {
  detail::require_entropy_rank_one(spec);
  Factored c2;
  for (const auto* c : spec.curves()) {
    PolyFp diff = c->images[0].num() - c->images[0].den();
    if (diff.is_zero()) continue;
    diff = diff.monic();
    for (const auto& v : c->inverted) strip_factor(diff, v);
    c2.add(c->p, c->mult * diff.degree());
  }
  return c2;
}

struct PrimeRow {
  std::uint64_t q = 0;
  bool qualifying = false;
  bool above_threshold = false;
  std::map<std::uint64_t, std::uint64_t> orders;  // p -> m_p(q)
  std::vector<Factored> values;                   // distinct counts, ascending
};

struct PrimeScan {
  BigRational eps;
  double q0 = 0;
  Factored c2;
  std::vector<PrimeRow> rows;

  /// Values at qualifying q > q0, ascending.
  std::vector<Factored> tail_values() const {
    std::vector<Factored> out;
    for (const auto& r : rows) {
      if (!r.qualifying || !r.above_threshold) continue;
      for (const auto& v : r.values) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
    }
    std::sort(out.begin(), out.end(), [](const Factored& a, const Factored& b) { return a.integer_value() < b.integer_value(); });
    return out;
  }

  /// Every tail value is at most C2, so there are at most C2 of them.
  bool bounded() const {
    const BigInt bound = c2.integer_value();
    const auto tail = tail_values();
    if (BigInt(tail.size()) > bound) return false;
    return std::all_of(tail.begin(), tail.end(), [&](const Factored& v) { return v.integer_value() <= bound; });
  }

  std::string csv() const {
    std::ostringstream os;
    os << "q,qualifying,above_threshold";
    std::set<std::uint64_t> ps;
    for (const auto& r : rows)
      for (const auto& [p, m] : r.orders) ps.insert(p);
    for (auto p : ps) os << ",m_" << p;
    os << ",values\n";
    for (const auto& r : rows) {
      os << r.q << ',' << (r.qualifying ? "true" : "false") << ',' << (r.above_threshold ? "true" : "false");
      for (auto p : ps) os << ',' << r.orders.at(p);
      os << ",\"";
      for (std::size_t i = 0; i < r.values.size(); ++i) os << (i ? ";" : "") << r.values[i].to_string();
      os << "\"\n";
    }
    return os.str();
  }
};

/// Distinct counts over all subgroups of prime index q <= qmax.
inline PrimeScan prime_value_scan(const ActionSpec& spec, const BigRational& eps, std::uint64_t qmax, unsigned jobs = 1) {
  detail::require_entropy_rank_one(spec);
  PrimeScan out;
  out.eps = eps;
  out.q0 = prime_threshold(spec, eps);
  out.c2 = prime_value_bound(spec);
  const PrimeScanConfig cfg = scan_config(spec, eps, qmax);
  const auto qs = primes_up_to(qmax);
  out.rows = ordered_parallel_map(qs.size(), jobs, [&](std::size_t i) {
    PrimeRow row;
    row.q = qs[i];
    row.qualifying = qualifies(cfg, row.q);
    row.above_threshold = static_cast<double>(row.q) > out.q0;
    for (auto p : cfg.primes) row.orders[p] = p == row.q ? 0 : mult_order(p, row.q);
    std::vector<std::pair<BigInt, Factored>> vals;
    for (const auto& s : enumerate_subgroups(spec.d(), static_cast<std::int64_t>(row.q))) {
      Factored f = count_fixed(spec, s);
      BigInt v = f.integer_value();
      vals.emplace_back(std::move(v), std::move(f));
    }
    std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (k == 0 || vals[k].first != vals[k - 1].first) row.values.push_back(vals[k].second);
    }
    return row;
  });
  return out;
}

}  // namespace zdzeta
