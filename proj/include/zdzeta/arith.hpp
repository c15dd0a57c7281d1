#pragma once

// Integer helpers shared by every module: primality, factorization of
// machine integers, exact big integers and factored prime-power products.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zdzeta/error.hpp"

namespace zdzeta {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

/// Trial-division factorization; ascending primes with exponents.
inline std::vector<std::pair<std::uint64_t, int>> factor_integer(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
    int e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e > 0) out.emplace_back(f, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Sum of positive divisors.
inline std::uint64_t sigma(std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::InvalidIndex, "sigma requires n >= 1, got " + std::to_string(n));
  std::uint64_t result = 1;
  for (auto [prime, e] : factor_integer(static_cast<std::uint64_t>(n))) {
    std::uint64_t term = 1;
    std::uint64_t power = 1;
    for (int i = 0; i < e; ++i) {
      power *= prime;
      term += power;
    }
    result *= term;
  }
  return result;
}

/// Largest power of p dividing n.
inline std::uint64_t p_part(std::int64_t n, std::uint64_t p) {
  if (n <= 0) throw Error(ErrorKind::InvalidIndex, "p_part requires n >= 1");
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  auto m = static_cast<std::uint64_t>(n);
  std::uint64_t part = 1;
  while (m % p == 0) {
    m /= p;
    part *= p;
  }
  return part;
}

/// Multiplicative order of p modulo the prime q.
inline std::uint64_t mult_order(std::uint64_t p, std::uint64_t q) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not prime");
  if (p == q) throw Error(ErrorKind::EqualPrimes, "multiplicative order needs p != q");
  std::uint64_t order = q - 1;
  for (auto [ell, e] : factor_integer(q - 1)) {
    for (int i = 0; i < e && order % ell == 0; ++i) {
      if (powmod_u64(p, order / ell, q) != 1) break;
      order /= ell;
    }
  }
  return order;
}

/// A rational number p_1^{e_1} * ... * p_k^{e_k} held as its exponent map.
/// Periodic-point counts are the nonnegative case.
class Factored {
 public:
  Factored() = default;

  static Factored prime_power(std::uint64_t p, std::int64_t e) {
    Factored f;
    f.add(p, e);
    return f;
  }

  void add(std::uint64_t p, std::int64_t e) {
    if (e == 0) return;
    auto& slot = exps_[p];
    slot += e;
    if (slot == 0) exps_.erase(p);
  }

  Factored& operator*=(const Factored& other) {
    for (auto [p, e] : other.exps_) add(p, e);
    return *this;
  }
  friend Factored operator*(Factored a, const Factored& b) { return a *= b; }

  Factored& operator/=(const Factored& other) {
    for (auto [p, e] : other.exps_) add(p, -e);
    return *this;
  }
  friend Factored operator/(Factored a, const Factored& b) { return a /= b; }

  Factored pow(std::int64_t k) const {
    Factored f;
    for (auto [p, e] : exps_) f.add(p, e * k);
    return f;
  }

  std::int64_t exponent(std::uint64_t p) const {
    auto it = exps_.find(p);
    return it == exps_.end() ? 0 : it->second;
  }

  const std::map<std::uint64_t, std::int64_t>& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }
  bool is_integer() const {
    return std::all_of(exps_.begin(), exps_.end(), [](const auto& kv) { return kv.second >= 0; });
  }

  /// a | b for nonnegative factorizations.
  bool divides(const Factored& other) const {
    for (auto [p, e] : exps_) {
      if (other.exponent(p) < e) return false;
    }
    return true;
  }

  double log() const {
    double s = 0.0;
    for (auto [p, e] : exps_) s += static_cast<double>(e) * std::log(static_cast<double>(p));
    return s;
  }

  BigRational value() const {
    BigInt num = 1;
    BigInt den = 1;
    for (auto [p, e] : exps_) {
      BigInt pp = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e < 0 ? -e : e));
      (e < 0 ? den : num) *= pp;
    }
    return BigRational(num, den);
  }

  BigInt integer_value() const {
    if (!is_integer()) throw InternalError("Factored::integer_value on a non-integer");
    return boost::multiprecision::numerator(value());
  }

  /// "1", "2^4", "2^5*3^2", "2^-3".
  std::string to_string() const {
    if (exps_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto [p, e] : exps_) {
      if (!first) os << '*';
      first = false;
      os << p << '^' << e;
    }
    return os.str();
  }

  friend bool operator==(const Factored&, const Factored&) = default;

 private:
  std::map<std::uint64_t, std::int64_t> exps_;
};

using FactoredCount = Factored;
using FactoredRational = Factored;

inline std::string to_decimal(const BigInt& n) { return n.str(); }

/// Natural logarithm of a positive big integer without overflow.
inline double log_big(const BigInt& n) {
  if (n <= 0) throw InternalError("log_big of a nonpositive value");
  const auto bits = boost::multiprecision::msb(n);
  if (bits < 1000) return std::log(static_cast<double>(n));
  const unsigned shift = static_cast<unsigned>(bits) - 60;
  BigInt top = n >> shift;
  return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace zdzeta
