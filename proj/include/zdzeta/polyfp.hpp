#pragma once

// Dense univariate polynomials over a prime field F_p, with exact
// factorization (square-free, distinct-degree, equal-degree splitting).

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zdzeta/arith.hpp"
#include "zdzeta/error.hpp"

namespace zdzeta {

class PolyFp {
 public:
  using Coeff = std::uint32_t;

  PolyFp() = default;
  explicit PolyFp(std::uint32_t p) : p_(p) {}

  /// Coefficients in ascending degree; reduced mod p and trimmed.
  PolyFp(std::uint32_t p, const std::vector<std::int64_t>& coeffs) : p_(p) {
    c_.reserve(coeffs.size());
    const auto mod = static_cast<std::int64_t>(p);
    for (auto x : coeffs) c_.push_back(static_cast<Coeff>(((x % mod) + mod) % mod));
    trim();
  }

  static PolyFp from_raw(std::uint32_t p, std::vector<Coeff> coeffs) {
    PolyFp f(p);
    f.c_ = std::move(coeffs);
    f.trim();
    return f;
  }

  static PolyFp constant(std::uint32_t p, std::int64_t c) { return PolyFp(p, {c}); }
  static PolyFp one(std::uint32_t p) { return constant(p, 1); }
  static PolyFp monomial(std::uint32_t p, std::size_t deg, Coeff c = 1) {
    std::vector<Coeff> v(deg + 1, 0);
    v[deg] = c % p;
    return from_raw(p, std::move(v));
  }
  /// The indeterminate t.
  static PolyFp t(std::uint32_t p) { return monomial(p, 1); }

  std::uint32_t prime() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Coeff lead() const { return c_.empty() ? 0 : c_.back(); }
  Coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Coeff>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Coeff inv(Coeff a) const {
    if (a % p_ == 0) throw Error(ErrorKind::ZeroArgument, "inverse of 0 in F_p");
    return static_cast<Coeff>(powmod_u64(a, p_ - 2, p_));
  }

  PolyFp monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(inv(lead()));
  }

  PolyFp scaled(Coeff k) const {
    PolyFp r(p_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      r.c_[i] = static_cast<Coeff>(static_cast<std::uint64_t>(c_[i]) * k % p_);
    }
    r.trim();
    return r;
  }

  PolyFp derivative() const {
    PolyFp r(p_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
      r.c_[i - 1] = static_cast<Coeff>(static_cast<std::uint64_t>(c_[i]) * (i % p_) % p_);
    }
    r.trim();
    return r;
  }

  PolyFp& operator+=(const PolyFp& o) {
    check_same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      const Coeff s = c_[i] + o.c_[i];
      c_[i] = s >= p_ ? s - p_ : s;
    }
    trim();
    return *this;
  }
  PolyFp& operator-=(const PolyFp& o) {
    check_same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p_ - o.c_[i];
    }
    trim();
    return *this;
  }
  friend PolyFp operator+(PolyFp a, const PolyFp& b) { return a += b; }
  friend PolyFp operator-(PolyFp a, const PolyFp& b) { return a -= b; }

  friend PolyFp operator*(const PolyFp& a, const PolyFp& b) {
    a.check_same(b);
    PolyFp r(a.p_);
    if (a.is_zero() || b.is_zero()) return r;
    const std::uint64_t p = a.p_;
    if (p == 2) {
      r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
      for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i]) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] ^= b.c_[j];
      }
    } else {
      std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
      for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i]) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
          acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a.c_[i]) * b.c_[j]) % p;
        }
      }
      r.c_.assign(acc.begin(), acc.end());
    }
    r.trim();
    return r;
  }
  PolyFp& operator*=(const PolyFp& o) { return *this = *this * o; }

  /// Quotient and remainder; throws ZeroPolynomial on division by 0.
  friend std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
    a.check_same(b);
    if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
    PolyFp q(a.p_);
    PolyFp r = a;
    if (a.degree() < b.degree()) return {q, r};
    const std::size_t db = b.c_.size() - 1;
    q.c_.assign(a.c_.size() - db, 0);
    r.reduce_by(b, &q.c_);
    q.trim();
    return {q, r};
  }
  friend PolyFp operator%(PolyFp a, const PolyFp& b) {
    a.check_same(b);
    if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
    a.reduce_by(b, nullptr);
    return a;
  }
  friend PolyFp operator/(const PolyFp& a, const PolyFp& b) { return divmod(a, b).first; }

  friend bool operator==(const PolyFp& a, const PolyFp& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  /// Degree first, then coefficients from the top down.
  friend bool operator<(const PolyFp& a, const PolyFp& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

  /// "1,1,1" for 1 + t + t^2; "0" for zero.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    return os.str();
  }

  /// Human-readable form, e.g. "t^2+t+1".
  std::string pretty() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (!c_[i]) continue;
      if (!first) os << '+';
      first = false;
      if (i == 0 || c_[i] != 1) os << c_[i];
      if (i >= 1) os << 't';
      if (i >= 2) os << '^' << i;
    }
    return os.str();
  }

  static PolyFp parse(std::uint32_t p, std::string_view text) {
    std::vector<std::int64_t> coeffs;
    std::string item;
    std::string s(text);
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) throw Error(ErrorKind::ParseError, "empty coefficient in \"" + s + "\"");
      item = item.substr(b, e - b + 1);
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(item, &used);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad coefficient \"" + item + "\"");
      }
      if (used != item.size()) throw Error(ErrorKind::ParseError, "bad coefficient \"" + item + "\"");
      coeffs.push_back(v);
    }
    if (coeffs.empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
    return PolyFp(p, coeffs);
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  void check_same(const PolyFp& o) const {
    if (p_ != o.p_) throw Error(ErrorKind::InvalidSpec, "mixing polynomials of different characteristic");
  }

  // In-place remainder by b, optionally accumulating the quotient.
  void reduce_by(const PolyFp& b, std::vector<Coeff>* quotient) {
    const std::size_t db = b.c_.size() - 1;
    if (c_.size() <= db) return;
    if (p_ == 2) {
      for (std::size_t i = c_.size(); i-- > db;) {
        if (!c_[i]) continue;
        if (quotient) (*quotient)[i - db] = 1;
        Coeff* base = c_.data() + (i - db);
        for (std::size_t j = 0; j <= db; ++j) base[j] ^= b.c_[j];
      }
    } else {
      const std::uint64_t p = p_;
      const std::uint64_t inv_lead = inv(b.lead());
      for (std::size_t i = c_.size(); i-- > db;) {
        if (!c_[i]) continue;
        const std::uint64_t factor = c_[i] * inv_lead % p;
        if (quotient) (*quotient)[i - db] = static_cast<Coeff>(factor);
        const std::uint64_t neg = p - factor;
        Coeff* base = c_.data() + (i - db);
        for (std::size_t j = 0; j <= db; ++j) {
          base[j] = static_cast<Coeff>((base[j] + neg * b.c_[j]) % p);
        }
      }
    }
    c_.resize(std::min(c_.size(), db));
    trim();
  }

  std::uint32_t p_ = 2;
  std::vector<Coeff> c_;
};

namespace detail {

// Bit-packed F_2[t]: bit i of word i/64 holds the coefficient of t^i.
using Gf2Words = std::vector<std::uint64_t>;

inline Gf2Words to_words(const PolyFp& f) {
  Gf2Words w((f.coeffs().size() + 63) / 64, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i]) w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return w;
}

inline PolyFp from_words(const Gf2Words& w) {
  std::vector<PolyFp::Coeff> c(w.size() * 64, 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (w[i / 64] >> (i % 64)) & 1U;
  return PolyFp::from_raw(2, std::move(c));
}

inline long gf2_degree(const Gf2Words& w) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i]) return static_cast<long>(i * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(w[i])));
  }
  return -1;
}

// a <- a mod b, where db = deg b >= 0.
inline void gf2_reduce(Gf2Words& a, const Gf2Words& b, long db) {
  const std::size_t bw = static_cast<std::size_t>(db / 64 + 1);
  for (long da = gf2_degree(a); da >= db;) {
    const auto shift = static_cast<std::size_t>(da - db);
    const std::size_t ws = shift / 64;
    const unsigned bs = shift % 64;
    for (std::size_t j = 0; j < bw; ++j) {
      a[j + ws] ^= b[j] << bs;
      if (bs && j + ws + 1 < a.size()) a[j + ws + 1] ^= b[j] >> (64 - bs);
    }
    // The top bit is cleared, so the degree only decreases.
    for (; da >= 0 && !((a[static_cast<std::size_t>(da) / 64] >> (da % 64)) & 1U); --da) {
    }
  }
}

inline PolyFp gf2_gcd(const PolyFp& x, const PolyFp& y) {
  Gf2Words a = to_words(x);
  Gf2Words b = to_words(y);
  long db = gf2_degree(b);
  while (db >= 0) {
    gf2_reduce(a, b, db);
    std::swap(a, b);
    db = gf2_degree(b);
  }
  return from_words(a);
}

}  // namespace detail

/// Monic gcd; gcd(0, 0) = 0.
inline PolyFp gcd(PolyFp a, PolyFp b) {
  if (a.prime() == 2 && std::min(a.degree(), b.degree()) > 64) return detail::gf2_gcd(a, b);
  while (!b.is_zero()) {
    a = a % b;
    std::swap(a, b);
  }
  return a.monic();
}

inline PolyFp pow(const PolyFp& base, std::uint64_t e) {
  PolyFp result = PolyFp::one(base.prime());
  PolyFp b = base;
  while (e > 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e) b *= b;
  }
  return result;
}

inline PolyFp mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m) { return (a * b) % m; }

inline PolyFp powmod(const PolyFp& base, const BigInt& exponent, const PolyFp& m) {
  PolyFp result = PolyFp::one(base.prime()) % m;
  PolyFp b = base % m;
  BigInt e = exponent;
  while (e > 0) {
    if ((e & 1) != 0) result = mulmod(result, b, m);
    e >>= 1;
    if (e > 0) b = mulmod(b, b, m);
  }
  return result;
}

inline PolyFp powmod(const PolyFp& base, std::uint64_t exponent, const PolyFp& m) {
  return powmod(base, BigInt(exponent), m);
}

/// Removes every factor v from f; returns the multiplicity removed.
inline int strip_factor(PolyFp& f, const PolyFp& v) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "multiplicity in the zero polynomial");
  int k = 0;
  while (f.degree() >= v.degree()) {
    auto [q, r] = divmod(f, v);
    if (!r.is_zero()) break;
    f = std::move(q);
    ++k;
  }
  return k;
}

struct PolyFactor {
  PolyFp poly;  // monic irreducible
  int mult = 0;
  friend bool operator==(const PolyFactor&, const PolyFactor&) = default;
};

struct Factorization {
  PolyFp::Coeff unit = 1;
  std::vector<PolyFactor> factors;  // sorted by polynomial order
};

namespace detail {

// x with x^p = f, for f whose derivative vanishes.
inline PolyFp pth_root(const PolyFp& f) {
  const std::uint32_t p = f.prime();
  std::vector<PolyFp::Coeff> out(static_cast<std::size_t>(f.degree()) / p + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out[i / p] = f.coeffs()[i];
  return PolyFp::from_raw(p, std::move(out));
}

inline void squarefree_decompose(const PolyFp& f, int scale, std::vector<PolyFactor>& out) {
  if (f.degree() < 1) return;
  const PolyFp df = f.derivative();
  if (df.is_zero()) {
    squarefree_decompose(pth_root(f), scale * static_cast<int>(f.prime()), out);
    return;
  }
  PolyFp c = gcd(f, df);
  PolyFp w = f / c;
  int i = 1;
  while (!w.is_one()) {
    PolyFp y = gcd(w, c);
    PolyFp fac = w / y;
    if (!fac.is_one()) out.push_back({fac.monic(), i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) squarefree_decompose(pth_root(c).monic(), scale * static_cast<int>(f.prime()), out);
}

// Splits a squarefree product of degree-d irreducibles.
inline void equal_degree_split(const PolyFp& f, int d, std::mt19937_64& rng, std::vector<PolyFp>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const std::uint32_t p = f.prime();
  std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
  while (true) {
    std::vector<PolyFp::Coeff> r(static_cast<std::size_t>(f.degree()), 0);
    for (auto& x : r) x = coeff(rng);
    PolyFp a = PolyFp::from_raw(p, std::move(r));
    if (a.degree() < 1) continue;
    PolyFp b(p);
    if (p == 2) {
      // Trace a + a^2 + ... + a^{2^{d-1}}.
      PolyFp term = a % f;
      b = term;
      for (int i = 1; i < d; ++i) {
        term = mulmod(term, term, f);
        b += term;
      }
    } else {
      // a^{(p^d - 1)/2} = (a^{1 + p + .. + p^{d-1}})^{(p-1)/2}
      PolyFp frob = a % f;
      PolyFp norm = frob;
      for (int i = 1; i < d; ++i) {
        frob = powmod(frob, p, f);
        norm = mulmod(norm, frob, f);
      }
      b = powmod(norm, (p - 1) / 2, f) - PolyFp::one(p);
    }
    PolyFp g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
  }
}

inline void distinct_degree_split(const PolyFp& squarefree, int mult, std::mt19937_64& rng,
                                  std::vector<PolyFactor>& out) {
  const std::uint32_t p = squarefree.prime();
  PolyFp f = squarefree.monic();
  const PolyFp t = PolyFp::t(p);
  PolyFp h = t % f;
  for (int d = 1; f.degree() >= 2 * d; ++d) {
    h = powmod(h, p, f);
    PolyFp g = gcd(f, h - t);
    if (!g.is_one()) {
      std::vector<PolyFp> pieces;
      equal_degree_split(g, d, rng, pieces);
      for (auto& piece : pieces) out.push_back({std::move(piece), mult});
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() >= 1) out.push_back({f.monic(), mult});
}

}  // namespace detail

/// Irreducible factorization over F_p: f = unit * prod poly^mult.
/// Deterministic: equal-degree splitting uses a fixed seed.
inline Factorization factor(const PolyFp& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
  Factorization result;
  result.unit = f.lead();
  std::vector<PolyFactor> squarefree;
  detail::squarefree_decompose(f.monic(), 1, squarefree);
  std::mt19937_64 rng(0x5eed5eedULL);
  std::vector<PolyFactor> pieces;
  for (const auto& [g, m] : squarefree) detail::distinct_degree_split(g, m, rng, pieces);
  // Merge repeated irreducibles that surface from different square-free layers.
  std::sort(pieces.begin(), pieces.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.poly < b.poly; });
  for (auto& piece : pieces) {
    if (!result.factors.empty() && result.factors.back().poly == piece.poly) {
      result.factors.back().mult += piece.mult;
    } else {
      result.factors.push_back(std::move(piece));
    }
  }
  return result;
}

inline bool is_irreducible(const PolyFp& f) {
  if (f.degree() < 1) return false;
  const auto fac = factor(f);
  return fac.factors.size() == 1 && fac.factors[0].mult == 1;
}

}  // namespace zdzeta
