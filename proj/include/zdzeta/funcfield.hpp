#pragma once

// Rational functions over F_p, places of F_p(t) and their valuations.
// Absolute values are kept as integer exponents of p: |f|_v = p^{-deg(v) ord_v(f)}.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zdzeta/arith.hpp"
#include "zdzeta/error.hpp"
#include "zdzeta/polyfp.hpp"

namespace zdzeta {

/// num/den in lowest terms with den monic.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(PolyFp num) : num_(std::move(num)), den_(PolyFp::one(num_.prime())) {}

  RatFunc(PolyFp num, PolyFp den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "rational function with zero denominator");
    if (num_.prime() != den_.prime()) throw Error(ErrorKind::InvalidSpec, "numerator and denominator over different fields");
    normalize();
  }

  std::uint32_t prime() const { return num_.prime(); }
  const PolyFp& num() const { return num_; }
  const PolyFp& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroArgument, "division by zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

  RatFunc pow(std::int64_t e) const {
    if (e >= 0) return {zdzeta::pow(num_, static_cast<std::uint64_t>(e)), zdzeta::pow(den_, static_cast<std::uint64_t>(e))};
    if (is_zero()) throw Error(ErrorKind::ZeroArgument, "negative power of zero");
    return {zdzeta::pow(den_, static_cast<std::uint64_t>(-e)), zdzeta::pow(num_, static_cast<std::uint64_t>(-e))};
  }

  /// "num/den" in polynomial text format; "num" when den = 1.
  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

  static RatFunc parse(std::uint32_t p, std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return RatFunc(PolyFp::parse(p, text));
    return {PolyFp::parse(p, text.substr(0, slash)), PolyFp::parse(p, text.substr(slash + 1))};
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = PolyFp::one(num_.prime());
      return;
    }
    PolyFp g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    if (!den_.is_monic()) {
      const auto k = den_.inv(den_.lead());
      num_ = num_.scaled(k);
      den_ = den_.scaled(k);
    }
  }

  PolyFp num_;
  PolyFp den_;
};

/// A place of F_p(t): a monic irreducible polynomial or infinity.
class Place {
 public:
  static Place infinity(std::uint32_t p) {
    Place v;
    v.p_ = p;
    return v;
  }

  static Place finite(const PolyFp& poly) {
    if (!poly.is_monic() || !is_irreducible(poly)) {
      throw Error(ErrorKind::InvalidSpec, "place polynomial " + poly.to_string() + " is not monic irreducible");
    }
    return unchecked(poly);
  }

  /// For polynomials already known to be monic irreducible (e.g. factor output).
  static Place unchecked(const PolyFp& poly) {
    Place v;
    v.p_ = poly.prime();
    v.poly_ = poly;
    return v;
  }

  std::uint32_t prime() const { return p_; }
  bool is_infinite() const { return !poly_.has_value(); }
  const PolyFp& poly() const {
    if (!poly_) throw InternalError("poly() on the infinite place");
    return *poly_;
  }
  int degree() const { return poly_ ? poly_->degree() : 1; }

  std::string to_string() const { return poly_ ? poly_->to_string() : "inf"; }
  std::string pretty() const { return poly_ ? "(" + poly_->pretty() + ")" : "inf"; }

  static Place parse(std::uint32_t p, std::string_view text) {
    if (text == "inf") return infinity(p);
    return finite(PolyFp::parse(p, text));
  }

  friend bool operator==(const Place&, const Place&) = default;
  /// Infinity first, then finite places in polynomial order.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    if (a.is_infinite() != b.is_infinite()) return a.is_infinite();
    if (a.is_infinite()) return false;
    return *a.poly_ < *b.poly_;
  }

 private:
  Place() = default;
  std::uint32_t p_ = 2;
  std::optional<PolyFp> poly_;
};

inline int ord_at(const PolyFp& f, const Place& v) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroArgument, "valuation of zero");
  if (v.is_infinite()) return -f.degree();
  PolyFp g = f;
  return strip_factor(g, v.poly());
}

/// Valuation; ord_inf(f/g) = deg g - deg f.
inline int ord_at(const RatFunc& f, const Place& v) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroArgument, "valuation of zero");
  return ord_at(f.num(), v) - ord_at(f.den(), v);
}

/// e with |f|_v = p^e.
inline std::int64_t abs_exponent(const RatFunc& f, const Place& v) {
  return -static_cast<std::int64_t>(v.degree()) * ord_at(f, v);
}

/// |f|_v as an exact power of p.
inline Factored abs_at(const RatFunc& f, const Place& v) {
  return Factored::prime_power(f.prime(), abs_exponent(f, v));
}

/// Places with nonzero valuation, each with its ord.
inline std::map<Place, int> support(const RatFunc& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroArgument, "support of zero");
  std::map<Place, int> out;
  for (const auto& [g, m] : factor(f.num()).factors) out[Place::unchecked(g)] += m;
  if (!f.den().is_one()) {
    for (const auto& [g, m] : factor(f.den()).factors) out[Place::unchecked(g)] -= m;
  }
  const int at_inf = f.den().degree() - f.num().degree();
  if (at_inf != 0) out[Place::infinity(f.prime())] = at_inf;
  return out;
}

/// Sum of deg(v) * ord_v(f) over all places; zero by the product formula.
inline std::int64_t degree_weighted_valuation_sum(const RatFunc& f) {
  std::int64_t s = 0;
  for (const auto& [v, ord] : support(f)) s += static_cast<std::int64_t>(v.degree()) * ord;
  return s;
}

/// Multiplicative order of the residue of r in F_p[t]/(v).
inline std::uint64_t residue_order(const RatFunc& r, const Place& v) {
  if (v.is_infinite()) throw Error(ErrorKind::InvalidSpec, "residue order needs a finite place");
  if (r.is_zero() || ord_at(r, v) != 0) {
    throw Error(ErrorKind::NotAUnit, r.to_string() + " is not a unit at " + v.to_string());
  }
  const std::uint64_t p = r.prime();
  const int deg = v.degree();
  if (static_cast<double>(deg) * std::log2(static_cast<double>(p)) > 48.0) {
    throw Error(ErrorKind::OutOfBudget, "residue field too large for order computation");
  }
  std::uint64_t group = 1;
  for (int i = 0; i < deg; ++i) group *= p;
  group -= 1;

  const PolyFp& m = v.poly();
  const PolyFp den_inv = powmod(r.den(), group - 1, m);
  const PolyFp a = mulmod(r.num() % m, den_inv, m);
  std::uint64_t order = group;
  for (auto [ell, e] : factor_integer(group)) {
    for (int i = 0; i < e && order % ell == 0; ++i) {
      if (!powmod(a, order / ell, m).is_one()) break;
      order /= ell;
    }
  }
  return order;
}

}  // namespace zdzeta
