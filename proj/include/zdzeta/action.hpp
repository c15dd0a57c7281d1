#pragma once

// Algebraic Z^d-actions given as lists of components, and their exact
// periodic-point counts F(Lambda).
//
// A Principal component (p, mult) is the full shift on (F_p)^{Z^d}^mult.
// A Curve component is parameterized by images u_i -> images[i] in F_p(t);
// its coordinate ring is F_p[t] with the `inverted` polynomials made units.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "zdzeta/arith.hpp"
#include "zdzeta/error.hpp"
#include "zdzeta/funcfield.hpp"
#include "zdzeta/lattice.hpp"
#include "zdzeta/polyfp.hpp"

namespace zdzeta {

/// Laurent polynomial over F_p in u_1..u_k, e.g. "1:0,0; 1:1,0; 1:0,1".
class MultiPoly {
 public:
  using Term = std::pair<std::uint32_t, IntVec>;  // coefficient, exponents

  MultiPoly() = default;
  MultiPoly(std::uint32_t p, int nvars, std::vector<Term> terms) : p_(p), nvars_(nvars) {
    std::map<IntVec, std::uint64_t> merged;
    for (auto& [c, e] : terms) {
      if (static_cast<int>(e.size()) != nvars) {
        throw Error(ErrorKind::InvalidSpec, "term has " + std::to_string(e.size()) + " exponents, expected " + std::to_string(nvars));
      }
      merged[e] = (merged[e] + c) % p;
    }
    for (auto& [e, c] : merged) {
      if (c) terms_.emplace_back(static_cast<std::uint32_t>(c), e);
    }
    if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "defining polynomial is zero");
  }

  std::uint32_t prime() const { return p_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Same polynomial viewed in more variables (extra exponents 0).
  MultiPoly padded(int nvars) const {
    std::vector<Term> t = terms_;
    for (auto& [c, e] : t) e.resize(static_cast<std::size_t>(nvars), 0);
    return MultiPoly(p_, nvars, std::move(t));
  }

  RatFunc evaluate(const std::vector<RatFunc>& images) const {
    RatFunc sum{PolyFp(p_)};
    for (const auto& [c, e] : terms_) {
      RatFunc term(PolyFp::constant(p_, c));
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) term = term * images[i].pow(e[i]);
      }
      sum = sum + term;
    }
    return sum;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (k) os << "; ";
      os << terms_[k].first << ':';
      for (std::size_t i = 0; i < terms_[k].second.size(); ++i) os << (i ? "," : "") << terms_[k].second[i];
    }
    return os.str();
  }

  static MultiPoly parse(std::uint32_t p, int nvars, std::string_view text) {
    std::vector<Term> terms;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    const auto bad = [&](const std::string& why) {
      return Error(ErrorKind::ParseError, "defining polynomial \"" + s + "\": " + why);
    };
    while (std::getline(ss, item, ';')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw bad("term without ':'");
      std::int64_t c = 0;
      IntVec e;
      try {
        std::size_t used = 0;
        const std::string cs = item.substr(0, colon);
        c = std::stoll(cs, &used);
        if (cs.find_first_not_of(" \t", used) != std::string::npos) throw bad("bad coefficient");
        std::stringstream es(item.substr(colon + 1));
        std::string x;
        while (std::getline(es, x, ',')) {
          const std::int64_t v = std::stoll(x, &used);
          if (x.find_first_not_of(" \t", used) != std::string::npos) throw bad("bad exponent");
          e.push_back(v);
        }
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        throw bad("non-integer entry");
      }
      const auto mod = static_cast<std::int64_t>(p);
      terms.emplace_back(static_cast<std::uint32_t>(((c % mod) + mod) % mod), std::move(e));
    }
    if (terms.empty()) throw bad("no terms");
    return MultiPoly(p, nvars, std::move(terms));
  }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::uint32_t p_ = 2;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

struct Principal {
  std::uint32_t p = 2;
  std::int64_t mult = 1;
};

struct Curve {
  std::uint32_t p = 2;
  std::vector<RatFunc> images;
  std::vector<PolyFp> inverted;  // monic irreducible, sorted, closed under image factors
  std::int64_t mult = 1;
  std::optional<MultiPoly> defining_poly;
};

using Component = std::variant<Principal, Curve>;

namespace detail {

inline void check_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
}

inline bool image_is_t(const RatFunc& r) { return r.den().is_one() && r.num() == PolyFp::t(r.prime()); }

inline void normalize_curve(Curve& c, int dim) {
  check_prime(c.p);
  if (c.mult < 1) throw Error(ErrorKind::InvalidSpec, "component multiplicity must be >= 1");
  if (static_cast<int>(c.images.size()) != dim) {
    throw Error(ErrorKind::InvalidSpec, "curve has " + std::to_string(c.images.size()) + " images, expected " + std::to_string(dim));
  }
  std::set<PolyFp> inv;
  for (const auto& g : c.inverted) {
    if (g.prime() != c.p) throw Error(ErrorKind::InvalidSpec, "inverted polynomial over the wrong field");
    if (!g.is_monic() || !is_irreducible(g)) {
      throw Error(ErrorKind::InvalidSpec, "inverted polynomial " + g.to_string() + " is not monic irreducible");
    }
    inv.insert(g);
  }
  for (const auto& img : c.images) {
    if (img.prime() != c.p) throw Error(ErrorKind::InvalidSpec, "image over the wrong field");
    if (img.is_zero()) throw Error(ErrorKind::InvalidSpec, "image must be nonzero");
    for (const auto* side : {&img.num(), &img.den()}) {
      if (side->degree() < 1) continue;
      for (const auto& f : factor(*side).factors) inv.insert(f.poly);
    }
  }
  c.inverted.assign(inv.begin(), inv.end());
  if (c.defining_poly) {
    if (c.defining_poly->prime() != c.p || c.defining_poly->nvars() != dim) {
      throw Error(ErrorKind::InvalidSpec, "defining polynomial has the wrong field or variable count");
    }
    if (!c.defining_poly->evaluate(c.images).is_zero()) {
      throw Error(ErrorKind::InvalidSpec, "defining polynomial does not vanish on the images");
    }
  }
}

}  // namespace detail

/// S(p): the infinite place together with every inverted place.
inline std::vector<Place> exceptional_places(const Curve& c) {
  std::vector<Place> s{Place::infinity(c.p)};
  for (const auto& g : c.inverted) s.push_back(Place::unchecked(g));
  std::sort(s.begin(), s.end());
  return s;
}

struct MixingResult {
  bool ok = true;
  std::optional<IntVec> witness;          // n with u^n = 1
  std::optional<std::size_t> component;   // offending component index
};

namespace detail {

// Per-curve valuation data over S.
struct CurveData {
  std::vector<Place> places;
  std::vector<IntVec> ord;  // ord[v][i] = ord_v(images[i])
  std::vector<IntVec> w;    // w[v][i] = exponent of |images[i]|_v
};

inline CurveData curve_data(const Curve& c) {
  CurveData data;
  data.places = exceptional_places(c);
  for (const auto& v : data.places) {
    IntVec o;
    IntVec w;
    for (const auto& img : c.images) {
      o.push_back(ord_at(img, v));
      w.push_back(abs_exponent(img, v));
    }
    data.ord.push_back(std::move(o));
    data.w.push_back(std::move(w));
  }
  return data;
}

inline int rational_rank(const std::vector<IntVec>& rows, int cols) {
  std::vector<std::vector<BigRational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < m.size() && m[piv][static_cast<std::size_t>(c)] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][static_cast<std::size_t>(c)] == 0) continue;
      const BigRational f = m[r][static_cast<std::size_t>(c)] / m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
      for (int k = 0; k < cols; ++k) m[r][static_cast<std::size_t>(k)] -= f * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
    }
    ++rank;
  }
  return rank;
}

// Rational kernel vector of rows (assumed rank-deficient), scaled to integers.
inline IntVec integer_kernel_vector(const std::vector<IntVec>& rows, int cols) {
  std::vector<std::vector<BigRational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < m.size() && m[piv][static_cast<std::size_t>(c)] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    const BigRational lead = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
    for (auto& x : m[static_cast<std::size_t>(rank)]) x /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][static_cast<std::size_t>(c)] == 0) continue;
      const BigRational f = m[r][static_cast<std::size_t>(c)];
      for (int k = 0; k < cols; ++k) m[r][static_cast<std::size_t>(k)] -= f * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  int free = 0;
  while (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) ++free;
  std::vector<BigRational> x(static_cast<std::size_t>(cols), 0);
  x[static_cast<std::size_t>(free)] = 1;
  for (int r = 0; r < rank; ++r) x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = -m[static_cast<std::size_t>(r)][static_cast<std::size_t>(free)];
  BigInt l = 1;
  for (const auto& v : x) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v));
  IntVec out;
  for (const auto& v : x) out.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v))));
  return out;
}

// Leading-coefficient product prod c_i^{n_i} in F_p.
inline std::uint64_t unit_part(const Curve& c, const IntVec& n) {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < n.size(); ++i) {
    std::uint64_t lead = c.images[i].num().lead();
    std::int64_t e = n[i];
    if (e < 0) {
      lead = powmod_u64(lead, c.p - 2, c.p);
      e = -e;
    }
    acc = mulmod_u64(acc, powmod_u64(lead, static_cast<std::uint64_t>(e), c.p), c.p);
  }
  return acc;
}

inline bool is_violation(const Curve& c, const CurveData& data, const IntVec& n) {
  for (const auto& row : data.ord) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n.size(); ++i) s += row[i] * n[i];
    if (s != 0) return false;
  }
  return unit_part(c, n) == 1;
}

inline std::optional<IntVec> mixing_witness(const Curve& c, const CurveData& data) {
  const int d = static_cast<int>(c.images.size());
  if (rational_rank(data.ord, d) == d) return std::nullopt;
  const std::int64_t box = d == 1 ? static_cast<std::int64_t>(c.p) : (d == 2 ? 200 : 40);
  std::optional<IntVec> best;
  std::int64_t best_norm = 0;
  IntVec n(static_cast<std::size_t>(d), -box);
  while (true) {
    const IntVec cand = sign_normalized(n);
    if (cand == n && norm2(n) > 0 && (!best || norm2(n) <= best_norm) && is_violation(c, data, n)) {
      if (!best || norm2(n) < best_norm || n < *best) {
        best = n;
        best_norm = norm2(n);
      }
    }
    std::size_t k = n.size();
    while (k-- > 0) {
      if (++n[k] <= box) break;
      n[k] = -box;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  if (best) return best;
  IntVec v = integer_kernel_vector(data.ord, d);
  for (auto& x : v) x *= static_cast<std::int64_t>(c.p - 1);
  return sign_normalized(v);
}

}  // namespace detail

class ActionSpec {
 public:
  ActionSpec() = default;

  /// d is the stored dimension; a suspended spec carries base dimension d - 1.
  ActionSpec(int d, std::vector<Component> components, bool suspended = false)
      : d_(d), suspended_(suspended), components_(std::move(components)) {
    detail::check_dimension(d);
    if (suspended && d < 2) throw Error(ErrorKind::UnsupportedDimension, "a suspended spec needs d >= 2");
    for (auto& comp : components_) {
      if (auto* pr = std::get_if<Principal>(&comp)) {
        detail::check_prime(pr->p);
        if (pr->mult < 1) throw Error(ErrorKind::InvalidSpec, "component multiplicity must be >= 1");
      } else {
        auto& c = std::get<Curve>(comp);
        detail::normalize_curve(c, base_dim());
        data_.push_back(detail::curve_data(c));
      }
    }
    std::size_t k = 0;
    for (std::size_t idx = 0; idx < components_.size(); ++idx) {
      if (const auto* c = std::get_if<Curve>(&components_[idx])) {
        if (auto w = detail::mixing_witness(*c, data_[k])) {
          mixing_ = {false, std::move(w), idx};
          break;
        }
        ++k;
      }
    }
  }

  int d() const { return d_; }
  int base_dim() const { return suspended_ ? d_ - 1 : d_; }
  bool suspended() const { return suspended_; }
  const std::vector<Component>& components() const { return components_; }
  const MixingResult& mixing() const { return mixing_; }

  std::vector<const Curve*> curves() const {
    std::vector<const Curve*> out;
    for (const auto& comp : components_)
      if (const auto* c = std::get_if<Curve>(&comp)) out.push_back(c);
    return out;
  }
  std::vector<const Principal*> principals() const {
    std::vector<const Principal*> out;
    for (const auto& comp : components_)
      if (const auto* c = std::get_if<Principal>(&comp)) out.push_back(c);
    return out;
  }
  /// Valuation data of the k-th curve (in component order).
  const detail::CurveData& curve_data(std::size_t k) const { return data_.at(k); }

  /// P(alpha): the characteristics of all components.
  std::set<std::uint64_t> primes() const {
    std::set<std::uint64_t> out;
    for (const auto& comp : components_) std::visit([&](const auto& c) { out.insert(c.p); }, comp);
    return out;
  }

 private:
  int d_ = 2;
  bool suspended_ = false;
  std::vector<Component> components_;
  std::vector<detail::CurveData> data_;
  MixingResult mixing_;
};

inline MixingResult validate_mixing(const ActionSpec& spec) { return spec.mixing(); }

namespace detail {

inline void require_mixing(const ActionSpec& spec) {
  const auto& m = spec.mixing();
  if (m.ok) return;
  std::ostringstream os;
  os << "component " << *m.component << " has u^n = 1 for n = (";
  for (std::size_t i = 0; i < m.witness->size(); ++i) os << (i ? "," : "") << (*m.witness)[i];
  os << ')';
  throw Error(ErrorKind::NotMixing, os.str());
}

// deg of gcd over generator columns of (num - den of u^g), with S-factors removed.
inline std::int64_t curve_count_degree(const Curve& c, const Subgroup& s) {
  const std::uint32_t p = c.p;
  PolyFp acc(p);
  for (int j = 0; j < s.dim(); ++j) {
    const IntVec g = s.column(j);
    PolyFp num = PolyFp::one(p);
    PolyFp den = PolyFp::one(p);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::int64_t e = g[i];
      if (e == 0) continue;
      const auto k = static_cast<std::uint64_t>(e < 0 ? -e : e);
      const PolyFp& top = e > 0 ? c.images[i].num() : c.images[i].den();
      const PolyFp& bottom = e > 0 ? c.images[i].den() : c.images[i].num();
      if (top.degree() > 0 || !top.is_one()) num *= pow(top, k);
      if (bottom.degree() > 0 || !bottom.is_one()) den *= pow(bottom, k);
    }
    PolyFp diff = num - den;
    if (diff.is_zero()) {
      throw Error(ErrorKind::InfiniteFixedSet, "u^g = 1 for generator column " + std::to_string(j) + " of " + s.to_string());
    }
    acc = acc.is_zero() ? diff.monic() : gcd(acc, diff);
    if (acc.degree() == 0) return 0;
  }
  for (const auto& v : c.inverted) {
    if (acc.degree() < v.degree()) continue;
    strip_factor(acc, v);
  }
  return acc.degree();
}

inline Factored count_unsuspended(const ActionSpec& spec, const Subgroup& s) {
  require_mixing(spec);
  Factored f;
  for (const auto& comp : spec.components()) {
    if (const auto* pr = std::get_if<Principal>(&comp)) {
      f.add(pr->p, pr->mult * s.index());
    } else {
      const auto& c = std::get<Curve>(comp);
      f.add(c.p, c.mult * curve_count_degree(c, s));
    }
  }
  return f;
}

}  // namespace detail

/// The base subgroup whose count drives a suspended count.
inline Subgroup base_subgroup(const ActionSpec& spec, const Subgroup& s) {
  return spec.suspended() ? s.leading_block() : s;
}

/// Count on the base action, for a subgroup of Z^{base_dim}.
inline Factored count_base(const ActionSpec& spec, const Subgroup& base) {
  if (base.dim() != spec.base_dim()) {
    throw Error(ErrorKind::InvalidSpec, "subgroup of Z^" + std::to_string(base.dim()) + " for a base of dimension " + std::to_string(spec.base_dim()));
  }
  return detail::count_unsuspended(spec, base);
}

/// F(Lambda) = |fixed points of Lambda|, as a factored integer.
inline Factored count_fixed(const ActionSpec& spec, const Subgroup& s) {
  if (s.dim() != spec.d()) {
    throw Error(ErrorKind::InvalidSpec, "subgroup of Z^" + std::to_string(s.dim()) + " for a spec of dimension " + std::to_string(spec.d()));
  }
  if (!spec.suspended()) return detail::count_unsuspended(spec, s);
  return count_base(spec, s.leading_block()).pow(s.diag(spec.d() - 1));
}

/// sum_p weight_p * log p.
using LogCombination = std::map<std::uint64_t, BigRational>;

inline double log_value(const LogCombination& c) {
  double s = 0.0;
  for (const auto& [p, w] : c) s += static_cast<double>(w) * std::log(static_cast<double>(p));
  return s;
}

/// "0", "log 2", "2/3*log 2", "log 2 + 3*log 5".
inline std::string render_log(const LogCombination& c) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, w] : c) {
    if (w == 0) continue;
    if (!first) os << (w < 0 ? " - " : " + ");
    if (first && w < 0) os << '-';
    first = false;
    const BigRational a = w < 0 ? BigRational(-w) : w;
    if (a != 1) os << a << '*';
    os << "log " << p;
  }
  return first ? "0" : os.str();
}

/// Topological entropy as an exact combination of logs.
inline LogCombination entropy(const ActionSpec& spec) {
  LogCombination h;
  for (const auto* pr : spec.principals()) h[pr->p] += pr->mult;
  if (spec.d() == 1) {
    const auto curves = spec.curves();
    for (std::size_t k = 0; k < curves.size(); ++k) {
      const auto& data = spec.curve_data(k);
      std::int64_t weight = 0;
      for (const auto& w : data.w) weight += std::max<std::int64_t>(0, w[0]);
      if (weight) h[curves[k]->p] += curves[k]->mult * weight;
    }
  }
  for (auto it = h.begin(); it != h.end();) it = it->second == 0 ? h.erase(it) : std::next(it);
  return h;
}

/// Constants of the growth bounds, computed from the base components.
struct GrowthConstants {
  double kappa1 = 0.0;         // max over +-e_i of the curve height phi
  double tail_constant = 0.0;  // kappa1 * sqrt(d) * minkowski_constant(d)
  double log_lambda = 0.0;     // max over curves, v in S, i of |log |u_i|_v|
  double e_total = 0.0;        // sum of mult * |S|
};

/// Curve height phi(n) = sum_c mult * sum_{v in S} max(0, log |u^n|_v).
inline double curve_height(const ActionSpec& spec, const IntVec& n) {
  double total = 0.0;
  const auto curves = spec.curves();
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& data = spec.curve_data(k);
    std::int64_t e = 0;
    for (const auto& w : data.w) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n.size(); ++i) s += n[i] * w[i];
      e += std::max<std::int64_t>(0, s);
    }
    total += static_cast<double>(curves[k]->mult * e) * std::log(static_cast<double>(curves[k]->p));
  }
  return total;
}

inline GrowthConstants growth_constants(const ActionSpec& spec) {
  GrowthConstants g;
  const int d = spec.base_dim();
  for (int i = 0; i < d; ++i) {
    for (int sign : {1, -1}) {
      IntVec e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(i)] = sign;
      g.kappa1 = std::max(g.kappa1, curve_height(spec, e));
    }
  }
  g.tail_constant = g.kappa1 * std::sqrt(static_cast<double>(d)) * minkowski_constant(d);
  const auto curves = spec.curves();
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& data = spec.curve_data(k);
    for (const auto& w : data.w)
      for (auto x : w) {
        g.log_lambda = std::max(g.log_lambda, static_cast<double>(x < 0 ? -x : x) * std::log(static_cast<double>(curves[k]->p)));
      }
    g.e_total += static_cast<double>(curves[k]->mult) * static_cast<double>(data.places.size());
  }
  return g;
}

/// Upper bound for log F(Lambda) from one short vector m of Lambda:
/// h [Lambda] + ||m||_1 * E * log(lambda).
inline double short_vector_log_bound(const ActionSpec& spec, const Subgroup& s) {
  const auto g = growth_constants(spec);
  return log_value(entropy(spec)) * static_cast<double>(s.index()) +
         static_cast<double>(norm1(short_vector(s))) * g.e_total * g.log_lambda;
}

/// Upper bound for log F(Lambda) - h [Lambda] valid for every Lambda:
/// tail_constant * [Lambda]^{1/d}.
inline double minkowski_log_bound(const ActionSpec& spec, std::int64_t index) {
  const int d = spec.base_dim();
  return growth_constants(spec).tail_constant * std::pow(static_cast<double>(index), 1.0 / d);
}

struct GrowthScan {
  std::int64_t cutoff = 0;
  LogCombination g_n;      // max of log F / [Lambda] over [Lambda] <= cutoff
  Subgroup argmax;         // base subgroup for suspended specs
  double tail_bound = 0;   // sup of log F / [Lambda] over [Lambda] > cutoff is at most this
  bool certified = false;  // tail_bound <= g_n, so g_n is the sup over all subgroups
  LogCombination g_alpha;  // growth rate of periodic points, when determined
  bool g_alpha_exact = false;
  double g_alpha_upper = 0;  // always a valid upper bound for g(alpha)
};

/// Exact scan of log F / [Lambda] for [Lambda] <= N plus a tail bound.
/// A suspended count has the same ratio as its base, so base subgroups are scanned.
inline GrowthScan growth_scan(const ActionSpec& spec, std::int64_t n_max) {
  if (spec.d() < 2) throw Error(ErrorKind::UnsupportedDimension, "growth scan needs d >= 2");
  if (n_max < 1) throw Error(ErrorKind::InvalidIndex, "cutoff must be >= 1");
  detail::require_mixing(spec);
  const int d = spec.base_dim();
  const auto primes = spec.primes();

  GrowthScan out;
  out.cutoff = n_max;
  double best = -1.0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (const auto& s : enumerate_subgroups(d, n)) {
      const Factored f = count_base(spec, s);
      LogCombination ratio;
      for (const auto& [p, e] : f.exponents()) ratio[p] = BigRational(e, n);
      bool better = false;
      if (best < 0) {
        better = true;
      } else if (primes.size() == 1) {
        const std::uint64_t p = *primes.begin();
        const BigRational a = ratio.count(p) ? ratio[p] : BigRational(0);
        const BigRational b = out.g_n.count(p) ? out.g_n.at(p) : BigRational(0);
        better = a > b;
      } else {
        better = log_value(ratio) > best * (1 + 1e-12);
      }
      if (better) {
        out.g_n = ratio;
        out.argmax = s;
        best = log_value(ratio);
      }
    }
  }
  const LogCombination h = entropy(spec);
  const double h_value = log_value(h);
  out.tail_bound = h_value + growth_constants(spec).tail_constant * std::pow(static_cast<double>(n_max), 1.0 / d - 1.0);
  out.certified = out.tail_bound <= best * (1 + 1e-9);
  if (spec.suspended()) {
    // Ratios repeat along a_d -> infinity, so g equals the supremum.
    out.g_alpha_exact = out.certified;
    out.g_alpha = out.g_n;
    out.g_alpha_upper = std::max(best, out.tail_bound);
  } else {
    // Curve parts are subexponential, so g equals the entropy.
    out.g_alpha_exact = true;
    out.g_alpha = h;
    out.g_alpha_upper = h_value;
  }
  return out;
}

/// F(Lambda) / e^{h [Lambda]} as an exact factored rational.
inline Factored entropy_normalized_count(const ActionSpec& spec, const Subgroup& s) {
  if (spec.d() != 2) throw Error(ErrorKind::UnsupportedDimension, "entropy-normalized counts are defined for d = 2");
  Factored f = count_fixed(spec, s);
  for (const auto& [p, w] : entropy(spec)) {
    f.add(p, -static_cast<std::int64_t>(boost::multiprecision::numerator(w)) * s.index());
  }
  return f;
}

/// Adds a free coordinate: F(Lambda) = F_base(Lambda')^{a_{d+1}}.
inline ActionSpec suspend(const ActionSpec& spec) {
  if (spec.suspended()) throw Error(ErrorKind::InvalidSpec, "spec is already suspended");
  if (spec.d() + 1 > kMaxDimension) throw Error(ErrorKind::UnsupportedDimension, "suspension would exceed dimension 3");
  detail::require_mixing(spec);
  return ActionSpec(spec.d() + 1, spec.components(), true);
}

/// Ready-made specs used throughout the tests and the CLI.
namespace builtin {

inline Curve ledrappier_curve() {
  Curve c;
  c.p = 2;
  c.images = {RatFunc(PolyFp::t(2)), RatFunc(PolyFp(2, {1, 1}))};
  c.defining_poly = MultiPoly::parse(2, 2, "1:0,0; 1:1,0; 1:0,1");
  return c;
}

inline ActionSpec ledrappier() { return ActionSpec(2, {ledrappier_curve()}); }
inline ActionSpec ledrappier3() { return suspend(ledrappier()); }

/// Invertible extension of the full p-shift: F(n) = p^{n - nu(n)}.
inline ActionSpec pshift(std::uint32_t p = 2) {
  Curve c;
  c.p = p;
  c.images = {RatFunc(PolyFp::t(p))};
  c.inverted = {PolyFp::t(p), PolyFp(p, {-1, 1})};
  return ActionSpec(1, {c});
}

/// Full p-shift presented as a curve: image t with only t inverted.
inline ActionSpec full_shift(std::uint32_t p = 2) {
  Curve c;
  c.p = p;
  c.images = {RatFunc(PolyFp::t(p))};
  c.inverted = {PolyFp::t(p)};
  return ActionSpec(1, {c});
}

inline ActionSpec point(int d = 2) { return ActionSpec(d, {}); }
inline ActionSpec principal(std::uint32_t p = 2, int d = 2, std::int64_t mult = 1) { return ActionSpec(d, {Principal{p, mult}}); }
inline ActionSpec mixed() { return ActionSpec(2, {Principal{2, 1}, ledrappier_curve()}); }

}  // namespace builtin

}  // namespace zdzeta
