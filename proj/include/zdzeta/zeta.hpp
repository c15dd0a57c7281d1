#pragma once

// Orbit sums, exact zeta coefficients and the boundary diagnostics built on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "zdzeta/action.hpp"
#include "zdzeta/arith.hpp"
#include "zdzeta/error.hpp"
#include "zdzeta/funcfield.hpp"
#include "zdzeta/lattice.hpp"
#include "zdzeta/parallel.hpp"

namespace zdzeta {

class NonIntegerCoefficient : public InternalError {
 public:
  using InternalError::InternalError;
};

/// a[n] = sum of F(Lambda) over [Lambda] = n; a[0] is unused and zero.
struct OrbitSums {
  std::vector<BigInt> a;
  std::int64_t size() const { return static_cast<std::int64_t>(a.size()) - 1; }
};

/// Taylor coefficients c_0..c_N of the zeta function.
struct ZetaData {
  std::vector<BigInt> c;
};

namespace detail {

// Base counts for every base subgroup of index <= n_max, keyed by HNF.
inline std::map<std::vector<std::int64_t>, Factored> base_count_table(const ActionSpec& spec, std::int64_t n_max, unsigned jobs) {
  std::vector<Subgroup> bases;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto subs = enumerate_subgroups(spec.base_dim(), n);
    bases.insert(bases.end(), subs.begin(), subs.end());
  }
  const auto counts = ordered_parallel_map(bases.size(), jobs, [&](std::size_t i) { return count_base(spec, bases[i]); });
  std::map<std::vector<std::int64_t>, Factored> table;
  for (std::size_t i = 0; i < bases.size(); ++i) table.emplace(bases[i].sort_key(), counts[i]);
  return table;
}

}  // namespace detail

/// Orbit sums by full enumeration of the index-n subgroups of Z^d.
inline OrbitSums orbit_sums(const ActionSpec& spec, std::int64_t n_max, unsigned jobs = 1) {
  if (n_max < 1) throw Error(ErrorKind::InvalidIndex, "N must be >= 1");
  detail::require_mixing(spec);
  OrbitSums out;
  out.a.assign(static_cast<std::size_t>(n_max + 1), BigInt(0));
  if (spec.suspended()) {
    const auto table = detail::base_count_table(spec, n_max, jobs);
    const auto sums = ordered_parallel_map(static_cast<std::size_t>(n_max), jobs, [&](std::size_t i) {
      BigInt total = 0;
      for (const auto& s : enumerate_subgroups(spec.d(), static_cast<std::int64_t>(i) + 1)) {
        total += table.at(s.leading_block().sort_key()).pow(s.diag(spec.d() - 1)).integer_value();
      }
      return total;
    });
    for (std::size_t i = 0; i < sums.size(); ++i) out.a[i + 1] = sums[i];
    return out;
  }
  const auto sums = ordered_parallel_map(static_cast<std::size_t>(n_max), jobs, [&](std::size_t i) {
    BigInt total = 0;
    for (const auto& s : enumerate_subgroups(spec.d(), static_cast<std::int64_t>(i) + 1)) total += count_fixed(spec, s).integer_value();
    return total;
  });
  for (std::size_t i = 0; i < sums.size(); ++i) out.a[i + 1] = sums[i];
  return out;
}

/// c_0 = 1, k c_k = sum_{j=1}^k a_j c_{k-j}.
inline ZetaData zeta_coefficients(const OrbitSums& os) {
  if (os.size() < 1) throw Error(ErrorKind::InvalidIndex, "orbit sums are empty");
  ZetaData z;
  z.c.assign(os.a.size(), BigInt(0));
  z.c[0] = 1;
  for (std::size_t k = 1; k < os.a.size(); ++k) {
    BigInt s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += os.a[j] * z.c[k - j];
    const BigInt kk(k);
    if (s % kk != 0) throw NonIntegerCoefficient("NonIntegerCoefficient: c_" + std::to_string(k) + " = " + s.str() + "/" + std::to_string(k));
    z.c[k] = s / kk;
  }
  return z;
}

/// Inverse of zeta_coefficients: a_n = n c_n - sum_{j<n} a_j c_{n-j}.
inline OrbitSums orbit_sums_from_zeta(const ZetaData& z) {
  if (z.c.empty() || z.c[0] != 1) throw Error(ErrorKind::InvalidSpec, "zeta series must start with c_0 = 1");
  OrbitSums os;
  os.a.assign(z.c.size(), BigInt(0));
  for (std::size_t n = 1; n < z.c.size(); ++n) {
    BigInt s = BigInt(n) * z.c[n];
    for (std::size_t j = 1; j < n; ++j) s -= os.a[j] * z.c[n - j];
    os.a[n] = s;
  }
  return os;
}

/// Orbit sums divided by e^{h n}, exact. The entropy has integer weights here.
inline std::vector<BigRational> normalized_orbit_sums(const ActionSpec& spec, const OrbitSums& os) {
  std::vector<BigRational> out(os.a.size(), BigRational(0));
  const auto h = entropy(spec);
  for (std::size_t n = 1; n < os.a.size(); ++n) {
    BigInt den = 1;
    for (const auto& [p, w] : h) {
      if (boost::multiprecision::denominator(w) != 1) throw InternalError("entropy weight is not an integer");
      den *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(boost::multiprecision::numerator(w)) * static_cast<unsigned>(n));
    }
    out[n] = BigRational(os.a[n], den);
  }
  return out;
}

struct RadiusRow {
  std::int64_t n = 0;
  double root = 0;             // a_n^{1/n}
  double normalized_root = 0;  // (a_n e^{-hn})^{1/n}
  double g_window = 0;         // max of log(a_m)/m over n/2 <= m <= n
};

struct RadiusReport {
  std::vector<RadiusRow> rows;
  double h = 0;
  double g_estimate = 0;  // g_window at the last row
  double radius_estimate() const { return std::exp(-g_estimate); }
};

inline RadiusReport radius_report(const OrbitSums& os, double h = 0.0) {
  if (os.size() < 10) throw Error(ErrorKind::InvalidIndex, "radius report needs N >= 10");
  RadiusReport r;
  r.h = h;
  std::vector<double> rate(os.a.size(), 0.0);
  for (std::size_t n = 1; n < os.a.size(); ++n) rate[n] = os.a[n] > 0 ? log_big(os.a[n]) / static_cast<double>(n) : -INFINITY;
  for (std::size_t n = 1; n < os.a.size(); ++n) {
    RadiusRow row;
    row.n = static_cast<std::int64_t>(n);
    row.root = std::exp(rate[n]);
    row.normalized_root = std::exp(rate[n] - h);
    row.g_window = -INFINITY;
    for (std::size_t m = std::max<std::size_t>(1, n / 2); m <= n; ++m) row.g_window = std::max(row.g_window, rate[m]);
    r.rows.push_back(row);
  }
  r.g_estimate = r.rows.back().g_window;
  return r;
}

struct Witness {
  Place w = Place::infinity(2);
  int d_w = 0;
  std::uint64_t ell = 0;  // order of t modulo w
  std::uint64_t p = 0;
  BigRational bound_exponent;  // bound = p^{bound_exponent} = p^{-d_w/ell}
  double bound() const { return std::pow(static_cast<double>(p), static_cast<double>(bound_exponent)); }
};

struct Rational1d {
  LogCombination h;
  Factored e_h;  // zeta = (1 - e^h z)^{-1}
};

struct Boundary1d {
  std::vector<Witness> witnesses;
};

using Classification1d = std::variant<Rational1d, Boundary1d>;

/// Rational versus natural-boundary evidence for a single automorphism.
inline Classification1d classify_1d(const ActionSpec& spec) {
  if (spec.d() != 1) throw Error(ErrorKind::UnsupportedDimension, "classification applies to d = 1");
  detail::require_mixing(spec);
  for (const auto* c : spec.curves()) {
    if (!detail::image_is_t(c->images[0])) {
      throw Error(ErrorKind::UnnormalizedImage, "image " + c->images[0].to_string() + " is not t");
    }
  }
  Boundary1d b;
  for (const auto* c : spec.curves()) {
    const PolyFp t = PolyFp::t(c->p);
    for (const auto& g : c->inverted) {
      if (g == t) continue;
      Witness wit;
      wit.w = Place::finite(g);
      wit.d_w = g.degree();
      wit.ell = residue_order(RatFunc(t), wit.w);
      wit.p = c->p;
      wit.bound_exponent = BigRational(-wit.d_w, static_cast<std::int64_t>(wit.ell));
      b.witnesses.push_back(std::move(wit));
    }
  }
  if (!b.witnesses.empty()) return b;
  Rational1d r;
  r.h = entropy(spec);
  for (const auto& [p, w] : r.h) r.e_h.add(p, static_cast<std::int64_t>(boost::multiprecision::numerator(w)));
  return r;
}

struct OverconvRow {
  std::int64_t k = 0;
  std::int64_t n = 0;           // ell * p^k
  LogCombination log_value;     // log of (F(n) e^{-hn})^{1/n}, exact
  double value = 0;
  bool within_bound = false;
};

/// Normalized F(n_k)^{1/n_k} along n_k = ell p^k for k = 0..depth.
inline std::vector<OverconvRow> overconvergence_check(const ActionSpec& spec, const Witness& wit, std::int64_t depth) {
  if (spec.d() != 1) throw Error(ErrorKind::UnsupportedDimension, "overconvergence applies to d = 1");
  if (depth < 2) throw Error(ErrorKind::InvalidIndex, "depth must be >= 2");
  const auto h = entropy(spec);
  const double bound = wit.bound();
  std::vector<OverconvRow> rows;
  std::int64_t pk = 1;
  for (std::int64_t k = 0; k <= depth; ++k) {
    OverconvRow row;
    row.k = k;
    row.n = static_cast<std::int64_t>(wit.ell) * pk;
    const Factored f = count_fixed(spec, Subgroup::diagonal({row.n}));
    for (const auto& [p, e] : f.exponents()) row.log_value[p] += BigRational(e, row.n);
    for (const auto& [p, w] : h) row.log_value[p] -= w;
    for (auto it = row.log_value.begin(); it != row.log_value.end();) it = it->second == 0 ? row.log_value.erase(it) : std::next(it);
    row.value = std::exp(log_value(row.log_value));
    row.within_bound = row.value <= bound * (1 + 1e-9);
    rows.push_back(std::move(row));
    if (k < depth) {
      if (pk > (std::int64_t{1} << 40) / static_cast<std::int64_t>(wit.p)) throw Error(ErrorKind::OutOfBudget, "n_k exceeds the supported range");
      pk *= static_cast<std::int64_t>(wit.p);
    }
  }
  return rows;
}

/// Overconvergence tables for every witness; empty for a rational spec.
inline std::vector<std::pair<Witness, std::vector<OverconvRow>>> overconvergence_tables(const ActionSpec& spec, std::int64_t depth) {
  std::vector<std::pair<Witness, std::vector<OverconvRow>>> out;
  const auto cls = classify_1d(spec);
  if (const auto* b = std::get_if<Boundary1d>(&cls)) {
    for (const auto& w : b->witnesses) out.emplace_back(w, overconvergence_check(spec, w, depth));
  }
  return out;
}

struct PoleEntry {
  LogCombination log_radius;  // -log F_base / [Lambda']
  double radius = 0;
  std::int64_t multiplicity = 0;
  Subgroup base;
};

/// One pole ring per base subgroup: zeta = prod (1 - F_base z^{[Lambda']})^{-1}.
inline std::vector<PoleEntry> pole_cluster_scan(const ActionSpec& spec, std::int64_t n_max) {
  if (!spec.suspended()) throw Error(ErrorKind::InvalidSpec, "pole scan needs a suspended spec");
  if (n_max < 1) throw Error(ErrorKind::InvalidIndex, "N must be >= 1");
  detail::require_mixing(spec);
  std::vector<PoleEntry> out;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (const auto& s : enumerate_subgroups(spec.base_dim(), n)) {
      PoleEntry e;
      const Factored f = count_base(spec, s);
      for (const auto& [p, x] : f.exponents()) e.log_radius[p] = BigRational(-x, n);
      e.radius = std::exp(log_value(e.log_radius));
      e.multiplicity = n;
      e.base = s;
      out.push_back(std::move(e));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const PoleEntry& x, const PoleEntry& y) { return x.radius < y.radius; });
  return out;
}

inline std::string orbit_sums_csv(const OrbitSums& os) {
  std::ostringstream out;
  out << "n,a_n\n";
  for (std::size_t n = 1; n < os.a.size(); ++n) out << n << ',' << os.a[n] << '\n';
  return out.str();
}

inline std::string zeta_csv(const ZetaData& z) {
  std::ostringstream out;
  out << "k,c_k\n";
  for (std::size_t k = 0; k < z.c.size(); ++k) out << k << ',' << z.c[k] << '\n';
  return out.str();
}

inline std::string radius_csv(const RadiusReport& r) {
  std::ostringstream out;
  out.precision(12);
  out << "n,root,normalized_root,g_window\n";
  for (const auto& row : r.rows) out << row.n << ',' << row.root << ',' << row.normalized_root << ',' << row.g_window << '\n';
  return out.str();
}

inline std::string pole_csv(const std::vector<PoleEntry>& poles) {
  std::ostringstream out;
  out.precision(12);
  out << "radius,log_radius,multiplicity,hnf\n";
  for (const auto& e : poles) out << e.radius << ',' << render_log(e.log_radius) << ',' << e.multiplicity << ",\"" << e.base.to_string() << "\"\n";
  return out.str();
}

inline std::string overconv_csv(const Witness& w, const std::vector<OverconvRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "witness,k,n,log_value,value,bound,within_bound\n";
  for (const auto& r : rows) {
    out << w.w.to_string() << ',' << r.k << ',' << r.n << ',' << render_log(r.log_value) << ',' << r.value << ',' << w.bound() << ','
        << (r.within_bound ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace zdzeta
