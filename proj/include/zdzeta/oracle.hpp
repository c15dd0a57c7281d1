#pragma once

// Brute-force periodic-point counts by linear algebra in the group algebra
// F_p[Z^d / Lambda]. Shares no counting logic with count_fixed.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zdzeta/action.hpp"
#include "zdzeta/error.hpp"
#include "zdzeta/lattice.hpp"
#include "zdzeta/linalg_fp.hpp"
#include "zdzeta/parallel.hpp"

namespace zdzeta {

struct OracleConfig {
  std::int64_t max_dim = 2500;  // cap on [Lambda], the matrix size
  std::int64_t power_factor = 1;  // s* is raised to power_factor * [Lambda]
};

/// F_p[Z^d / Lambda] on the box representatives 0 <= r_i < a_i.
class GroupAlgebra {
 public:
  using Element = std::vector<std::uint32_t>;

  GroupAlgebra(std::uint32_t p, const Subgroup& s) : p_(p), s_(s), n_(static_cast<std::size_t>(s.index())) {
    const int d = s.dim();
    stride_.assign(static_cast<std::size_t>(d), 1);
    for (int i = 1; i < d; ++i) stride_[static_cast<std::size_t>(i)] = stride_[static_cast<std::size_t>(i - 1)] * static_cast<std::size_t>(s.diag(i - 1));
    coords_.reserve(n_);
    for (std::size_t idx = 0; idx < n_; ++idx) {
      IntVec c(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>((idx / stride_[static_cast<std::size_t>(i)]) % static_cast<std::size_t>(s.diag(i)));
      }
      coords_.push_back(std::move(c));
    }
  }

  std::uint32_t prime() const { return p_; }
  std::size_t dim() const { return n_; }
  const IntVec& coords(std::size_t idx) const { return coords_[idx]; }

  std::size_t index_of(const IntVec& v) const {
    const IntVec r = s_.reduce(v);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < r.size(); ++i) idx += static_cast<std::size_t>(r[i]) * stride_[i];
    return idx;
  }

  /// Index of the coset of coords(idx) + shift.
  std::size_t translate(std::size_t idx, const IntVec& shift) const {
    IntVec v = coords_[idx];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += shift[i];
    return index_of(v);
  }

  Element zero() const { return Element(n_, 0); }
  Element one() const {
    Element e = zero();
    e[0] = 1 % p_;
    return e;
  }

  /// Image of a Laurent polynomial in the u's.
  Element embed(const MultiPoly& f) const {
    Element e = zero();
    for (const auto& [c, exps] : f.terms()) {
      auto& slot = e[translate(0, exps)];
      slot = static_cast<std::uint32_t>((slot + c) % p_);
    }
    return e;
  }

  Element multiply(const Element& x, const Element& y) const {
    Element out = zero();
    for (std::size_t i = 0; i < n_; ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!y[j]) continue;
        auto& slot = out[translate(i, coords_[j])];
        slot = static_cast<std::uint32_t>((slot + static_cast<std::uint64_t>(x[i]) * y[j]) % p_);
      }
    }
    return out;
  }

  Element power(Element base, std::uint64_t e) const {
    Element result = one();
    while (e > 0) {
      if (e & 1U) result = multiply(result, base);
      e >>= 1U;
      if (e) base = multiply(base, base);
    }
    return result;
  }

  /// Rows x * e_j for every basis element e_j.
  std::vector<FpRow> multiplication_rows(const Element& x) const {
    std::vector<FpRow> rows;
    rows.reserve(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      FpRow row(n_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        if (x[i]) row[translate(i, coords_[j])] = x[i];
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

 private:
  std::uint32_t p_;
  Subgroup s_;
  std::size_t n_;
  std::vector<std::size_t> stride_;
  std::vector<IntVec> coords_;
};

namespace detail {

// An inverted polynomial g written in the u-coordinates.
inline MultiPoly lift_inverted(const Curve& c, const PolyFp& g, int nvars) {
  for (std::size_t i = 0; i < c.images.size(); ++i) {
    if (c.images[i].den().is_one() && c.images[i].num().monic() == g) {
      IntVec e(static_cast<std::size_t>(nvars), 0);
      e[i] = 1;
      return MultiPoly(c.p, nvars, {{1, e}});
    }
  }
  for (std::size_t i = 0; i < c.images.size(); ++i) {
    if (!image_is_t(c.images[i])) continue;
    std::vector<MultiPoly::Term> terms;
    for (std::size_t k = 0; k < g.coeffs().size(); ++k) {
      if (!g.coeffs()[k]) continue;
      IntVec e(static_cast<std::size_t>(nvars), 0);
      e[i] = static_cast<std::int64_t>(k);
      terms.emplace_back(g.coeffs()[k], e);
    }
    return MultiPoly(c.p, nvars, std::move(terms));
  }
  throw Error(ErrorKind::UnliftableInversion, "inverted polynomial " + g.to_string() + " has no expression in the u-coordinates");
}

}  // namespace detail

/// log_p of |M / b_Lambda M| for one copy of the curve: the F_p-dimension of
/// the localization of F_p[Z^d/Lambda]/(f) at the inverted elements.
inline std::int64_t oracle_dimension(const Curve& c, int base_dim, const Subgroup& s, const OracleConfig& cfg = {}) {
  const int d = s.dim();
  const bool pure_localization = !c.defining_poly && base_dim == 1 && detail::image_is_t(c.images[0]);
  if (!c.defining_poly && !pure_localization) {
    throw Error(ErrorKind::NoDefiningPoly, "curve component has no defining polynomial");
  }
  if (s.index() > cfg.max_dim) {
    throw Error(ErrorKind::OutOfBudget, "index " + std::to_string(s.index()) + " exceeds the oracle cap " + std::to_string(cfg.max_dim));
  }
  const GroupAlgebra alg(c.p, s);
  const std::size_t n = alg.dim();

  std::vector<FpRow> f_rows;
  if (c.defining_poly) f_rows = alg.multiplication_rows(alg.embed(c.defining_poly->padded(d)));
  const std::size_t rank_f = f_rows.empty() ? 0 : rank_fp(c.p, f_rows, n);

  GroupAlgebra::Element sstar = alg.one();
  for (const auto& g : c.inverted) sstar = alg.multiply(sstar, alg.embed(detail::lift_inverted(c, g, d)));
  const auto exponent = static_cast<std::uint64_t>(cfg.power_factor * s.index());
  std::vector<FpRow> rows = alg.multiplication_rows(alg.power(sstar, exponent));
  rows.insert(rows.end(), f_rows.begin(), f_rows.end());
  return static_cast<std::int64_t>(rank_fp(c.p, std::move(rows), n) - rank_f);
}

/// F(Lambda) computed component by component in the group algebra.
inline Factored oracle_count(const ActionSpec& spec, const Subgroup& s, const OracleConfig& cfg = {}) {
  if (s.dim() != spec.d()) throw Error(ErrorKind::InvalidSpec, "subgroup dimension does not match the spec");
  Factored f;
  for (const auto& comp : spec.components()) {
    if (const auto* pr = std::get_if<Principal>(&comp)) {
      f.add(pr->p, pr->mult * s.index());
    } else {
      const auto& c = std::get<Curve>(comp);
      f.add(c.p, c.mult * oracle_dimension(c, spec.base_dim(), s, cfg));
    }
  }
  return f;
}

struct CrossRow {
  std::int64_t index = 0;
  Subgroup subgroup;
  Factored formula;
  Factored oracle;
  bool match = false;
};

struct CrossReport {
  std::vector<CrossRow> rows;
  std::size_t mismatches = 0;
  bool all_match() const { return mismatches == 0; }

  /// index,hnf,formula_count,oracle_count,match
  std::string csv() const {
    std::ostringstream os;
    os << "index,hnf,formula_count,oracle_count,match\n";
    for (const auto& r : rows) {
      os << r.index << ",\"" << r.subgroup.to_string() << "\"," << r.formula.to_string() << ',' << r.oracle.to_string() << ','
         << (r.match ? "true" : "false") << '\n';
    }
    return os.str();
  }
};

/// Formula count against oracle count for every subgroup with [Lambda] <= max_index.
inline CrossReport cross_validate(const ActionSpec& spec, std::int64_t max_index, unsigned jobs = 1, const OracleConfig& cfg = {}) {
  if (max_index < 1) throw Error(ErrorKind::InvalidIndex, "max index must be >= 1");
  std::vector<Subgroup> all;
  for (std::int64_t n = 1; n <= max_index; ++n) {
    auto subs = enumerate_subgroups(spec.d(), n);
    all.insert(all.end(), subs.begin(), subs.end());
  }
  CrossReport report;
  report.rows = ordered_parallel_map(all.size(), jobs, [&](std::size_t i) {
    CrossRow row;
    row.subgroup = all[i];
    row.index = all[i].index();
    row.formula = count_fixed(spec, all[i]);
    row.oracle = oracle_count(spec, all[i], cfg);
    row.match = row.formula == row.oracle;
    return row;
  });
  for (const auto& r : report.rows) report.mismatches += r.match ? 0 : 1;
  return report;
}

}  // namespace zdzeta
