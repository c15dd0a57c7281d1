#include "zdzeta/lattice.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

namespace zdzeta {
namespace {

Subgroup from_cols(int d, const std::vector<IntVec>& cols) { return hnf_canonicalize(d, cols); }

TEST(Sigma, SmallValues) {
  EXPECT_EQ(sigma(1), 1u);
  EXPECT_EQ(sigma(6), 12u);
  EXPECT_EQ(sigma(30), 72u);
  for (std::int64_t q : {2, 3, 5, 7, 97}) EXPECT_EQ(sigma(q), static_cast<std::uint64_t>(q + 1));
  EXPECT_THROW(sigma(0), Error);
}

TEST(Enumerate, IndexOneIsIdentity) {
  auto subs = enumerate_subgroups(2, 1);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0], Subgroup::identity(2));
}

TEST(Enumerate, IndexTwoInPlane) {
  auto subs = enumerate_subgroups(2, 2);
  ASSERT_EQ(subs.size(), 3u);
  EXPECT_EQ(subs[0].to_string(), "[1,0,0,2]");
  EXPECT_EQ(subs[1].to_string(), "[2,0,0,1]");
  EXPECT_EQ(subs[2].to_string(), "[2,1,0,1]");
}

TEST(Enumerate, FrozenCounts) {
  EXPECT_EQ(enumerate_subgroups(2, 6).size(), 12u);
  EXPECT_EQ(enumerate_subgroups(3, 2).size(), 7u);
  EXPECT_EQ(enumerate_subgroups(1, 9).size(), 1u);
}

TEST(Enumerate, Errors) {
  EXPECT_THROW(enumerate_subgroups(4, 2), Error);
  EXPECT_THROW(enumerate_subgroups(2, 0), Error);
  try {
    enumerate_subgroups(2, -3);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidIndex);
  }
}

TEST(Enumerate, SortedAndDistinct) {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t n = 1; n <= 24; ++n) {
      auto subs = enumerate_subgroups(d, n);
      std::set<std::string> seen;
      for (std::size_t i = 0; i < subs.size(); ++i) {
        EXPECT_EQ(subs[i].index(), n);
        EXPECT_TRUE(seen.insert(subs[i].to_string()).second);
        if (i > 0) { EXPECT_LT(subs[i - 1], subs[i]); }
      }
      EXPECT_EQ(subs.size(), count_subgroups(d, n));
    }
  }
}

TEST(Enumerate, PlaneCountIsSigma) {
  for (std::int64_t n = 1; n <= 200; ++n) EXPECT_EQ(enumerate_subgroups(2, n).size(), sigma(n)) << n;
}

TEST(Enumerate, SpaceCountDirichletRecursion) {
  for (std::int64_t n = 1; n <= 60; ++n) {
    std::uint64_t expected = 0;
    for (std::int64_t m = 1; m <= n; ++m) {
      if (n % m == 0) expected += static_cast<std::uint64_t>(m) * enumerate_subgroups(2, m).size();
    }
    EXPECT_EQ(enumerate_subgroups(3, n).size(), expected) << n;
  }
}

TEST(Enumerate, SpacePrimeIndex) {
  for (auto q : primes_up_to(50)) {
    EXPECT_EQ(enumerate_subgroups(3, static_cast<std::int64_t>(q)).size(), q * q + q + 1);
  }
}

TEST(Enumerate, RandomGeneratorTriplesLandInEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-4, 4);
  int hits = 0;
  while (hits < 300) {
    std::vector<IntVec> cols(3, IntVec(3));
    for (auto& c : cols)
      for (auto& x : c) x = entry(rng);
    Subgroup s;
    try {
      s = hnf_canonicalize(3, cols);
    } catch (const Error&) {
      continue;
    }
    if (s.index() > 60) continue;
    auto subs = enumerate_subgroups(3, s.index());
    EXPECT_TRUE(std::find(subs.begin(), subs.end(), s) != subs.end()) << s.to_string();
    for (const auto& c : cols) EXPECT_TRUE(s.contains(c));
    ++hits;
  }
}

TEST(Hnf, Examples) {
  EXPECT_EQ(from_cols(2, {{0, 1}, {1, 0}}), Subgroup::identity(2));
  EXPECT_EQ(from_cols(2, {{3, 0}, {1, 1}}).to_string(), "[3,1,0,1]");
  Subgroup s = from_cols(2, {{4, 2}, {2, 2}});
  EXPECT_EQ(s.index(), 4);
  // Membership in a box agrees with the integer span of the inputs.
  for (int x = -6; x <= 6; ++x) {
    for (int y = -6; y <= 6; ++y) {
      // (x, y) = a(4,2) + b(2,2) has a = (x - y)/2, b = (2y - x)/2.
      const bool in_span = ((x - y) % 2 == 0) && ((2 * y - x) % 2 == 0);
      EXPECT_EQ(s.contains({x, y}), in_span) << x << "," << y;
    }
  }
  EXPECT_EQ(from_cols(2, s.generators()), s);
  EXPECT_EQ(from_cols(2, {{6, 4}, {4, 2}}), s);
}

TEST(Hnf, RankDeficient) {
  try {
    from_cols(2, {{1, 2}, {2, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFiniteIndex);
  }
}

TEST(Hnf, IdempotentAndUnimodularInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int d = 2; d <= 3; ++d) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      for (const auto& s : enumerate_subgroups(d, n)) {
        EXPECT_EQ(hnf_canonicalize(d, s.generators()), s);
        auto g = s.generators();
        for (int step = 0; step < 6; ++step) {
          const auto i = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d));
          auto j = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d));
          if (i == j) j = (j + 1) % static_cast<std::size_t>(d);
          const int k = coef(rng);
          for (int r = 0; r < d; ++r) g[i][static_cast<std::size_t>(r)] += k * g[j][static_cast<std::size_t>(r)];
          std::swap(g[i], g[j]);
        }
        EXPECT_EQ(hnf_canonicalize(d, g), s);
      }
    }
  }
}

TEST(ShortVector, Examples) {
  EXPECT_EQ(short_vector(Subgroup::diagonal({1, 5})), (IntVec{1, 0}));
  EXPECT_EQ(short_vector(Subgroup::diagonal({3, 3})), (IntVec{0, 3}));
  EXPECT_EQ(short_vector(Subgroup(2, {3, 1, 0, 1})), (IntVec{1, 1}));
}

TEST(ShortVector, MinkowskiBoundsAndMinimality) {
  for (int d = 1; d <= 3; ++d) {
    const std::int64_t top = d == 3 ? 60 : 200;
    for (std::int64_t n = 1; n <= top; ++n) {
      for (const auto& s : enumerate_subgroups(d, n)) {
        const IntVec m = short_vector(s);
        ASSERT_TRUE(s.contains(m));
        const double len = std::sqrt(static_cast<double>(norm2(m)));
        const double idx = static_cast<double>(n);
        EXPECT_LE(len, std::sqrt(static_cast<double>(d)) * std::pow(idx, 1.0 / d) * (1 + 1e-12));
        if (d == 2) { EXPECT_LE(len, 2.0 / std::sqrt(std::numbers::pi) * std::sqrt(idx) * (1 + 1e-12)); }
        if (d == 2 && n <= 30) {
          // Exhaustive ball check.
          const auto r = static_cast<std::int64_t>(std::ceil(len));
          for (std::int64_t x = -r; x <= r; ++x)
            for (std::int64_t y = -r; y <= r; ++y)
              if ((x || y) && s.contains({x, y})) { EXPECT_GE(x * x + y * y, norm2(m)); }
        }
      }
    }
  }
}

TEST(Gronwall, Examples) {
  auto w = gronwall_witness(0, 1, 5);
  EXPECT_EQ(w.n, 30u);
  EXPECT_NEAR(w.ratio, 72.0 / (30.0 * std::log(std::log(30.0))), 1e-12);
  EXPECT_NEAR(w.ratio, 1.96, 0.01);
  w = gronwall_witness(1, 2, 3);
  EXPECT_EQ(w.n, 3u);
  EXPECT_NEAR(w.ratio, 14.2, 0.05);
  w = gronwall_witness(0, 1, 3);
  EXPECT_EQ(w.n, 6u);
  EXPECT_NEAR(w.ratio, 12.0 / (6.0 * std::log(std::log(6.0))), 1e-12);
}

TEST(Gronwall, RatioStaysBoundedBelow) {
  for (auto [t, q] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 1}, {1, 2}, {1, 4}, {2, 3}, {3, 7}}) {
    for (std::uint64_t k = 5; k <= 30; ++k) {
      EXPECT_GT(gronwall_witness(t, q, k).ratio, 0.5) << t << " mod " << q << " k=" << k;
    }
  }
}

TEST(Gronwall, Errors) {
  EXPECT_THROW(gronwall_witness(3, 2, 5), Error);
  EXPECT_THROW(gronwall_witness(0, 1, 2), Error);
}

}  // namespace
}  // namespace zdzeta
