#include "zdzeta/action.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace zdzeta {
namespace {

using builtin::ledrappier;

std::vector<std::string> place_names(const std::vector<Place>& s) {
  std::vector<std::string> out;
  for (const auto& v : s) out.push_back(v.to_string());
  return out;
}

Curve curve(std::uint32_t p, std::vector<std::string> images, std::vector<std::string> inverted = {}) {
  Curve c;
  c.p = p;
  for (const auto& s : images) c.images.push_back(RatFunc::parse(p, s));
  for (const auto& s : inverted) c.inverted.push_back(PolyFp::parse(p, s));
  return c;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidSpec;
}

TEST(ExceptionalPlaces, Examples) {
  const auto led = ledrappier();
  EXPECT_EQ(place_names(exceptional_places(*led.curves()[0])), (std::vector<std::string>{"inf", "0,1", "1,1"}));
  const auto ps = builtin::pshift();
  EXPECT_EQ(place_names(exceptional_places(*ps.curves()[0])), (std::vector<std::string>{"inf", "0,1", "1,1"}));
  const ActionSpec s3(1, {curve(3, {"0,1"}, {"0,1"})});
  EXPECT_EQ(place_names(exceptional_places(*s3.curves()[0])), (std::vector<std::string>{"inf", "0,1"}));
}

TEST(ActionSpec, AutoExtendsInverted) {
  const ActionSpec s(2, {curve(3, {"1,1/0,1", "0,0,1"})});
  std::vector<std::string> inv;
  for (const auto& g : s.curves()[0]->inverted) inv.push_back(g.to_string());
  EXPECT_EQ(inv, (std::vector<std::string>{"0,1", "1,1"}));
}

TEST(ActionSpec, Validation) {
  EXPECT_EQ(kind_of([] { ActionSpec(2, {Principal{4, 1}}); }), ErrorKind::NotPrime);
  EXPECT_EQ(kind_of([] { ActionSpec(2, {Principal{2, 0}}); }), ErrorKind::InvalidSpec);
  EXPECT_EQ(kind_of([] { ActionSpec(2, {curve(2, {"0,1"})}); }), ErrorKind::InvalidSpec);
  EXPECT_EQ(kind_of([] { ActionSpec(4, {}); }), ErrorKind::UnsupportedDimension);
  EXPECT_EQ(kind_of([] { ActionSpec(1, {curve(2, {"0,1"}, {"1,0,1"})}); }), ErrorKind::InvalidSpec);
  Curve bad = builtin::ledrappier_curve();
  bad.defining_poly = MultiPoly::parse(2, 2, "1:1,0; 1:0,1");
  EXPECT_EQ(kind_of([&] { ActionSpec(2, {bad}); }), ErrorKind::InvalidSpec);
  EXPECT_EQ(kind_of([] { MultiPoly::parse(2, 2, "1:0,x"); }), ErrorKind::ParseError);
}

TEST(MultiPoly, ParseRoundTrip) {
  const auto f = MultiPoly::parse(2, 2, "1:0,0; 1:1,0; 1:0,1");
  EXPECT_EQ(f.to_string(), "1:0,0; 1:0,1; 1:1,0");
  EXPECT_EQ(MultiPoly::parse(2, 2, f.to_string()), f);
  EXPECT_EQ(f.padded(3).to_string(), "1:0,0,0; 1:0,1,0; 1:1,0,0");
  EXPECT_EQ(kind_of([] { MultiPoly::parse(2, 1, "1:0; 1:0"); }), ErrorKind::ZeroPolynomial);
}

TEST(Mixing, Examples) {
  EXPECT_TRUE(validate_mixing(ledrappier()).ok);
  const auto same = validate_mixing(ActionSpec(2, {curve(2, {"0,1", "0,1"})}));
  ASSERT_FALSE(same.ok);
  EXPECT_EQ(*same.witness, (IntVec{1, -1}));
  const auto powers = validate_mixing(ActionSpec(2, {curve(2, {"0,0,1", "0,0,0,1"})}));
  ASSERT_FALSE(powers.ok);
  EXPECT_EQ(*powers.witness, (IntVec{3, -2}));
  EXPECT_TRUE(validate_mixing(builtin::principal()).ok);
}

TEST(Mixing, ConstantCoefficients) {
  // u1 = 2t, u2 = t over F_5: u1/u2 = 2 has order 4, so n = (4,-4).
  const auto r = validate_mixing(ActionSpec(2, {curve(5, {"0,2", "0,1"})}));
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(*r.witness, (IntVec{4, -4}));
  // A constant image 3 over F_7 has order 6.
  const auto c = validate_mixing(ActionSpec(1, {curve(7, {"3"})}));
  ASSERT_FALSE(c.ok);
  EXPECT_EQ(*c.witness, (IntVec{6}));
}

TEST(Mixing, NonMixingCountThrows) {
  const ActionSpec s(2, {curve(2, {"0,1", "0,1"})});
  EXPECT_EQ(kind_of([&] { count_fixed(s, Subgroup::diagonal({2, 2})); }), ErrorKind::NotMixing);
  EXPECT_EQ(kind_of([&] { growth_scan(s, 4); }), ErrorKind::NotMixing);
  EXPECT_EQ(kind_of([&] { suspend(s); }), ErrorKind::NotMixing);
}

TEST(CountFixed, LedrappierFrozen) {
  const auto led = ledrappier();
  EXPECT_EQ(count_fixed(led, Subgroup::diagonal({3, 3})).to_string(), "2^2");
  EXPECT_EQ(count_fixed(led, Subgroup(2, {3, 1, 0, 1})).to_string(), "2^2");
  EXPECT_EQ(count_fixed(led, Subgroup::diagonal({2, 2})).to_string(), "1");
  for (int n = 1; n <= 4; ++n) {
    const std::int64_t side = (std::int64_t{1} << n) - 1;
    EXPECT_EQ(count_fixed(led, Subgroup::diagonal({side, side})), Factored::prime_power(2, (std::int64_t{1} << n) - 2)) << n;
  }
  std::vector<std::string> index3;
  for (const auto& s : enumerate_subgroups(2, 3)) index3.push_back(count_fixed(led, s).to_string());
  EXPECT_EQ(index3, (std::vector<std::string>{"1", "1", "2^2", "1"}));
}

TEST(CountFixed, TwoPowerIndexIsTrivial) {
  const auto led = ledrappier();
  for (std::int64_t n = 1; n <= 64; n *= 2) {
    for (const auto& s : enumerate_subgroups(2, n)) EXPECT_TRUE(count_fixed(led, s).is_one()) << s.to_string();
  }
}

TEST(CountFixed, PrincipalAndShift) {
  EXPECT_EQ(count_fixed(builtin::principal(3), Subgroup::diagonal({1, 5})), Factored::prime_power(3, 5));
  const auto ps = builtin::pshift();
  EXPECT_EQ(count_fixed(ps, Subgroup::diagonal({6})).to_string(), "2^4");
  for (std::int64_t n = 1; n <= 64; ++n) {
    EXPECT_EQ(count_fixed(ps, Subgroup::diagonal({n})), Factored::prime_power(2, n - static_cast<std::int64_t>(p_part(n, 2))));
  }
  const auto ps3 = builtin::pshift(3);
  EXPECT_EQ(count_fixed(ps3, Subgroup::diagonal({9})), Factored::prime_power(3, 0));
  EXPECT_EQ(count_fixed(ps3, Subgroup::diagonal({6})), Factored::prime_power(3, 3));
  EXPECT_TRUE(count_fixed(builtin::point(), Subgroup::diagonal({4, 5})).is_one());
}

TEST(CountFixed, DimensionMismatch) {
  EXPECT_EQ(kind_of([] { count_fixed(ledrappier(), Subgroup::diagonal({3})); }), ErrorKind::InvalidSpec);
}

TEST(CountFixed, AlwaysAtLeastOne) {
  for (const auto& spec : {ledrappier(), builtin::mixed(), builtin::point()}) {
    for (std::int64_t n = 1; n <= 30; ++n)
      for (const auto& s : enumerate_subgroups(2, n)) EXPECT_TRUE(count_fixed(spec, s).is_integer());
  }
}

TEST(Suspension, Examples) {
  const auto l3 = builtin::ledrappier3();
  EXPECT_TRUE(l3.suspended());
  EXPECT_EQ(l3.d(), 3);
  EXPECT_EQ(count_fixed(l3, Subgroup(3, {3, 1, 0, 0, 1, 0, 0, 0, 2})).to_string(), "2^4");
  for (const auto& base : enumerate_subgroups(2, 9)) {
    auto m = base.row_major();
    const Subgroup lifted(3, {m[0], m[1], 0, m[2], m[3], 0, 0, 0, 1});
    EXPECT_EQ(count_fixed(l3, lifted), count_fixed(ledrappier(), base));
  }
  const auto p3 = suspend(builtin::principal(2));
  for (std::int64_t n = 1; n <= 8; ++n) {
    EXPECT_EQ(count_fixed(p3, Subgroup::diagonal({1, 1, n})), Factored::prime_power(2, n));
    EXPECT_EQ(count_fixed(builtin::principal(2, 3), Subgroup::diagonal({1, 1, n})), Factored::prime_power(2, n));
  }
  EXPECT_EQ(kind_of([&] { suspend(l3); }), ErrorKind::InvalidSpec);
  EXPECT_EQ(kind_of([] { suspend(builtin::principal(2, 3)); }), ErrorKind::UnsupportedDimension);
}

TEST(Entropy, Examples) {
  EXPECT_EQ(render_log(entropy(ledrappier())), "0");
  EXPECT_EQ(render_log(entropy(builtin::mixed())), "log 2");
  EXPECT_EQ(render_log(entropy(builtin::pshift())), "log 2");
  EXPECT_EQ(render_log(entropy(builtin::pshift(3))), "log 3");
  EXPECT_EQ(render_log(entropy(ActionSpec(2, {Principal{2, 2}, Principal{3, 1}}))), "2*log 2 + log 3");
  // d = 1, image t^2 / (t+1): log+ is log 2 at infinity and log 2 at (t+1).
  EXPECT_EQ(render_log(entropy(ActionSpec(1, {curve(2, {"0,0,1/1,1"})}))), "2*log 2");
}

TEST(Entropy, ShiftExtensionConvergence) {
  const auto ps = builtin::pshift();
  double best = 0.0;
  for (std::int64_t n = 150; n <= 200; ++n) {
    best = std::max(best, count_fixed(ps, Subgroup::diagonal({n})).log() / static_cast<double>(n));
  }
  EXPECT_NEAR(best, std::log(2.0), 0.01);
}

TEST(GrowthScan, SuspendedLedrappier) {
  const auto g = growth_scan(builtin::ledrappier3(), 7);
  EXPECT_EQ(render_log(g.g_n), "2/3*log 2");
  EXPECT_EQ(g.argmax.to_string(), "[3,1,0,1]");
  EXPECT_TRUE(g.certified);
  EXPECT_NEAR(g.tail_bound, 2.0 * std::sqrt(2.0 / (7.0 * std::numbers::pi)) * std::log(2.0), 1e-12);
  EXPECT_LT(g.tail_bound, 2.0 / 3.0 * std::log(2.0));
  EXPECT_TRUE(g.g_alpha_exact);
  EXPECT_EQ(render_log(g.g_alpha), "2/3*log 2");
}

TEST(GrowthScan, Ledrappier) {
  const auto g = growth_scan(ledrappier(), 100);
  EXPECT_EQ(render_log(g.g_n), "2/3*log 2");
  EXPECT_NEAR(g.tail_bound, 2.0 * std::sqrt(2.0 / std::numbers::pi) * std::log(2.0) / 10.0, 1e-12);
  EXPECT_TRUE(g.g_alpha_exact);
  EXPECT_EQ(render_log(g.g_alpha), "0");
  // Bound of the Ledrappier example at every index.
  for (std::int64_t n = 1; n <= 100; ++n) {
    for (const auto& s : enumerate_subgroups(2, n)) {
      EXPECT_LE(count_fixed(ledrappier(), s).log(),
                2.0 * std::sqrt(2.0 / std::numbers::pi) * std::log(2.0) * std::sqrt(static_cast<double>(n)) + 1e-9);
    }
  }
}

TEST(GrowthScan, PrincipalOnly) {
  for (std::int64_t N : {1, 5, 12}) {
    const auto g = growth_scan(builtin::principal(2), N);
    EXPECT_EQ(render_log(g.g_n), "log 2");
    EXPECT_TRUE(g.certified);
    EXPECT_EQ(render_log(g.g_alpha), "log 2");
  }
  EXPECT_EQ(kind_of([] { growth_scan(builtin::pshift(), 5); }), ErrorKind::UnsupportedDimension);
}

TEST(GrowthScan, TailBoundDecreases) {
  const auto spec = ledrappier();
  double prev = 1e9;
  for (std::int64_t N = 1; N <= 20; ++N) {
    const double t = growth_scan(spec, N).tail_bound;
    EXPECT_LT(t, prev);
    prev = t;
  }
}

TEST(Constants, Ledrappier) {
  const auto g = growth_constants(ledrappier());
  EXPECT_NEAR(g.kappa1, std::log(2.0), 1e-15);
  EXPECT_NEAR(g.log_lambda, std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(g.e_total, 3.0);
}

TEST(Bounds, ShortVectorAndMinkowski) {
  const std::vector<ActionSpec> specs{ledrappier(), builtin::mixed(), builtin::principal(3),
                                      ActionSpec(2, {curve(3, {"0,1", "1,0,1/1,1"})}),
                                      ActionSpec(3, {curve(2, {"0,1", "1,1", "1,1,1"})})};
  for (const auto& spec : specs) {
    const double h = log_value(entropy(spec));
    const std::int64_t top = spec.d() == 3 ? 30 : 100;
    for (std::int64_t n = 1; n <= top; ++n) {
      for (const auto& s : enumerate_subgroups(spec.d(), n)) {
        const double logf = count_fixed(spec, s).log();
        EXPECT_LE(logf, short_vector_log_bound(spec, s) + 1e-9) << s.to_string();
        EXPECT_LE(logf - h * static_cast<double>(n), minkowski_log_bound(spec, n) + 1e-9) << s.to_string();
      }
    }
  }
}

TEST(EntropyNormalized, Examples) {
  const auto pr = builtin::principal(2);
  for (const auto& s : enumerate_subgroups(2, 6)) EXPECT_TRUE(entropy_normalized_count(pr, s).is_one());
  EXPECT_EQ(entropy_normalized_count(builtin::mixed(), Subgroup(2, {3, 1, 0, 1})).to_string(), "2^2");
  for (const auto& s : enumerate_subgroups(2, 7)) {
    EXPECT_EQ(entropy_normalized_count(ledrappier(), s), count_fixed(ledrappier(), s));
  }
}

}  // namespace
}  // namespace zdzeta
