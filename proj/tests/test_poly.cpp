#include <gtest/gtest.h>

#include <random>

#include "twistkl/laurent.hpp"
#include "twistkl/poly_json.hpp"

using namespace twistkl;

namespace {

LaurentZ random_laurent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-6, 6), c(-5, 5), n(0, 5);
  std::vector<LaurentZ::Term> t;
  for (int i = n(rng); i > 0; --i) t.emplace_back(e(rng), mpz_class(c(rng)));
  return LaurentZ::from_terms(std::move(t));
}

}  // namespace

TEST(Laurent, BarOfSquarePlusOne) {
  const LaurentZ p = LaurentZ::v_power(2) + LaurentZ(1);
  EXPECT_EQ(p.bar(), LaurentZ::v_power(-2) + LaurentZ(1));
  EXPECT_TRUE(LaurentZ().bar().is_zero());
}

TEST(Laurent, BarIsAnInvolutionAndRingMap) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_laurent(rng), b = random_laurent(rng);
    EXPECT_EQ(a.bar().bar(), a);
    EXPECT_EQ((a * b).bar(), a.bar() * b.bar());
    EXPECT_EQ((a + b).bar(), a.bar() + b.bar());
  }
}

TEST(Laurent, CanonicalRendering) {
  const auto p = LaurentZ::from_terms({{3, 1}, {-1, -1}, {0, 2}});
  EXPECT_EQ(p.str(), "-v^-1+2+v^3");
  EXPECT_EQ(LaurentZ().str(), "0");
  EXPECT_EQ(to_json(p).dump(), "[[-1,-1],[0,2],[3,1]]");
}

TEST(Laurent, TextRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_laurent(rng);
    const auto back = laurent_from_text(a.str());
    ASSERT_TRUE(back.has_value()) << a.str();
    EXPECT_EQ(*back, a);
  }
  EXPECT_FALSE(laurent_from_text("v^").has_value());
  EXPECT_FALSE(laurent_from_text("3x").has_value());
}

TEST(Laurent, TopCoefficient) {
  const auto p = LaurentZ::from_terms({{5, 3}, {1, 1}});
  const auto t = top_coefficient(p, 5);
  EXPECT_EQ(t.coeff, 3);
  EXPECT_TRUE(t.bounded);
  const auto u = top_coefficient(LaurentZ::v_power(6), 5);
  EXPECT_EQ(u.coeff, 0);
  EXPECT_FALSE(u.bounded);
  const auto z = top_coefficient(LaurentZ(), 17);
  EXPECT_EQ(z.coeff, 0);
  EXPECT_TRUE(z.bounded);
}

TEST(XPoly, Substitutions) {
  const XPoly x_minus_one(std::vector<mpz_class>{-1, 1});
  EXPECT_EQ(x_minus_one.at_v_squared(), LaurentZ::v_power(2) - LaurentZ(1));
  EXPECT_EQ(x_minus_one.at_v_minus_squared(), LaurentZ::v_power(-2) - LaurentZ(1));
  const XPoly x2_plus_x(std::vector<mpz_class>{0, 1, 1});
  EXPECT_EQ(x2_plus_x.at(2), 6);
}

TEST(XPoly, RenderingAndParsing) {
  const XPoly p(std::vector<mpz_class>{1, 0, 1});
  EXPECT_EQ(p.str(), "1+X^2");
  EXPECT_EQ(XPoly(std::vector<mpz_class>{0, -1, 3}).str(), "-X+3X^2");
  for (const char* s : {"1", "1+X", "1+X^2", "-X+3X^2", "0", "-2-7X^5"}) {
    const auto q = xpoly_from_text(s);
    ASSERT_TRUE(q.has_value()) << s;
    EXPECT_EQ(q->str(), s);
  }
  EXPECT_FALSE(xpoly_from_text("X^-1").has_value());
  EXPECT_EQ(to_json(p).dump(), "[1,0,1]");
  EXPECT_EQ(xpoly_from_json(to_json(p)), p);
}

TEST(PolyJson, BigCoefficientsBecomeStrings) {
  const mpz_class big("123456789012345678901234567890");
  const LaurentZ p(big, 2);
  const auto j = to_json(p);
  EXPECT_TRUE(j[0][1].is_string());
  EXPECT_EQ(laurent_from_json(j), p);
}
