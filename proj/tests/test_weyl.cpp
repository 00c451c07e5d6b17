#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "twistkl/errors.hpp"
#include "twistkl/weyl.hpp"

using namespace twistkl;
using testing_support::weyl;

TEST(Weyl, GroupOrdersAndLongestLength) {
  const std::vector<std::tuple<std::string, std::size_t, int>> cases{
      {"A1", 2, 1}, {"A2", 6, 3}, {"A3", 24, 6}, {"B2", 8, 4}, {"G2", 12, 6},
      {"B3", 48, 9}, {"A4", 120, 10}, {"D4", 192, 12}, {"F4", 1152, 24}};
  for (const auto& [g, order, lw0] : cases) {
    const auto w = weyl(g);
    EXPECT_EQ(w->size(), order) << g;
    EXPECT_EQ(w->group().length(w->longest_element()), lw0) << g;
  }
}

TEST(Weyl, RejectsBadDescriptorsAndOversizedGroups) {
  EXPECT_THROW(CoxeterDescriptor::parse("Z3"), ConfigError);
  EXPECT_THROW(CoxeterDescriptor::parse("A0"), ConfigError);
  EXPECT_THROW(CoxeterDescriptor::parse("B"), ConfigError);
  EXPECT_THROW(weyl("E6"), SizeError);
}

TEST(Weyl, ParabolicLongestElements) {
  const auto w = weyl("A2");
  const auto& g = w->group();
  EXPECT_EQ(g.longest_element({}), g.identity());
  const auto w0 = g.longest_element({0, 1});
  EXPECT_EQ(g.length(w0), 3);
  EXPECT_EQ(g.word_string(w0), "121");
  const auto a3 = weyl("A3");
  for (const std::vector<int>& s : std::vector<std::vector<int>>{{0}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    const auto x = a3->group().longest_element(s);
    EXPECT_EQ(a3->group().multiply(x, x), a3->group().identity());
  }
}

TEST(Weyl, BruhatOrder) {
  const auto w = weyl("A3");
  const auto& g = w->group();
  const auto w0 = g.longest_element();
  for (ElementId x = 0; x < g.size(); ++x) {
    EXPECT_TRUE(g.bruhat_leq(g.identity(), x));
    EXPECT_EQ(g.bruhat_leq(w0, x), x == w0);
  }
  EXPECT_TRUE(g.bruhat_leq(*g.parse_element("2"), *g.parse_element("s2s1s3s2")));
  EXPECT_FALSE(g.bruhat_leq(*g.parse_element("12"), *g.parse_element("21")));
}

TEST(Weyl, ElementParsing) {
  const auto w = weyl("A3");
  const auto& g = w->group();
  EXPECT_EQ(g.parse_element("e"), g.identity());
  EXPECT_EQ(g.parse_element("2132"), g.parse_element("s2s1s3s2"));
  EXPECT_EQ(g.parse_element("2312"), g.parse_element("2132"));  // s1 s3 = s3 s1
  EXPECT_FALSE(g.parse_element("5").has_value());
  EXPECT_FALSE(g.parse_element("x").has_value());
}

TEST(Weyl, AutomorphismValidation) {
  const auto w = weyl("A3");
  const auto m = w->group().coxeter_matrix();
  EXPECT_NO_THROW(DiagramAutomorphism::parse("1:3,3:1", 3).validate(m));
  EXPECT_THROW(DiagramAutomorphism::parse("1:2,2:1", 3).validate(m), ConfigError);
  EXPECT_THROW(DiagramAutomorphism::parse("1:3", 3), ConfigError);
  EXPECT_THROW(DiagramAutomorphism::parse("1-3", 3), ConfigError);
  const auto b2 = weyl("B2");
  // Swapping the two generators preserves the Coxeter matrix of B2.
  EXPECT_NO_THROW(DiagramAutomorphism::parse("1:2,2:1", 2).validate(b2->group().coxeter_matrix()));
  const auto d4 = weyl("D4");
  EXPECT_NO_THROW(DiagramAutomorphism::parse("1:3,3:4,4:1", 4).validate(d4->group().coxeter_matrix()));
  EXPECT_THROW(DiagramAutomorphism::parse("1:2,2:1", 4).validate(d4->group().coxeter_matrix()), ConfigError);
}

TEST(FixedSubgroup, IdentityGivesW) {
  const auto p = testing_support::make_pipeline("A2");
  EXPECT_FALSE(p->system().is_fixed_subsystem());
  EXPECT_EQ(p->system().size(), 6u);
  for (ElementId x = 0; x < 6; ++x) EXPECT_EQ(p->system().weight(x), p->system().length(x));
}

TEST(FixedSubgroup, A2FlipIsA1WithWeightThree) {
  const auto p = testing_support::make_pipeline("A2", "flip");
  const auto& s = p->system();
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.rank(), 1);
  EXPECT_EQ(s.generator_weight(0), 3);
  EXPECT_EQ(s.ambient_word(1), "121");
}

TEST(FixedSubgroup, A3FlipIsWeightedB2) {
  const auto p = testing_support::make_pipeline("A3", "1:3,3:1");
  const auto& s = p->system();
  ASSERT_EQ(s.size(), 8u);
  EXPECT_EQ(s.group().coxeter_matrix()[0][1], 4);
  std::vector<std::pair<std::string, int>> gens;
  for (int i = 0; i < s.rank(); ++i) {
    const auto g = s.group().left(i, s.group().identity());
    gens.emplace_back(s.ambient_word(g), s.generator_weight(i));
  }
  std::sort(gens.begin(), gens.end());
  EXPECT_EQ(gens, (std::vector<std::pair<std::string, int>>{{"13", 2}, {"2", 1}}));
  EXPECT_EQ(s.weight(s.longest_element()), 6);
}

TEST(FixedSubgroup, LargerFlips) {
  EXPECT_EQ(testing_support::make_pipeline("A4", "flip")->system().size(), 8u);
  EXPECT_EQ(testing_support::make_pipeline("A5", "flip")->system().size(), 48u);
  EXPECT_EQ(testing_support::make_pipeline("D4", "flip")->system().size(), 48u);
}

TEST(FixedSubgroup, DeltaMustCommuteWithSigma) {
  RunConfig c;
  c.group = "D4";
  c.sigma = "3:4,4:3";
  c.delta = "1:3,3:1";
  c.use_cache = false;
  EXPECT_THROW(validate(c), ConfigError);
}
