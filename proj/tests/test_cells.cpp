#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "twistkl/cells.hpp"

using namespace twistkl;
using testing_support::make_pipeline;

namespace {

std::set<std::string> words(const WeightedSystem& s, const std::vector<ElementId>& ids) {
  std::set<std::string> out;
  for (auto w : ids) out.insert(s.ambient_word(w));
  return out;
}

}  // namespace

TEST(Cells, A2TwoSidedCells) {
  auto p = make_pipeline("A2");
  auto& t = p->cell_tables();
  const auto& c = t.cells.two_cells.cells;
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(words(*t.sys, c[0]), (std::set<std::string>{"e"}));
  EXPECT_EQ(words(*t.sys, c[1]), (std::set<std::string>{"1", "2", "12", "21"}));
  EXPECT_EQ(words(*t.sys, c[2]), (std::set<std::string>{"121"}));
  std::vector<int> a(t.cells.a.begin(), t.cells.a.end());
  EXPECT_EQ(a, (std::vector<int>{0, 1, 1, 1, 1, 3}));
  EXPECT_EQ(t.cells.star[1], 1);  // middle cell is self-star
}

TEST(Cells, IdentityIsItsOwnCell) {
  for (const char* g : {"A3", "B2", "G2"}) {
    auto p = make_pipeline(g);
    auto& t = p->cell_tables();
    EXPECT_EQ(t.cells.two_cells.cells[0], std::vector<ElementId>{0}) << g;
    EXPECT_EQ(t.cells.a[0], 0);
    const auto w0 = t.sys->longest_element();
    EXPECT_EQ(t.cells.star[0], t.cells.two_cells.cell_of[w0]);
  }
}

TEST(Cells, LeftCellsRefineTwoSided) {
  auto p = make_pipeline("A3");
  auto& t = p->cell_tables();
  EXPECT_EQ(t.cells.two_cells.cells.size(), 5u);   // partitions of 4
  EXPECT_EQ(t.cells.left_cells.cells.size(), 10u);  // involutions of S_4
  for (const auto& lc : t.cells.left_cells.cells)
    for (auto x : lc)
      for (auto y : lc) EXPECT_TRUE(t.cells.two_sided.leq(x, y));
}

TEST(Cells, AFunctionOnGenerators) {
  for (const auto& [g, s] : std::vector<std::pair<std::string, std::string>>{{"A2", "flip"}, {"A3", "flip"}, {"G2", "id"}}) {
    auto p = make_pipeline(g, s);
    auto& t = p->cell_tables();
    for (int i = 0; i < t.sys->rank(); ++i) {
      const ElementId si = t.sys->group().left(i, 0);
      EXPECT_EQ(t.cells.a[si], t.sys->generator_weight(i)) << g << " " << s;
      EXPECT_TRUE(t.cells.is_distinguished[si]);
    }
    EXPECT_TRUE(t.cells.is_distinguished[0]);
  }
}

TEST(Cells, DistinguishedCountMatchesLeftCells) {
  for (const char* s : {"id", "flip"}) {
    auto p = make_pipeline("A3", s);
    auto& t = p->cell_tables();
    EXPECT_EQ(t.cells.distinguished.size(), t.cells.left_cells.cells.size()) << s;
    EXPECT_TRUE(check_distinguished(*t.sys, t.cells).ok);
    EXPECT_TRUE(check_a_function(*t.sys, t.cells).ok);
    EXPECT_TRUE(check_star(*t.sys, t.cells).ok);
  }
}

TEST(Cells, StarIsAnInvolution) {
  auto p = make_pipeline("B3");
  auto& t = p->cell_tables();
  for (std::size_t c = 0; c < t.cells.star.size(); ++c) EXPECT_EQ(t.cells.star[t.cells.star[c]], static_cast<int>(c));
}

TEST(Cells, ARestrictionAndEmbedding) {
  for (const char* g : {"A3", "A4"}) {
    auto p = make_pipeline(g, "flip");
    auto& sub = p->cell_tables();
    auto* big = p->ambient_cell_tables();
    ASSERT_NE(big, nullptr);
    const auto r = check_a_restriction(*big->sys, big->cells, *sub.sys, sub.cells);
    EXPECT_TRUE(r.ok) << g << ": " << r.detail;
    const auto& e = p->embedding();
    EXPECT_TRUE(e.outcome.ok) << g << ": " << e.outcome.detail;
    EXPECT_EQ(e.bang[0], 0);
    const int top = sub.cells.two_cells.cell_of[sub.sys->longest_element()];
    EXPECT_EQ(e.bang[top], big->cells.two_cells.cell_of[big->sys->longest_element()]);
  }
}

TEST(JRing, RankOneAndUnit) {
  auto p = make_pipeline("A2", "flip");
  auto& t = p->cell_tables();
  ASSERT_EQ(t.j.product(1, 1).size(), 1u);
  EXPECT_EQ(t.j.product(1, 1)[0].first, 1u);
  EXPECT_EQ(t.j.product(1, 1)[0].second, 1);
  ASSERT_EQ(t.j.product(0, 0).size(), 1u);
  EXPECT_EQ(t.j.product(0, 0)[0].first, 0u);
}

TEST(JRing, AssociativeWithUnitAndCellSupport) {
  for (const auto& [g, s] : std::vector<std::pair<std::string, std::string>>{{"A3", "flip"}, {"A3", "id"}, {"G2", "id"}}) {
    auto p = make_pipeline(g, s);
    auto& t = p->cell_tables();
    EXPECT_TRUE(check_j_associativity(t.j).ok) << g;
    EXPECT_TRUE(check_j_unit(t.j).ok) << g;
    EXPECT_TRUE(check_gamma_cells(*t.sys, t.j, t.cells).ok) << g;
  }
}

TEST(Psi, HomomorphismAndInvertible) {
  for (const auto& [g, s] : std::vector<std::pair<std::string, std::string>>{{"A2", "id"}, {"A3", "flip"}, {"B2", "id"}}) {
    auto p = make_pipeline(g, s);
    auto& t = p->cell_tables();
    const auto o = check_phi_homomorphism(*t.sys, t.h, t.j, t.phi);
    EXPECT_TRUE(o.ok) << g << ": " << o.detail;
    EXPECT_TRUE(t.phi.invertible);
    EXPECT_NE(t.phi.group_to_j.determinant(), 0);
  }
}

TEST(Psi, RankOneGeneratorImage) {
  auto p = make_pipeline("A2", "flip");
  auto& t = p->cell_tables();
  // psi(C'_s) lives on t-terms of a-value 3 and has a nonzero t_s coefficient.
  EXPECT_FALSE(t.phi.image[1][1].is_zero());
  for (ElementId z = 0; z < 2; ++z)
    if (!t.phi.image[1][z].is_zero()) EXPECT_EQ(t.cells.a[z], 3);
}
