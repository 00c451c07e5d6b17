#include <gtest/gtest.h>

#include <random>

#include "dense_kl.hpp"
#include "fixtures.hpp"
#include "twistkl/hecke.hpp"

using namespace twistkl;
using testing_support::make_pipeline;

namespace {

LaurentZ v(int e) { return LaurentZ::v_power(e); }

std::vector<std::int64_t> coeffs64(const XPoly& p) {
  std::vector<std::int64_t> out;
  for (const auto& c : p.coeffs()) out.push_back(c.get_si());
  return out;
}

void expect_matches_dense_oracle(const std::string& group, const std::string& sigma) {
  auto p = make_pipeline(group, sigma);
  const auto& t = p->tables();
  const auto dense = oracle::kl_polynomials(*t.sys);
  for (ElementId w = 0; w < t.sys->size(); ++w)
    for (ElementId y = 0; y < t.sys->size(); ++y)
      ASSERT_EQ(coeffs64(t.p[y][w]), dense[y][w]) << group << " " << sigma << " y=" << t.sys->ambient_word(y)
                                                  << " w=" << t.sys->ambient_word(w);
}

}  // namespace

TEST(DenseOracle, EqualParameters) {
  for (const char* g : {"A1", "A2", "A3", "B2", "G2", "B3"}) expect_matches_dense_oracle(g, "id");
}

TEST(DenseOracle, UnequalParameters) {
  expect_matches_dense_oracle("A2", "flip");
  expect_matches_dense_oracle("A3", "flip");
  expect_matches_dense_oracle("A4", "flip");
  expect_matches_dense_oracle("D4", "flip");
  expect_matches_dense_oracle("A5", "flip");
}

TEST(HeckeAlgebra, QuadraticRelation) {
  for (const char* sigma : {"id", "flip"}) {
    auto p = make_pipeline("A3", sigma);
    auto& t = p->tables();
    const auto& h = *t.hecke;
    for (int s = 0; s < t.sys->rank(); ++s) {
      const ElementId se = t.sys->group().left(s, 0);
      const int l2 = 2 * t.sys->generator_weight(s);
      HeckeElement expect = h.zero();
      expect.c[se] = v(l2) - LaurentZ(1);
      expect.c[0] = v(l2);
      EXPECT_EQ(h.multiply(h.basis(se), h.basis(se)), expect);
    }
  }
}

TEST(HeckeAlgebra, LengthsAddGivesBasisProduct) {
  auto p = make_pipeline("A3", "flip");
  auto& t = p->tables();
  const auto& g = t.sys->group();
  const ElementId s0 = g.left(0, 0), s1 = g.left(1, 0);
  EXPECT_EQ(t.hecke->multiply(t.hecke->basis(s0), t.hecke->basis(s1)), t.hecke->basis(g.multiply(s0, s1)));
}

TEST(HeckeAlgebra, AssociativityOnRandomTriples) {
  auto p = make_pipeline("A3", "flip");
  auto& t = p->tables();
  const auto& h = *t.hecke;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(t.sys->size() - 1));
  for (int i = 0; i < 100; ++i) {
    const auto x = h.basis(pick(rng)), y = h.basis(pick(rng)), z = h.basis(pick(rng));
    EXPECT_EQ(h.multiply(h.multiply(x, y), z), h.multiply(x, h.multiply(y, z)));
  }
}

TEST(HeckeAlgebra, InverseInRankOneWithWeightThree) {
  auto p = make_pipeline("A2", "flip");
  auto& t = p->tables();
  const auto& inv = t.hecke->t_inverse(1);
  EXPECT_EQ(inv.c[1], v(-6));
  EXPECT_EQ(inv.c[0], v(-6) - LaurentZ(1));
  EXPECT_EQ(t.hecke->t_inverse(0), t.hecke->basis(0));
  auto q = make_pipeline("A3", "flip");
  auto& u = q->tables();
  for (ElementId w = 0; w < u.sys->size(); ++w)
    EXPECT_EQ(u.hecke->multiply(u.hecke->t_inverse(w), u.hecke->basis(w)), u.hecke->basis(0));
}

TEST(HeckeAlgebra, BarInvolution) {
  auto p = make_pipeline("A2", "flip");
  auto& t = p->tables();
  const auto& h = *t.hecke;
  EXPECT_EQ(h.bar(h.basis(0)), h.basis(0));
  for (ElementId w = 0; w < t.sys->size(); ++w) EXPECT_EQ(h.bar(h.bar(h.basis(w))), h.basis(w));

  auto q = make_pipeline("A3", "flip");
  auto& u = q->tables();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<ElementId> pick(0, 7);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int i = 0; i < 50; ++i) {
    HeckeElement a = u.hecke->zero(), b = u.hecke->zero();
    for (int k = 0; k < 3; ++k) {
      a.c[pick(rng)] += v(e(rng));
      b.c[pick(rng)] += v(e(rng));
    }
    EXPECT_EQ(u.hecke->bar(u.hecke->multiply(a, b)), u.hecke->multiply(u.hecke->bar(a), u.hecke->bar(b)));
  }
}

TEST(RTable, RankOneWeights) {
  for (const auto& [group, c] : std::vector<std::pair<std::string, int>>{{"A1", 1}, {"A2", 3}}) {
    auto p = make_pipeline(group, group == "A1" ? "id" : "flip");
    auto& t = p->tables();
    std::vector<mpz_class> expect(c + 1, 0);
    expect[0] = -1;
    expect[c] = 1;
    EXPECT_EQ(t.r[0][1], XPoly(expect)) << group;
    EXPECT_EQ(t.r[1][1], XPoly::one());
  }
}

TEST(RTable, IdentitiesHold) {
  for (const char* sigma : {"id", "flip"}) {
    auto p = make_pipeline("A3", sigma);
    auto& t = p->tables();
    EXPECT_TRUE(check_r_support(*t.sys, t.r).ok);
    const auto o = check_r_product_identity(*t.hecke, t.r);
    EXPECT_TRUE(o.ok) << o.detail;
  }
}

TEST(PTable, KnownValues) {
  auto p = make_pipeline("A3");
  auto& t = p->tables();
  const auto& g = t.sys->group();
  EXPECT_EQ(t.p[0][*g.parse_element("s2s1s3s2")].str(), "1+X");
  for (ElementId w = 0; w < t.sys->size(); ++w) EXPECT_EQ(t.p[w][w], XPoly::one());
  for (const char* sigma : {"id", "flip"}) {
    auto q = make_pipeline("A2", sigma);
    EXPECT_EQ(q->tables().p[0][1], XPoly::one());
    EXPECT_EQ(q->tables().q[0][1], XPoly::one());
  }
}

TEST(PTable, DefiningIdentityAndDegreeBounds) {
  for (const auto& [g, s] : std::vector<std::pair<std::string, std::string>>{{"A3", "flip"}, {"A2", "flip"}, {"B3", "id"}}) {
    auto p = make_pipeline(g, s);
    auto& t = p->tables();
    EXPECT_TRUE(check_p_identity(*t.sys, t.r, t.p).ok);
    EXPECT_TRUE(check_degree_bounds(*t.sys, t.p, "P").ok);
    EXPECT_TRUE(check_degree_bounds(*t.sys, t.q, "Q").ok);
  }
}

TEST(QTable, ExactInversion) {
  for (const char* sigma : {"id", "flip"}) {
    auto p = make_pipeline("A3", sigma);
    auto& t = p->tables();
    const auto o = check_q_inversion(*t.sys, t.p, t.q);
    EXPECT_TRUE(o.ok) << o.detail;
    EXPECT_GT(o.checked, 0u);
  }
}

TEST(CBases, RankOneForms) {
  auto p = make_pipeline("A2", "flip");
  auto& t = p->tables();
  EXPECT_EQ(t.csigned[1].c[1], v(-3));
  EXPECT_EQ(t.csigned[1].c[0], -v(3));
  EXPECT_EQ(t.cprime[1].c[1], v(-3));
  EXPECT_EQ(t.cprime[1].c[0], v(-3));
  EXPECT_EQ(t.cprime[0], t.hecke->basis(0));
  EXPECT_EQ(t.csigned[0], t.hecke->basis(0));
}

TEST(CBases, BarInvariantAndFormsAgree) {
  auto p = make_pipeline("A3", "flip");
  auto& t = p->tables();
  EXPECT_TRUE(check_bar_invariance(*t.hecke, t.cprime, "C'").ok);
  EXPECT_TRUE(check_bar_invariance(*t.hecke, t.csigned, "C").ok);
  EXPECT_TRUE(check_signed_forms_agree(*t.hecke, t.p, t.csigned).ok);
}

TEST(StructureConstants, UnitRankOneAndBarSymmetry) {
  auto p = make_pipeline("A2", "flip");
  auto& t = p->cell_tables();
  EXPECT_EQ(t.h.get(1, 1, 1), v(3) + v(-3));
  EXPECT_TRUE(t.h.get(1, 1, 0).is_zero());
  auto q = make_pipeline("A3", "flip");
  auto& u = q->cell_tables();
  const std::size_t n = u.sys->size();
  for (ElementId y = 0; y < n; ++y)
    for (ElementId z = 0; z < n; ++z) EXPECT_EQ(u.h.get(0, y, z), LaurentZ(y == z ? 1 : 0));
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y)
      for (ElementId z = 0; z < n; ++z) EXPECT_EQ(u.h.get(x, y, z).bar(), u.h.get(x, y, z));
  EXPECT_TRUE(check_structure_constants(*u.hecke, u.cprime, u.h).ok);
}

TEST(Parallel, TablesIndependentOfJobs) {
  auto a = make_pipeline("B3", "id", "id", 1);
  auto b = make_pipeline("B3", "id", "id", 4);
  EXPECT_EQ(a->tables().r, b->tables().r);
  EXPECT_EQ(a->tables().p, b->tables().p);
  EXPECT_EQ(a->tables().q, b->tables().q);
}
