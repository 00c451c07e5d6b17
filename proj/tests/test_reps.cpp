#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "twistkl/wrep.hpp"

using namespace twistkl;
using testing_support::make_pipeline;

namespace {

std::vector<long> dims(const CharacterTable& t) {
  std::vector<long> d;
  for (std::size_t i = 0; i < t.size(); ++i) d.push_back(t.dim(i));
  std::sort(d.begin(), d.end());
  return d;
}

struct Case {
  std::string group, sigma, delta;
};

const std::vector<Case> kCases{{"A2", "id", "id"},  {"A2", "id", "flip"}, {"A2", "flip", "id"},
                               {"A3", "id", "id"},  {"A3", "id", "flip"}, {"A3", "flip", "id"},
                               {"B2", "id", "id"},  {"G2", "id", "id"},   {"B3", "id", "id"}};

}  // namespace

TEST(CharacterTable, Dimensions) {
  EXPECT_EQ(dims(character_table(make_pipeline("A2")->system().group())), (std::vector<long>{1, 1, 2}));
  EXPECT_EQ(dims(character_table(make_pipeline("B2")->system().group())), (std::vector<long>{1, 1, 1, 1, 2}));
  EXPECT_EQ(dims(character_table(make_pipeline("A3")->system().group())), (std::vector<long>{1, 1, 2, 3, 3}));
  EXPECT_EQ(character_table(make_pipeline("G2")->system().group()).size(), 6u);
  EXPECT_EQ(character_table(make_pipeline("F4")->system().group()).size(), 25u);
}

TEST(CharacterTable, OrthogonalityEverywhere) {
  for (const char* g : {"A1", "A3", "B3", "G2", "D4", "A4"}) {
    const auto t = character_table(make_pipeline(g)->system().group());
    const auto o = check_orthogonality(t);
    EXPECT_TRUE(o.ok) << g << ": " << o.detail;
  }
}

TEST(MatrixModels, SignTrivialAndCharacters) {
  auto p = make_pipeline("B2");
  const auto& g = p->system().group();
  const auto t = character_table(g);
  const auto m = matrix_models(g, t);
  EXPECT_TRUE(check_models(g, t, m).ok);
  ASSERT_EQ(t.dim(0), 1);
  for (int s = 0; s < g.rank(); ++s) EXPECT_EQ(m[0].generators[s](0, 0), 1);
  bool found_sign = false;
  for (std::size_t e = 0; e < t.size(); ++e) {
    if (t.dim(e) != 1) continue;
    bool sign = true;
    for (int s = 0; s < g.rank(); ++s) sign = sign && m[e].generators[s](0, 0) == -1;
    found_sign = found_sign || sign;
  }
  EXPECT_TRUE(found_sign);
}

TEST(DeltaExtensions, IdentityDeltaIsPlusIdentity) {
  auto p = make_pipeline("A3");
  const auto& r = p->reps();
  for (std::size_t e = 0; e < r.ext.size(); ++e) {
    EXPECT_EQ(r.ext[e].m_size, 2);
    EXPECT_EQ(r.ext[e].delta, QMatrix::identity(r.models[e].dim()));
  }
}

TEST(DeltaExtensions, FlipOnA3IsProportionalToLongestElement) {
  auto p = make_pipeline("A3", "id", "flip");
  const auto& r = p->reps();
  const ElementId w0 = p->system().longest_element();
  for (std::size_t e = 0; e < r.ext.size(); ++e) {
    ASSERT_EQ(r.ext[e].m_size, 2) << "E" << e;
    const auto c = (r.ext[e].delta * r.models[e].elements[w0]).as_scalar();
    ASSERT_TRUE(c.has_value()) << "E" << e;
    EXPECT_TRUE(*c == 1 || *c == -1);
  }
  EXPECT_TRUE(check_delta_extensions(p->system().group(), r.models, r.ext, r.delta).ok);
}

TEST(RepLayer, A2AValues) {
  auto p = make_pipeline("A2");
  const auto& r = p->reps();
  std::vector<int> a = r.a;
  std::sort(a.begin(), a.end());
  EXPECT_EQ(a, (std::vector<int>{0, 1, 3}));
  for (std::size_t e = 0; e < r.a.size(); ++e) {
    if (r.a[e] == 0) EXPECT_EQ(r.a_prime[e], 3);
    if (r.a[e] == 3) EXPECT_EQ(r.a_prime[e], 0);
    if (r.a[e] == 1) EXPECT_EQ(r.a_prime[e], 1);
    EXPECT_EQ(r.dagger[r.dagger[e]], static_cast<int>(e));
  }
}

TEST(RepLayer, TraceAtIdentityIsDimension) {
  auto p = make_pipeline("B2");
  const auto& r = p->reps();
  for (std::size_t k = 0; k < r.irr.size(); ++k)
    EXPECT_EQ(r.trace[k][0], LaurentQ(mpq_class(r.table.dim(r.irr[k]))));
}

TEST(RepLayer, RankOnePairing) {
  auto p = make_pipeline("A2", "flip");
  const auto& r = p->reps();
  const LaurentQ v6 = LaurentQ::v_power(6);
  std::size_t hit = r.irr.size();
  for (std::size_t k = 0; k < r.irr.size(); ++k)
    if (r.trace[k][1] == v6) hit = k;
  ASSERT_LT(hit, r.irr.size());
  // The unnormalized sum of v^{2L(u)} tr(T_u)^2 for T_s -> v^{2c}, c = 3.
  EXPECT_EQ(r.pairing_literal[hit][hit], LaurentQ(1) + LaurentQ::v_power(18));
  EXPECT_EQ(r.pairing[hit][hit].at_one(), 2);
  for (std::size_t kk = 0; kk < r.irr.size(); ++kk)
    if (kk != hit) EXPECT_TRUE(r.pairing[hit][kk].is_zero());
}

TEST(RepLayer, AllChecksOnSmallSystems) {
  for (const auto& c : kCases) {
    auto p = make_pipeline(c.group, c.sigma, c.delta);
    const auto& sys = p->system();
    auto& t = p->cell_tables();
    const auto& r = p->reps();
    const std::string tag = c.group + " sigma=" + c.sigma + " delta=" + c.delta;
    EXPECT_TRUE(r.sharp.ok) << tag << ": " << r.sharp.detail;
    EXPECT_TRUE(r.bound.ok) << tag << ": " << r.bound.detail;
    for (const auto& [name, o] : std::vector<std::pair<std::string, Outcome>>{
             {"rep_cells", check_rep_cells(r, t.cells)},
             {"specialization", check_specialization(sys, r)},
             {"cross", check_cprime_cross(sys, r)},
             {"support", check_a_support(sys, r, t.cells)},
             {"span", check_a_span(sys, r, t.cells)},
             {"pairing", check_pairing(sys, r)},
             {"decomposition", check_leading_decomposition(sys, r, t.cells)}})
      EXPECT_TRUE(o.ok) << tag << " " << name << ": " << o.detail;
  }
}

TEST(RepLayer, RankOneAVectors) {
  auto p = make_pipeline("A2", "flip");
  const auto& r = p->reps();
  ASSERT_EQ(r.irr.size(), 2u);
  // A_e and A_s are the two distinct unit vectors.
  EXPECT_NE(r.cprime[0], r.cprime[1]);
  for (ElementId w = 0; w < 2; ++w) {
    int ones = 0;
    for (const auto& c : r.cprime[w]) ones += c == 1 ? 1 : 0;
    EXPECT_EQ(ones, 1);
  }
}
