#include <gtest/gtest.h>

#include "leetor/homology.hpp"
#include "leetor/invariants.hpp"
#include "oracles/khovanov_oracle.hpp"
#include "test_support.hpp"

using namespace leetor;

namespace {

LeeElement times_t(const LeeElement& a, int power) {
  LeeElement out;
  for (const auto& [m, c] : a.terms()) out.add(CircleMonomial{m.vertex, m.circles, m.t_power + power}, c);
  return out;
}

bool all_zero(const std::vector<Poly>& coords) {
  for (const auto& p : coords)
    if (!p.empty()) return false;
  return true;
}

BigradedDims oracle_dims(const std::string& pd) {
  BigradedDims out;
  for (const auto& [g, d] : oracle::khovanov(pd)) out[g] = d;
  return out;
}

}  // namespace

TEST(Homology, CrossinglessUnknot) {
  const auto cx = build_complex(Diagram::unknot(), Theory::Lee);
  const auto h = compute_homology(cx);
  EXPECT_EQ(h.module.total_free_rank(), 2);
  EXPECT_EQ(h.module.max_torsion_exponent(), 0);
  EXPECT_EQ(h.module.free_gradings(), (std::vector<Bigrading>{{0, -1}, {0, 1}}));
}

TEST(Homology, TrefoilKhovanovMatchesOracle) {
  const auto cx = build_complex(parse_pd(testing_support::kTrefoil), Theory::Khovanov);
  const auto dims = dimensions(compute_homology(cx, {false}).module);
  EXPECT_EQ(dims, oracle_dims(testing_support::kTrefoil));
  EXPECT_EQ(dims, (BigradedDims{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}}));
}

TEST(Homology, TrefoilLee) {
  const auto cx = build_complex(parse_pd(testing_support::kTrefoil), Theory::Lee);
  const auto h = compute_homology(cx);
  EXPECT_EQ(h.module.free_gradings(), (std::vector<Bigrading>{{0, 1}, {0, 3}}));
  EXPECT_EQ(h.module.torsion_list(), (std::vector<std::array<int, 3>>{{3, 9, 1}}));
}

TEST(Homology, RepresentativesAreCycles) {
  for (const char* name : {"3_1", "m4_1", "5_2", "8_19"}) {
    const auto cx = build_complex(entry_diagram(testing_support::entry(name)), Theory::Lee);
    const auto h = compute_homology(cx);
    for (const auto& g : h.basis.generators()) {
      EXPECT_TRUE(cx.apply_differential(g.representative).is_zero()) << name;
      const auto coords = h.basis.classify(g.representative);
      for (int i = 0; i < h.basis.size(); ++i) {
        Poly expected;
        if (&h.basis.generator(i) == &g) expected[0] = 1;
        EXPECT_EQ(coords[static_cast<std::size_t>(i)], expected) << name;
      }
    }
  }
}

// t^k g is a boundary and t^(k-1) g is not, for each torsion generator Q[t]/t^k.
TEST(Homology, TorsionOrders) {
  for (const char* name : {"3_1", "4_1", "m6_2", "8_19", "m8_19"}) {
    const auto cx = build_complex(entry_diagram(testing_support::entry(name)), Theory::Lee);
    const auto h = compute_homology(cx);
    for (const auto& g : h.basis.generators()) {
      if (g.torsion == 0) continue;
      EXPECT_TRUE(all_zero(h.basis.classify(times_t(g.representative, g.torsion)))) << name;
      EXPECT_FALSE(all_zero(h.basis.classify(times_t(g.representative, g.torsion - 1)))) << name;
    }
  }
}

TEST(Homology, ClassifyRejectsNonCycles) {
  const auto cx = build_complex(parse_pd(testing_support::kTrefoil), Theory::Lee);
  const auto h = compute_homology(cx);
  try {
    h.basis.classify(cx.basis_element(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotACycleAfterMultiplication);
  }
}

TEST(Homology, BoundariesClassifyToZero) {
  const auto cx = build_complex(parse_pd(testing_support::entry("5_2").pd), Theory::Lee);
  const auto h = compute_homology(cx);
  for (int g = 0; g < cx.generator_count(); ++g)
    EXPECT_TRUE(all_zero(h.basis.classify(cx.apply_differential(cx.basis_element(g)))));
}

TEST(Homology, UnknotXAction) {
  const auto cx = build_complex(Diagram::unknot(), Theory::Lee);
  const auto h = compute_homology(cx);
  const auto x = x_action_matrix(cx, h.basis, 1);
  // basis sorted by q: X sends the q=1 class to the q=-1 class, and that one to t times the first
  ASSERT_EQ(h.basis.size(), 2);
  const int hi = h.basis.generator(0).q == 1 ? 0 : 1;
  const int lo = 1 - hi;
  EXPECT_EQ(x.entries[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)], (Poly{{0, 1}}));
  EXPECT_EQ(x.entries[static_cast<std::size_t>(hi)][static_cast<std::size_t>(lo)], (Poly{{1, 1}}));
}

TEST(Homology, XSquaredIsT) {
  for (const char* name : {"0_1_r2", "3_1", "m4_1", "5_1", "8_19"}) {
    const auto cx = build_complex(entry_diagram(testing_support::entry(name)), Theory::Lee);
    const auto h = compute_homology(cx);
    const auto x = x_action_matrix(cx, h.basis, 1);
    EXPECT_TRUE(compose(h.basis, x, x) == t_action_matrix(h.basis)) << name;
  }
}

TEST(Homology, XActionIsEdgeIndependentUpToSign) {
  for (const char* name : {"3_1", "4_1", "m6_3"}) {
    const auto cx = build_complex(entry_diagram(testing_support::entry(name)), Theory::Lee);
    const auto h = compute_homology(cx);
    const auto x1 = x_action_matrix(cx, h.basis, 1);
    for (int e = 2; e <= cx.diagram().edge_count(); ++e) {
      const auto xe = x_action_matrix(cx, h.basis, e);
      EXPECT_TRUE(xe == x1 || xe == x1.scaled(-1)) << name << " edge " << e;
    }
  }
}

TEST(Homology, TorsionInvariantsOnTable) {
  for (const auto& e : testing_support::bundled()) {
    const auto cx = build_complex(entry_diagram(e), Theory::Lee);
    const auto h = compute_homology(cx);
    const auto inv = torsion_invariants(h.module, h.basis, x_action_matrix(cx, h.basis, 1));
    EXPECT_EQ(inv.u_t, (inv.u_X + 1) / 2) << e.name;
    if (e.expected.u_X) EXPECT_EQ(inv.u_X, *e.expected.u_X) << e.name;
    if (e.expected.u_t) EXPECT_EQ(inv.u_t, *e.expected.u_t) << e.name;
  }
}

TEST(Homology, KhovanovHasNoTorsionAndLeeHasRankTwo) {
  for (const auto& e : testing_support::bundled()) {
    const Diagram d = entry_diagram(e);
    const auto kh = compute_homology(build_complex(d, Theory::Khovanov), {false}).module;
    EXPECT_EQ(kh.max_torsion_exponent(), 0) << e.name;
    const auto lee = compute_homology(build_complex(d, Theory::Lee), {false}).module;
    EXPECT_EQ(lee.total_free_rank(), 2) << e.name;
    EXPECT_FALSE(uct_check(kh, lee).has_value()) << e.name;
  }
}
