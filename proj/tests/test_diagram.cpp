#include <gtest/gtest.h>

#include "leetor/diagram.hpp"
#include "test_support.hpp"

using namespace leetor;
using testing_support::kHopf;
using testing_support::kLeftTrefoil;
using testing_support::kTrefoil;

namespace {

ErrorKind kind_of(const std::string& pd) {
  try {
    parse_pd(pd);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;  // parsed fine
}

}  // namespace

TEST(Diagram, ParsesTrefoilAndSigns) {
  const Diagram d = parse_pd(kTrefoil);
  EXPECT_EQ(d.crossing_count(), 3);
  EXPECT_EQ(d.edge_count(), 6);
  EXPECT_EQ(d.n_plus(), 3);
  EXPECT_EQ(writhe(d), 3);
  EXPECT_TRUE(d.is_knot());
}

TEST(Diagram, LeftTrefoilStringIsNegative) {
  const Diagram d = parse_pd(kLeftTrefoil);
  EXPECT_EQ(writhe(d), -3);
  EXPECT_EQ(writhe(mirror(d)), 3);
}

TEST(Diagram, FigureEightHasWritheZero) {
  const Diagram d = parse_pd(testing_support::entry("4_1").pd);
  EXPECT_EQ(d.n_plus(), 2);
  EXPECT_EQ(d.n_minus(), 2);
}

TEST(Diagram, AcceptsWrapperAndCommas) {
  const Diagram a = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]");
  EXPECT_EQ(a.to_pd(), parse_pd(kTrefoil).to_pd());
  EXPECT_EQ(parse_pd(a.to_pd()).to_pd(), a.to_pd());
}

TEST(Diagram, MalformedInput) {
  EXPECT_EQ(kind_of(""), ErrorKind::MalformedPd);
  EXPECT_EQ(kind_of("X[1,2,3]"), ErrorKind::MalformedPd);
  EXPECT_EQ(kind_of("X[1,2,3,4"), ErrorKind::MalformedPd);
  EXPECT_EQ(kind_of("Y[1,2,3,4]"), ErrorKind::MalformedPd);
  EXPECT_EQ(kind_of("X[1,1,2,2] junk"), ErrorKind::MalformedPd);
}

TEST(Diagram, EdgeCounts) {
  EXPECT_EQ(kind_of("X[1,2,3,4]"), ErrorKind::EdgeCountViolation);
  EXPECT_EQ(kind_of("X[1,1,1,2] X[2,3,3,3]"), ErrorKind::EdgeCountViolation);
  EXPECT_EQ(kind_of("X[0,0,1,1]"), ErrorKind::EdgeCountViolation);
}

TEST(Diagram, OrientationAndPlanarity) {
  EXPECT_EQ(kind_of("X[3,4,4,2] X[3,2,1,1]"), ErrorKind::InconsistentOrientation);
  EXPECT_EQ(kind_of("X[4,4,3,3] X[2,2,1,1]"), ErrorKind::NonPlanar);
}

TEST(Diagram, HopfLinkHasTwoComponents) {
  const Diagram d = parse_pd(kHopf);
  EXPECT_EQ(d.component_count(), 2);
  EXPECT_FALSE(d.is_knot());
}

TEST(Diagram, UnknotMarker) {
  const Diagram u = Diagram::unknot();
  EXPECT_EQ(u.crossing_count(), 0);
  EXPECT_TRUE(u.is_knot());
  EXPECT_EQ(resolve(u, Vertex{0, 0}).k, 1);
}

TEST(Diagram, LocalLabels) {
  const Diagram d = parse_pd(kTrefoil);
  const auto l = d.crossing(0).local_labels();
  EXPECT_EQ(l.i, 2);
  EXPECT_EQ(l.j, 4);
  EXPECT_EQ(l.k, 5);
  EXPECT_EQ(l.l, 1);
}

TEST(Diagram, TrefoilResolutionCircleCounts) {
  const Diagram d = parse_pd(kTrefoil);
  EXPECT_EQ(resolve(d, Vertex{0b000, 3}).k, 2);
  EXPECT_EQ(resolve(d, Vertex{0b111, 3}).k, 3);
  for (unsigned v : {0b001u, 0b010u, 0b100u}) EXPECT_EQ(resolve(d, Vertex{v, 3}).k, 1);
  EXPECT_THROW(resolve(d, Vertex{0, 2}), Error);
}

TEST(Diagram, CirclesNumberedBySmallestEdge) {
  const Diagram d = parse_pd(kTrefoil);
  for (unsigned v = 0; v < 8; ++v) {
    const Resolution r = resolve(d, Vertex{v, 3});
    for (int c = 0; c < r.k; ++c) {
      EXPECT_EQ(r.circle(r.min_edge[static_cast<std::size_t>(c)]), c);
      for (int e = 1; e < r.min_edge[static_cast<std::size_t>(c)]; ++e) EXPECT_NE(r.circle(e), c);
    }
    for (int c = 1; c < r.k; ++c) EXPECT_LT(r.min_edge[static_cast<std::size_t>(c - 1)], r.min_edge[static_cast<std::size_t>(c)]);
  }
}

TEST(Diagram, CrossingChangeFlipsOneSign) {
  for (const auto& e : testing_support::bundled()) {
    if (e.pd.empty()) continue;
    const Diagram d = parse_pd(e.pd);
    for (int c = 0; c < d.crossing_count(); ++c) {
      const Diagram f = change_crossing(d, c);
      EXPECT_EQ(f.crossing(c).sign, -d.crossing(c).sign) << e.name;
      EXPECT_EQ(writhe(f), writhe(d) - 2 * d.crossing(c).sign);
      EXPECT_EQ(change_crossing(f, c).to_pd(), d.to_pd());
      for (int x = 0; x < d.crossing_count(); ++x) {
        if (x == c) continue;
        EXPECT_EQ(f.crossing(x).edges, d.crossing(x).edges);
      }
    }
  }
}

TEST(Diagram, ZeroSmoothingIsOrientedForPositiveCrossings) {
  const Diagram d = parse_pd(kTrefoil);
  // every crossing positive: the 0-resolution is the Seifert resolution
  EXPECT_EQ(resolve(d, Vertex{0, 3}).k, 2);
  const Diagram m = mirror(d);
  EXPECT_EQ(resolve(m, Vertex{0b111, 3}).k, 2);
}

TEST(Diagram, MoveCrossingLastKeepsSigns) {
  const Diagram d = parse_pd(testing_support::entry("5_2").pd);
  for (int c = 0; c < d.crossing_count(); ++c) {
    const Diagram r = move_crossing_last(d, c);
    EXPECT_EQ(r.crossing(d.crossing_count() - 1).edges, d.crossing(c).edges);
    EXPECT_EQ(r.n_plus(), d.n_plus());
  }
}
