#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "jamplace/geometry.hpp"
#include "random_scenarios.hpp"

using namespace jamplace;
using jamplace::testing::Rng;

namespace {

double signed_area(const std::vector<Point2>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

bool same_set(std::vector<Point2> a, std::vector<Point2> b) {
  sort_canonical(a);
  sort_canonical(b);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (distance(a[i], b[i]) > kGeoTol) return false;
  return true;
}

}  // namespace

TEST(Distance, PythagoreanTriple) { EXPECT_DOUBLE_EQ(distance({0, 0}, {3, 4}), 5.0); }
TEST(Distance, Identity) { EXPECT_EQ(distance({2, 5}, {2, 5}), 0.0); }
TEST(Distance, HandComputed) { EXPECT_NEAR(distance({2, 5}, {9, 4}), std::sqrt(50.0), 1e-12); }
TEST(Distance, Symmetric) { EXPECT_EQ(distance({1.3, -2}, {7, 0.1}), distance({7, 0.1}, {1.3, -2})); }

TEST(ConvexHull, InteriorPointDropped) {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}};
  const auto h = convex_hull(pts);
  EXPECT_TRUE(same_set(h.vertices(), {{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_GT(signed_area(h.vertices()), 0.0);
}

TEST(ConvexHull, ScenarioATargetsCounterClockwise) {
  const std::vector<Point2> pts{{2, 5}, {6, 2}, {9, 4}};
  const auto h = convex_hull(pts);
  EXPECT_TRUE(same_set(h.vertices(), pts));
  EXPECT_GT(signed_area(h.vertices()), 0.0);
}

TEST(ConvexHull, CollinearGivesSegment) {
  const std::vector<Point2> pts{{0, 0}, {1, 1}, {2, 2}};
  const auto h = convex_hull(pts);
  EXPECT_TRUE(same_set(h.vertices(), {{0, 0}, {2, 2}}));
}

TEST(ConvexHull, SinglePointAndEmpty) {
  const std::vector<Point2> one{{3, 3}, {3, 3}};
  EXPECT_EQ(convex_hull(one).size(), 1u);
  EXPECT_THROW(convex_hull(std::span<const Point2>{}), std::invalid_argument);
}

TEST(ProjectOntoHull, FootOnEdge) {
  const std::vector<Point2> tri{{0, 0}, {10, 0}, {5, 5}};
  const Point2 p = project_onto_hull({5, -1}, convex_hull(tri));
  EXPECT_NEAR(p.x, 5.0, 1e-12);
  EXPECT_NEAR(p.y, 0.0, 1e-12);
}

TEST(ProjectOntoHull, InsideIsIdentity) {
  const std::vector<Point2> tri{{0, 0}, {10, 0}, {5, 5}};
  const Point2 z{5, 2};
  EXPECT_EQ(project_onto_hull(z, convex_hull(tri)), z);
}

TEST(ProjectOntoHull, NearestVertex) {
  const std::vector<Point2> sq{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  const Point2 p = project_onto_hull({12, 12}, convex_hull(sq));
  EXPECT_NEAR(p.x, 10.0, 1e-12);
  EXPECT_NEAR(p.y, 10.0, 1e-12);
}

TEST(LocateInTriangle, Examples) {
  const Point2 a{0, 0}, b{3, 0}, c{0, 3};
  EXPECT_EQ(locate_in_triangle({1, 1}, a, b, c).region, TriangleRegion::Interior);
  const auto e = locate_in_triangle({1.5, 0}, a, b, c);
  EXPECT_EQ(e.region, TriangleRegion::Boundary);
  EXPECT_EQ(e.edge, 0);
  EXPECT_EQ(locate_in_triangle({5, 5}, a, b, c).region, TriangleRegion::Exterior);
  const auto v = locate_in_triangle({3, 0}, a, b, c);
  EXPECT_EQ(v.region, TriangleRegion::Boundary);
  EXPECT_EQ(v.vertex, 1);
}

TEST(CircleIntersection, ExternalTangency) {
  const auto p = circle_circle_intersection({0, 0}, 1, {2, 0}, 1);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p[0].x, 1.0, 1e-12);
  EXPECT_NEAR(p[0].y, 0.0, 1e-12);
}

TEST(CircleIntersection, TwoPointsOrderedByYDescending) {
  const auto p = circle_circle_intersection({0, 0}, 1, {1, 0}, 1);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0].x, 0.5, 1e-12);
  EXPECT_NEAR(p[0].y, std::sqrt(3.0) / 2, 1e-12);
  EXPECT_NEAR(p[1].x, 0.5, 1e-12);
  EXPECT_NEAR(p[1].y, -std::sqrt(3.0) / 2, 1e-12);
}

TEST(CircleIntersection, Disjoint) { EXPECT_TRUE(circle_circle_intersection({0, 0}, 1, {5, 0}, 1).empty()); }

TEST(CircleIntersection, ConcentricThrows) {
  EXPECT_THROW(circle_circle_intersection({1, 1}, 1, {1, 1}, 2), std::invalid_argument);
}

// ---- randomized properties ----

TEST(GeometryProperty, HullContainsEveryInput) {
  Rng rng(11);
  for (int c = 0; c < 2000; ++c) {
    std::vector<Point2> pts(rng.integer(1, 12));
    for (auto& p : pts) p = rng.point(-5, 5);
    const auto h = convex_hull(pts);
    for (const auto& p : pts) ASSERT_TRUE(h.contains(p)) << "case " << c;
    if (h.size() >= 3) {
      ASSERT_GT(signed_area(h.vertices()), 0.0);
    }
  }
}

TEST(GeometryProperty, ProjectionInequality) {
  Rng rng(12);
  int checked = 0;
  while (checked < 2000) {
    std::vector<Point2> pts(rng.integer(3, 8));
    for (auto& p : pts) p = rng.point(-3, 3);
    const auto h = convex_hull(pts);
    const Point2 z1 = rng.point(-8, 8);
    if (h.contains(z1)) continue;
    const Point2 z2 = project_onto_hull(z1, h);
    ASSERT_TRUE(h.contains(z2, 1e-9));
    // points of the hull: random convex combinations of its vertices
    for (int s = 0; s < 20; ++s) {
      std::vector<double> w(h.size());
      double sum = 0.0;
      for (auto& x : w) sum += (x = rng.uniform(0, 1));
      Point2 z3{0, 0};
      for (std::size_t k = 0; k < h.size(); ++k) z3 = z3 + (w[k] / sum) * h.vertices()[k];
      ASSERT_GT(distance(z1, z3), distance(z2, z3)) << "case " << checked;
    }
    ++checked;
  }
}

TEST(GeometryProperty, TriangleDistanceLemma) {
  // P1 inside ABC, P2 in ABC no farther from B or C than P1 => P2 no closer to A.
  Rng rng(13);
  int checked = 0;
  while (checked < 2000) {
    const Point2 a = rng.point(0, 10), b = rng.point(0, 10), c = rng.point(0, 10);
    if (std::abs(cross(b - a, c - a)) < 1.0) continue;
    auto sample = [&] {
      double u = rng.uniform(0, 1), v = rng.uniform(0, 1);
      if (u + v > 1) u = 1 - u, v = 1 - v;
      return a + u * (b - a) + v * (c - a);
    };
    const Point2 p1 = sample();
    if (locate_in_triangle(p1, a, b, c).region != TriangleRegion::Interior) continue;
    Point2 p2;
    bool found = false;
    for (int tries = 0; tries < 200 && !found; ++tries) {
      p2 = sample();
      found = distance(b, p2) <= distance(b, p1) && distance(c, p2) <= distance(c, p1);
    }
    if (!found) continue;
    ASSERT_GE(distance(a, p2), distance(a, p1) - 1e-12) << "case " << checked;
    ++checked;
  }
}

TEST(GeometryProperty, CircleIntersectionsLieOnBothCircles) {
  Rng rng(14);
  int nonempty = 0;
  for (int c = 0; c < 3000; ++c) {
    const Point2 c1 = rng.point(-5, 5), c2 = rng.point(-5, 5);
    const double r1 = rng.uniform(0.1, 6), r2 = rng.uniform(0.1, 6);
    const auto pts = circle_circle_intersection(c1, r1, c2, r2);
    nonempty += !pts.empty();
    for (const auto& p : pts) {
      ASSERT_NEAR(distance(p, c1), r1, kGeoTol);
      ASSERT_NEAR(distance(p, c2), r2, kGeoTol);
    }
    if (pts.size() == 2) {
      ASSERT_TRUE(pts[0].y > pts[1].y || (pts[0].y == pts[1].y && pts[0].x > pts[1].x));
    }
  }
  EXPECT_GT(nonempty, 1000);
}
