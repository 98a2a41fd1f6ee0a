#include <gtest/gtest.h>

#include <cmath>

#include "jamplace/io.hpp"
#include "jamplace/oracle.hpp"
#include "jamplace/solver.hpp"
#include "random_scenarios.hpp"

using namespace jamplace;
using jamplace::testing::make_scenario;
using jamplace::testing::make_spec;

namespace {

Scenario scen(const char* name, double pj) { return bundled_scenario(name).with_power(pj); }

void expect_at(const PlacementResult& r, Point2 z, double value) {
  EXPECT_LE(distance(r.z, z), 0.01) << "z=(" << r.z.x << ", " << r.z.y << ")";
  EXPECT_NEAR(r.value, value, 1e-3);
}

std::vector<int> ids(std::initializer_list<int> l) { return l; }

// Symmetric about x = 5 in the corner-anchor square, so both targets share R.
Scenario symmetric_pair(double half_gap, double pj = 6.0, double eps = 1.0) {
  return make_scenario({{5 - half_gap, 5}, {5 + half_gap, 5}}, pj, eps);
}

}  // namespace

TEST(CheckProp1, SingleTargetFiresAtAngleZero) {
  const Scenario s = make_scenario({{3, 4}}, 6.0, 1.5);
  const auto hit = check_prop1(s);
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->first, 0u);
  EXPECT_NEAR(hit->second.z.x, 4.5, 1e-12);
  EXPECT_NEAR(hit->second.z.y, 4.0, 1e-12);
  EXPECT_EQ(hit->second.branch, Branch::Prop1Circle);
  const auto r = solve(s);
  EXPECT_NEAR(distance(r.z, {3, 4}), 1.5, 1e-12);
}

TEST(CheckProp1, SymmetricFarPairDoesNotFire) { EXPECT_FALSE(check_prop1(symmetric_pair(3.0)).has_value()); }

TEST(CheckProp1, ScenarioADoesNotFire) { EXPECT_FALSE(check_prop1(scen("A", 6.0)).has_value()); }

TEST(SolvePair, ScenarioAPair13) {
  const Scenario s = scen("A", 6.0);
  const auto r = solve_pair(s, s.index_of(1), s.index_of(3));
  expect_at(r, {4.8713, 4.5898}, 0.9279);
  EXPECT_EQ(r.branch, Branch::TwoTargetEqualizer);
}

TEST(SolvePair, SymmetricPairMidpoint) {
  const Scenario s = symmetric_pair(2.0);
  const auto r = solve_pair(s, 0, 1);
  EXPECT_NEAR(r.z.x, 5.0, 1e-9);
  EXPECT_NEAR(r.z.y, 5.0, 1e-9);
  EXPECT_NEAR(distance(r.z, s.position(0)), 2.0, 1e-9);
}

TEST(SolvePair, CloseTargetsUseBothEpsilonCircles) {
  const Scenario s = symmetric_pair(0.75);
  const auto r = solve_pair(s, 0, 1);
  EXPECT_NEAR(distance(r.z, s.position(0)), 1.0, 1e-9);
  EXPECT_NEAR(distance(r.z, s.position(1)), 1.0, 1e-9);
  ASSERT_EQ(r.alternates.size(), 1u);
  EXPECT_NEAR(distance(r.alternates[0], s.position(0)), 1.0, 1e-9);
  EXPECT_NEAR(distance(r.alternates[0], s.position(1)), 1.0, 1e-9);
  EXPECT_GT(r.z.y, r.alternates[0].y);  // canonical order: larger y first
  EXPECT_TRUE(s.feasible(r.z));
}

TEST(SolvePairUnconstrained, SymmetricMidpoint) {
  const auto r = solve_pair_unconstrained(symmetric_pair(0.4), 0, 1);
  EXPECT_NEAR(r.z.x, 5.0, 1e-9);
  EXPECT_NEAR(r.z.y, 5.0, 1e-9);
}

TEST(SolvePairUnconstrained, ScenarioAPair12MatchesSegmentScan) {
  const Scenario s = scen("A", 6.0);
  const auto r = solve_pair_unconstrained(s, 0, 1);
  EXPECT_TRUE(values_equal(s.crlb(0, r.z), s.crlb(1, r.z)));
  const Point2 a = s.position(0), b = s.position(1);
  // the min of two curves has a kink at the optimum, so scan coarse then zoom in
  auto at = [&](double t) {
    const Point2 z = a + t * (b - a);
    return std::min(s.crlb(0, z), s.crlb(1, z));
  };
  double best = 0.0, tbest = 0.0;
  for (int k = 1; k < 20000; ++k)
    if (at(k / 20000.0) > best) best = at(k / 20000.0), tbest = k / 20000.0;
  const double lo = tbest - 1.0 / 20000;
  for (int k = 0; k <= 200000; ++k) best = std::max(best, at(lo + k * (2.0 / 20000) / 200000));
  EXPECT_NEAR(r.value, best, 1e-6 * best);
  EXPECT_GE(r.value, best);
}

TEST(SolvePairUnconstrained, WeakerTargetPullsJammerAway) {
  ScenarioSpec spec = make_spec({{3, 5}, {7, 5}}, 6.0);
  spec.channel = ExplicitChannel{{{1, 1, 1, 1}, {100, 100, 100, 100}}};
  const Scenario s(spec);
  ASSERT_GT(s.profile(0).r, 50 * s.profile(1).r);
  const auto r = solve_pair_unconstrained(s, 0, 1);
  EXPECT_LT(distance(r.z, s.position(1)), distance(r.z, s.position(0)));
}

TEST(CheckProp2, ScenarioAFiresWithPair13) {
  const Scenario s = scen("A", 6.0);
  const auto pairs = solve_all_pairs(s);
  const auto r = check_prop2(s, pairs);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->subset, ids({1, 3}));
  EXPECT_EQ(r->branch, Branch::Prop2Pair);
}

TEST(CheckProp2, TwoTargetsFireTrivially) {
  const Scenario s = make_scenario({{2, 2}, {7, 6}}, 6.0);
  EXPECT_TRUE(check_prop2(s, solve_all_pairs(s)).has_value());
}

TEST(CheckProp2, ScenarioBDoesNotFire) {
  const Scenario s = scen("B", 6.0);
  EXPECT_FALSE(check_prop2(s, solve_all_pairs(s)).has_value());
}

TEST(SolveTriple, ScenarioBInterior) {
  const Scenario s = scen("B", 6.0);
  const auto r = solve_triple_unconstrained(s, s.index_of(1), s.index_of(3), s.index_of(4));
  EXPECT_EQ(r.branch, Branch::TriangleInterior);
  expect_at(r, {5.5115, 5.5717}, 0.7983);
}

TEST(SolveTriple, ScenarioCInterior) {
  const Scenario s = scen("C", 4.0);
  const auto r = solve_triple_unconstrained(s, s.index_of(1), s.index_of(3), s.index_of(5));
  EXPECT_EQ(r.branch, Branch::TriangleInterior);
  expect_at(r, {5.2987, 4.0537}, 0.8392);
}

TEST(SolveTriple, ScenarioAHighPowerOnBoundaryViaPair13) {
  const Scenario s = scen("A", 10.0);
  const auto r = solve_triple_unconstrained(s, 0, 1, 2);
  EXPECT_EQ(r.branch, Branch::TriangleBoundary);
  EXPECT_EQ(r.subset, ids({1, 3}));
}

TEST(SolveUnconstrained, ScenarioBTriple134) {
  const auto r = solve_unconstrained(scen("B", 6.0));
  EXPECT_EQ(r.active_targets, ids({1, 3, 4}));
  EXPECT_NEAR(r.value, 0.7983, 1e-3);
}

TEST(SolveUnconstrained, ScenarioCTriple135) {
  const auto r = solve_unconstrained(scen("C", 4.0));
  EXPECT_EQ(r.active_targets, ids({1, 3, 5}));
}

TEST(SolveUnconstrained, ScenarioCLowPowerTriple234OnPair34) {
  const Scenario s = scen("C", 1.0);
  const auto r = solve_unconstrained(s);
  EXPECT_EQ(r.active_targets, ids({3, 4}));
  const auto t = solve_triple_unconstrained(s, s.index_of(2), s.index_of(3), s.index_of(4));
  EXPECT_EQ(t.branch, Branch::TriangleBoundary);
  EXPECT_EQ(t.subset, ids({3, 4}));
  EXPECT_TRUE(values_equal(t.value, r.value));
  // no triple does better
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      for (std::size_t k = j + 1; k < 5; ++k)
        EXPECT_GE(solve_triple_unconstrained(s, i, j, k).value, r.value * (1 - kValueTol));
}

TEST(SolveUnconstrained, SingleTargetThrows) {
  EXPECT_THROW(solve_unconstrained(make_scenario({{5, 5}}, 3.0)), SolverError);
}

TEST(ExclusionRegion, ScenarioB) {
  const Scenario s = scen("B", 6.0);
  const auto r = solve(s);
  EXPECT_TRUE(outside_all(exclusion_region(s, s.index_of(1), s.index_of(3), s.index_of(4)), r.z));
}

TEST(ExclusionRegion, ScenarioC) {
  const Scenario s = scen("C", 4.0);
  const auto r = solve(s);
  EXPECT_TRUE(outside_all(exclusion_region(s, s.index_of(1), s.index_of(3), s.index_of(5)), r.z));
}

TEST(ExclusionRegion, EquilateralTriple) {
  // Rotationally symmetric about the centroid, with anchors to match.
  const Point2 c{0, 0};
  ScenarioSpec spec;
  spec.name = "equilateral";
  for (int k = 0; k < 3; ++k) {
    const double a = 2 * jamplace::testing::kPi * k / 3 + 0.3;
    spec.anchors.push_back({k + 1, {10 * std::cos(a), 10 * std::sin(a)}});
  }
  for (int k = 0; k < 3; ++k) {
    const double a = 2 * jamplace::testing::kPi * k / 3 + 0.3;
    spec.targets.push_back({k + 1, {3 * std::cos(a), 3 * std::sin(a)}, 1.0, {1, 2, 3}, {}});
  }
  spec.channel = FreeSpaceChannel{};
  spec.jamming = {6.0, 2.0, 2.0, 1.0};
  const Scenario s(spec);
  const auto circles = exclusion_region(s, 0, 1, 2);
  EXPECT_NEAR(circles[0].radius, circles[1].radius, 1e-6 * circles[0].radius);
  EXPECT_NEAR(circles[1].radius, circles[2].radius, 1e-6 * circles[0].radius);
  const auto r = solve(s);
  EXPECT_LE(distance(r.z, c), 1e-6);
  EXPECT_TRUE(outside_all(circles, r.z));
}

TEST(Solve, ScenarioA) {
  const auto r = solve(scen("A", 6.0));
  expect_at(r, {4.8713, 4.5898}, 0.9279);
  EXPECT_EQ(r.branch, Branch::Prop2Pair);
  EXPECT_TRUE(r.feasible);
}

TEST(Solve, ScenarioB) {
  const auto r = solve(scen("B", 6.0));
  expect_at(r, {5.5115, 5.5717}, 0.7983);
  EXPECT_TRUE(r.feasible);
}

TEST(Solve, HugeEpsilonFallsBackToGrid) {
  ScenarioSpec spec = scen("A", 6.0).spec();
  spec.jamming.epsilon = 6.0;
  const Scenario s(spec);
  const auto r = solve(s);
  EXPECT_EQ(r.branch, Branch::GridFallback);
  EXPECT_TRUE(s.feasible(r.z));
  const Box box = default_search_box(s);
  const auto g = grid_search(s, {box, 0.01, true});
  const auto ref = refine(s, g.z, 2, 10.0);
  EXPECT_NEAR(r.value, ref.value, std::max(1e-4, lipschitz_bound(s, box) * 0.01));
  EXPECT_GE(r.value, ref.value - 1e-9);
}

TEST(Sweep, ScenarioABreakpoints) {
  const auto sw = sweep(bundled_scenario("A"), linspace(0.5, 15, 146));
  ASSERT_EQ(sw.breakpoints.size(), 2u);
  EXPECT_NEAR(sw.breakpoints[0], 2.7, 0.1);
  EXPECT_NEAR(sw.breakpoints[1], 5.8, 0.1);
}

TEST(Sweep, ScenarioBBreakpoint) {
  const auto sw = sweep(bundled_scenario("B"), linspace(0.5, 15, 146));
  ASSERT_EQ(sw.breakpoints.size(), 1u);
  EXPECT_NEAR(sw.breakpoints[0], 3.6, 0.1);
}

TEST(Sweep, ScenarioCBreakpoints) {
  const auto sw = sweep(bundled_scenario("C"), linspace(0.5, 15, 146));
  ASSERT_EQ(sw.breakpoints.size(), 4u);
  const double want[] = {1.1, 1.7, 3.9, 8.5};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(sw.breakpoints[k], want[k], 0.1);
}

TEST(Sweep, RejectsUnsortedPowers) {
  const std::vector<double> p{1.0, 3.0, 2.0};
  EXPECT_THROW(sweep(bundled_scenario("A"), p), std::invalid_argument);
}

TEST(BranchNames, RoundTrip) {
  for (Branch b : {Branch::Prop1Circle, Branch::Prop2Pair, Branch::TwoTargetMidpoint, Branch::TwoTargetEpsilonEdge,
                   Branch::TwoTargetEqualizer, Branch::TriangleBoundary, Branch::TriangleInterior, Branch::TripleEnum,
                   Branch::GridFallback})
    EXPECT_EQ(branch_from_string(to_string(b)), b);
  EXPECT_FALSE(branch_from_string("nope").has_value());
}
