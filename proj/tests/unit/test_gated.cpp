#include <gtest/gtest.h>

#include "jamplace/io.hpp"
#include "jamplace/oracle.hpp"
#include "jamplace/solver.hpp"

using namespace jamplace;

namespace {

Scenario gated(double pj) { return bundled_scenario("A_gated").with_power(pj); }

}  // namespace

TEST(SolveGated, RequiresGate) { EXPECT_THROW(solve_gated(bundled_scenario("A")), std::invalid_argument); }

TEST(SolveGated, ReferenceRow320MatchesUngated) {
  const Scenario s = gated(320.0);
  const auto r = solve_gated(s);
  EXPECT_LE(distance(r.z, {5.2802, 4.5314}), 0.01) << "z=(" << r.z.x << ", " << r.z.y << ")";
  EXPECT_LE(distance(r.z, solve(s.without_gate()).z), 0.01);
}

TEST(SolveGated, ReferenceRow470) {
  const auto r = solve_gated(gated(470.0));
  EXPECT_LE(distance(r.z, {4.6000, 4.6286}), 0.01) << "z=(" << r.z.x << ", " << r.z.y << ")";
}

TEST(SolveGated, MaxMinJustBelow338p5) {
  const auto r = solve_gated(gated(338.4));
  EXPECT_NEAR(r.value, 17.23, 0.1);
}

TEST(SolveGated, DivergesPast747) {
  EXPECT_FALSE(is_unbounded(solve_gated(gated(746.1)).value));
  EXPECT_TRUE(is_unbounded(solve_gated(gated(748.1)).value));
}

TEST(SolveGated, MatchesUngatedAtLowPower) {
  // Every critical distance is far below epsilon here, so the gate is inert.
  for (double p : {0.5, 6.0, 15.0}) {
    const Scenario s = gated(p);
    const auto a = solve_gated(s);
    const auto b = solve(s.without_gate());
    EXPECT_TRUE(values_equal(a.value, b.value)) << p;
    EXPECT_LE(distance(a.z, b.z), 1e-6) << p;
  }
}

TEST(SolveGated, AgreesWithGridOracle) {
  for (double p : {250.0, 320.0, 420.0, 470.0, 600.0}) {
    const Scenario s = gated(p);
    const auto r = solve_gated(s);
    const auto g = grid_search(s, {default_search_box(s), 0.01, true});
    const auto ref = refine(s, g.z, 2, 10.0);
    // The level-set answer is exact; the grid can only fall short of it.
    EXPECT_GE(r.value, ref.value * (1 - 1e-9)) << p;
    EXPECT_LE(r.value - ref.value, 0.05 * ref.value) << p;
    EXPECT_TRUE(s.feasible(r.z));
  }
}
