#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "jamplace/io.hpp"
#include "jamplace/oracle.hpp"
#include "jamplace/solver.hpp"
#include "random_scenarios.hpp"

using namespace jamplace;
using jamplace::testing::Rng;

namespace {

Scenario scen(const char* name, double pj) { return bundled_scenario(name).with_power(pj); }

Point2 field_argmax(const FieldMap& f) {
  const auto it = std::max_element(f.values.begin(), f.values.end());
  const std::size_t k = static_cast<std::size_t>(it - f.values.begin());
  return f.node(k % f.nx, k / f.nx);
}

}  // namespace

TEST(GridSearch, ScenarioAFine) {
  const Scenario s = scen("A", 6.0);
  const auto r = grid_search(s, {default_search_box(s), 0.005, true});
  EXPECT_NEAR(r.value, 0.9279, 2e-3);
  EXPECT_LE(distance(r.z, {4.8713, 4.5898}), 0.01);
}

TEST(GridSearch, SingleTargetHitsEpsilonCircle) {
  const Scenario s = jamplace::testing::make_scenario({{5, 5}}, 6.0, 1.0);
  const Box box = default_search_box(s);
  const auto r = grid_search(s, {box, 0.01, true});
  const double at_eps = s.crlb_at_distance(0, 1.0);
  EXPECT_LE(r.value, at_eps + 1e-12);
  EXPECT_NEAR(r.value, at_eps, lipschitz_bound(s, box) * 0.01);
  EXPECT_GE(distance(r.z, s.position(0)), 1.0 - kGeoTol);
}

TEST(GridSearch, EmptyFeasibleSetThrows) {
  const Scenario s = scen("A", 6.0);
  EXPECT_THROW(grid_search(s, {{1.6, 2.4, 4.6, 5.4}, 0.05, true}), NoFeasiblePoint);
}

TEST(Refine, CoarseArgmaxConverges) {
  const Scenario s = scen("A", 6.0);
  const auto g = grid_search(s, {default_search_box(s), 0.05, true});
  const auto r = refine(s, g.z, 3, 10.0, 0.05);
  EXPECT_LE(distance(r.z, {4.8713, 4.5898}), 1e-3);
}

TEST(Refine, OptimalStartStaysOptimal) {
  const Scenario s = scen("A", 6.0);
  const auto opt = solve(s);
  const auto r = refine(s, opt.z, 2, 10.0);
  EXPECT_GE(r.value, opt.value * (1 - 1e-12));
}

TEST(Refine, RandomStartReachesScenarioBOptimum) {
  const Scenario s = scen("B", 6.0);
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto r = refine(s, rng.point(0, 10), 4, 10.0, 1.0);
    EXPECT_GE(r.value, 0.7983 - 1e-3);
  }
}

TEST(FieldMap, ScenarioAArgmaxLowNoise) {
  const Scenario s = scen("A", 10.0);
  const auto f = field_map(s, {default_search_box(s), 0.005, true});
  EXPECT_LE(distance(field_argmax(f), {5.031, 4.567}), 0.02);
}

TEST(FieldMap, ScenarioAArgmaxHighNoise) {
  // 10 W of jammer power against N0 = 50.
  const Scenario s = bundled_scenario("A").with_noise(50.0).with_power(2.0 * 10.0 / 50.0);
  const auto f = field_map(s, {default_search_box(s), 0.005, true});
  EXPECT_LE(distance(field_argmax(f), {4.14, 3.394}), 0.02);
}

TEST(FieldMap, SingleTargetRadialAndDecreasing) {
  const Scenario s = jamplace::testing::make_scenario({{5, 5}}, 6.0, 1.0);
  const auto f = field_map(s, {{0, 10, 0, 10}, 0.25, false});
  for (std::size_t iy = 0; iy < f.ny; ++iy)
    for (std::size_t ix = 0; ix < f.nx; ++ix) {
      const Point2 p = f.node(ix, iy);
      const double d = distance(p, {5, 5});
      if (d == 0.0) continue;
      // mirror images share a value
      const double v = f.at(ix, iy);
      EXPECT_NEAR(v, f.at(f.nx - 1 - ix, iy), 1e-12 * v);
      EXPECT_NEAR(v, f.at(iy, ix), 1e-12 * v);
      if (ix + 1 < f.nx && p.x >= 5.0) {
        EXPECT_GT(v, f.at(ix + 1, iy));
      }
    }
}

TEST(FieldMap, MasksEpsilonDisks) {
  const Scenario s = scen("A", 6.0);
  const auto f = field_map(s, {default_search_box(s), 0.1, true});
  for (std::size_t iy = 0; iy < f.ny; ++iy)
    for (std::size_t ix = 0; ix < f.nx; ++ix)
      EXPECT_EQ(f.at(ix, iy) == -kUnbounded, !s.feasible(f.node(ix, iy)));
}

// ---- randomized properties ----

TEST(OracleProperty, RefineNeverWorse) {
  Rng rng(32);
  for (int c = 0; c < 1000; ++c) {
    const Scenario s = jamplace::testing::random_scenario(rng);
    Point2 z0 = rng.point(0, 10);
    if (!s.feasible(z0)) continue;
    const double v0 = min_crlb(s, z0).value;
    const auto r = refine(s, z0, 1, 4.0, 0.2);
    ASSERT_GE(r.value, v0) << "case " << c;
    ASSERT_TRUE(s.feasible(r.z));
  }
}

TEST(OracleProperty, FinerNestedGridNeverWorse) {
  Rng rng(33);
  for (int c = 0; c < 1000; ++c) {
    const Scenario s = jamplace::testing::random_scenario(rng);
    const Box box{0, 10, 0, 10};
    const double h = 0.5;
    const auto coarse = grid_search(s, {box, h, true});
    const auto fine = grid_search(s, {box, h / 2, true});
    ASSERT_GE(fine.value, coarse.value) << "case " << c;
  }
}

TEST(OracleProperty, FieldMaxEqualsGridValue) {
  Rng rng(34);
  for (int c = 0; c < 1000; ++c) {
    const Scenario s = jamplace::testing::random_scenario(rng);
    const GridSpec g{{0, 10, 0, 10}, 0.25, true};
    const auto f = field_map(s, g);
    ASSERT_EQ(*std::max_element(f.values.begin(), f.values.end()), grid_search(s, g).value) << "case " << c;
  }
}
