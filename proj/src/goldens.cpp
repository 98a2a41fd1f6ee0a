#include "jamplace/goldens.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "jamplace/io.hpp"
#include "jamplace/oracle.hpp"
#include "jamplace/solver.hpp"

namespace jamplace {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmtd(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string pt(Point2 p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.4f, %.4f)", p.x, p.y);
  return buf;
}

std::string ids(const std::vector<int>& v) { return "{" + join_ids(v, ',') + "}"; }

GoldenCheck timed(int criterion, std::string name, double budget_s, const std::function<bool(std::string&)>& body) {
  GoldenCheck c;
  c.criterion = criterion;
  c.name = std::move(name);
  const auto t0 = Clock::now();
  try {
    c.pass = body(c.detail);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail += std::string(" exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (c.seconds > budget_s) {
    c.pass = false;
    c.detail += " over time budget " + fmtd("%.0f s", budget_s);
  }
  return c;
}

struct Expect {
  Point2 z;
  double value;
  std::vector<int> active;
};

bool check_point(const PlacementResult& r, const Expect& e, std::string& d) {
  const double dz = distance(r.z, e.z);
  const bool ok = std::abs(r.value - e.value) <= 1e-3 && dz <= 0.01 && r.active_targets == e.active;
  d += "z=" + pt(r.z) + " value=" + fmtd("%.6f", r.value) + " active=" + ids(r.active_targets) + " branch=" +
       std::string(to_string(r.branch)) + " |dz|=" + fmtd("%.4f", dz);
  return ok;
}

// Breakpoints within +-tol of each expectation, one-to-one, and nothing extra.
bool check_breakpoints(const std::vector<double>& found, const std::vector<double>& want, double tol, std::string& d) {
  d += " breakpoints=[";
  for (std::size_t k = 0; k < found.size(); ++k) d += (k ? ", " : "") + fmtd("%.3f", found[k]);
  d += "]";
  if (found.size() != want.size()) return false;
  for (std::size_t k = 0; k < want.size(); ++k)
    if (std::abs(found[k] - want[k]) > tol) return false;
  return true;
}

// Active sets sampled at given powers.
bool check_regimes(const SweepResult& sw, const std::vector<std::pair<double, std::vector<int>>>& want,
                   std::string& d) {
  bool ok = true;
  for (const auto& [p, act] : want) {
    const auto it = std::min_element(sw.samples.begin(), sw.samples.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.pj_normalized - p) < std::abs(b.pj_normalized - p);
    });
    const auto& got = it->result.active_targets;
    d += " @" + fmtd("%.1f", it->pj_normalized) + ids(got);
    if (got != act) ok = false;
  }
  return ok;
}

SweepResult reference_sweep(const Scenario& s) { return sweep(s, linspace(0.5, 15.0, 146)); }

}  // namespace

GoldenCheck golden_scenario_a() {
  return timed(1, "scenario A at PJ=6", 1.0, [](std::string& d) {
    const Scenario s = bundled_scenario("A").with_power(6.0);
    const auto r = solve(s);
    bool ok = check_point(r, {{4.8713, 4.5898}, 0.9279, {1, 3}}, d);
    ok = ok && r.branch == Branch::Prop2Pair && r.subset == std::vector<int>{1, 3};
    return ok;
  });
}

GoldenCheck golden_scenario_a_breakpoints() {
  return timed(2, "scenario A regime breakpoints", 30.0, [](std::string& d) {
    const auto sw = reference_sweep(bundled_scenario("A"));
    bool ok = check_breakpoints(sw.breakpoints, {2.7, 5.8}, 0.1, d);
    ok = check_regimes(sw, {{1.0, {1, 2}}, {2.0, {1, 2}}, {4.0, {1, 2, 3}}, {10.0, {1, 3}}, {15.0, {1, 3}}}, d) && ok;
    return ok;
  });
}

GoldenCheck golden_scenario_b() {
  return timed(3, "scenario B at PJ=6, sweep, exclusion", 30.0, [](std::string& d) {
    const Scenario base = bundled_scenario("B");
    const Scenario s = base.with_power(6.0);
    const auto r = solve(s);
    bool ok = check_point(r, {{5.5115, 5.5717}, 0.7983, {1, 3, 4}}, d);
    const auto circles = exclusion_region(s, s.index_of(1), s.index_of(3), s.index_of(4));
    const bool outside = outside_all(circles, r.z);
    d += outside ? " exclusion ok" : " z inside an exclusion circle";
    ok = ok && outside;
    const auto sw = reference_sweep(base);
    ok = check_breakpoints(sw.breakpoints, {3.6}, 0.1, d) && ok;
    ok = check_regimes(sw, {{2.0, {1, 3}}, {10.0, {1, 3, 4}}}, d) && ok;
    return ok;
  });
}

GoldenCheck golden_scenario_c() {
  return timed(4, "scenario C at PJ=4 and sweep", 60.0, [](std::string& d) {
    const Scenario base = bundled_scenario("C");
    const auto r = solve(base.with_power(4.0));
    bool ok = check_point(r, {{5.2987, 4.0537}, 0.8392, {1, 3, 5}}, d);
    const auto sw = reference_sweep(base);
    ok = check_breakpoints(sw.breakpoints, {1.1, 1.7, 3.9, 8.5}, 0.1, d) && ok;
    ok = check_regimes(sw, {{0.6, {3, 4}}, {1.4, {2, 3, 4}}, {2.8, {2, 3, 5}}, {6.0, {1, 3, 5}}, {12.0, {1, 5}}}, d) &&
         ok;
    return ok;
  });
}

GoldenCheck golden_heatmap_argmax() {
  return timed(5, "heatmap argmax at h=0.005", 120.0, [](std::string& d) {
    const Scenario a = bundled_scenario("A");
    struct Case {
      const char* label;
      Scenario s;
      Point2 want;
    };
    // Second case: 10 W of jammer power against N0=50.
    const Case cases[] = {{"N0=2", a.with_power(10.0), {5.031, 4.567}},
                          {"N0=50", a.with_noise(50.0).with_power(2.0 * 10.0 / 50.0), {4.14, 3.394}}};
    bool ok = true;
    for (const auto& c : cases) {
      GridSpec g{default_search_box(c.s), 0.005, true};
      const auto r = grid_search(c.s, g);
      const double dz = distance(r.z, c.want);
      d += std::string(" ") + c.label + " argmax=" + pt(r.z) + " |dz|=" + fmtd("%.4f", dz);
      ok = ok && dz <= 0.02;
    }
    return ok;
  });
}

std::vector<GoldenCheck> golden_gated() {
  std::vector<GoldenCheck> out;
  const Scenario g = bundled_scenario("A_gated");

  out.push_back(timed(6, "gated: reference locations", 60.0, [&](std::string& d) {
    const std::pair<double, Point2> rows[] = {{320.0, {5.2802, 4.5314}},
                                              {339.0, {5.4610, 4.5046}},
                                              {420.0, {4.9232, 4.7215}},
                                              {470.0, {4.6000, 4.6286}},
                                              {747.0, {4.6092, 4.6286}}};
    bool ok = true;
    for (const auto& [p, want] : rows) {
      const auto r = solve_gated(g.with_power(p));
      const double dz = distance(r.z, want);
      d += " " + fmtd("%.0f", p) + ":" + pt(r.z) + (dz <= 0.01 ? " ok" : " off " + fmtd("%.3f", dz));
      ok = ok && dz <= 0.01;
    }
    return ok;
  }));

  out.push_back(timed(6, "gated: max-min just below 338.5", 60.0, [&](std::string& d) {
    const auto r = solve_gated(g.with_power(338.4));
    d += "value@338.4=" + format_fixed(r.value, 4);
    return std::abs(r.value - 17.23) <= 0.1;
  }));

  out.push_back(timed(6, "gated: divergence powers", 240.0, [&](std::string& d) {
    // First power at which each target's CRLB at the optimum is unbounded.
    auto diverged = [&](double p, std::size_t i) {
      const Scenario s = g.with_power(p);
      return is_unbounded(s.crlb(i, solve_gated(s).z));
    };
    const std::pair<int, double> want[] = {{2, 419.5}, {1, 468.6}, {3, 747.1}};
    bool ok = true;
    for (const auto& [id, target] : want) {
      const std::size_t i = g.index_of(id);
      double lo = 300.0;
      double hi = lo;
      bool found = false;
      for (double p = 300.0; p <= 900.0; p += 2.0) {
        if (diverged(p, i)) {
          hi = p;
          found = true;
          break;
        }
        lo = p;
      }
      if (!found) {
        d += " target " + std::to_string(id) + ": none below 900";
        ok = false;
        continue;
      }
      while (hi - lo > 0.02) {
        const double mid = 0.5 * (lo + hi);
        (diverged(mid, i) ? hi : lo) = mid;
      }
      const double p = 0.5 * (lo + hi);
      d += " target " + std::to_string(id) + ":" + fmtd("%.2f", p);
      ok = ok && std::abs(p - target) <= 1.0;
    }
    return ok;
  }));

  out.push_back(timed(6, "gated: equals ungated up to PJ=300", 60.0, [&](std::string& d) {
    double worst = 0.0;
    double at = 0.0;
    for (double p : linspace(0.5, 300.0, 600)) {
      const Scenario s = g.with_power(p);
      const double a = solve_gated(s).value;
      const double b = solve(s.without_gate()).value;
      const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
      if (!(rel <= worst)) {
        worst = rel;
        at = p;
      }
    }
    d += "max rel diff " + fmtd("%.3g", worst) + " at PJ=" + fmtd("%.2f", at);
    return worst <= 1e-6;
  }));
  return out;
}

std::vector<GoldenCheck> run_goldens() {
  std::vector<GoldenCheck> all{golden_scenario_a(), golden_scenario_a_breakpoints(), golden_scenario_b(),
                               golden_scenario_c(), golden_heatmap_argmax()};
  for (auto& c : golden_gated()) all.push_back(std::move(c));
  return all;
}

}  // namespace jamplace
