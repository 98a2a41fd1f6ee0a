#include "jamplace/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jamplace/oracle.hpp"
#include "levelset.hpp"

namespace jamplace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kCircleSamples = 3600;

struct BranchName {
  Branch branch;
  std::string_view name;
};

constexpr BranchName kBranchNames[] = {
    {Branch::Prop1Circle, "Prop1Circle"},
    {Branch::Prop2Pair, "Prop2Pair"},
    {Branch::TwoTargetMidpoint, "TwoTargetMidpoint"},
    {Branch::TwoTargetEpsilonEdge, "TwoTargetEpsilonEdge"},
    {Branch::TwoTargetEqualizer, "TwoTargetEqualizer"},
    {Branch::TriangleBoundary, "TriangleBoundary"},
    {Branch::TriangleInterior, "TriangleInterior"},
    {Branch::TripleEnum, "TripleEnum"},
    {Branch::GridFallback, "GridFallback"},
};

// Value and active set over every target, as the public contract requires.
PlacementResult finalize(const Scenario& s, Point2 z, Branch branch, std::vector<int> subset = {}) {
  PlacementResult r;
  r.z = z;
  const MinCrlb m = min_crlb(s, z);
  r.value = m.value;
  r.active_targets = m.argmin_ids;
  r.branch = branch;
  r.feasible = s.feasible(z);
  r.subset = std::move(subset);
  return r;
}

// Value and active set restricted to a subset of targets.
PlacementResult restricted(const Scenario& s, Point2 z, Branch branch, std::initializer_list<std::size_t> idx) {
  PlacementResult r;
  r.z = z;
  r.branch = branch;
  r.value = kInf;
  for (std::size_t i : idx) r.value = std::min(r.value, s.crlb(i, z));
  for (std::size_t i : idx) {
    r.subset.push_back(s.target_id(i));
    if (values_equal(s.crlb(i, z), r.value)) r.active_targets.push_back(s.target_id(i));
  }
  std::sort(r.active_targets.begin(), r.active_targets.end());
  std::sort(r.subset.begin(), r.subset.end());
  r.feasible = s.feasible(z);
  return r;
}

void require_distinct(const Scenario& s, std::size_t i, std::size_t j) {
  if (i >= s.target_count() || j >= s.target_count()) throw std::out_of_range("target index out of range");
  if (i == j || distance(s.position(i), s.position(j)) <= kGeoTol)
    throw SolverError("targets " + std::to_string(s.target_id(i)) + " and " + std::to_string(s.target_id(j)) +
                      " coincide");
}

// Root of crlb_i(d) - crlb_j(D - d) on [a, b]; the difference is positive at a
// and negative at b.
double equalize_on_segment(const Scenario& s, std::size_t i, std::size_t j, double a, double b) {
  const double span = distance(s.position(i), s.position(j));
  double lo = a;
  double hi = b;
  for (int it = 0; it < 200 && hi - lo >= 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (s.crlb_at_distance(i, mid) - s.crlb_at_distance(j, span - mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Max-min point of two targets restricted to distances [a, b] from target i on
// the connecting segment. Handles jumps in the gated CRLB.
Point2 crossing_on_segment(const Scenario& s, std::size_t i, std::size_t j, double a, double b) {
  const Point2 xi = s.position(i);
  const double span = distance(xi, s.position(j));
  const Point2 u = (1.0 / span) * (s.position(j) - xi);

  auto interval = [&](double level) {
    const double ri = s.level_radius(i, level);
    const double rj = s.level_radius(j, level);
    return std::pair{std::max(a, span - rj), std::min(b, ri)};
  };
  auto probe = [&](double level) -> std::optional<Point2> {
    const auto [lo, hi] = interval(level);
    const double m = 1e-10;
    if (lo + m > hi - m) return std::nullopt;
    return xi + (0.5 * (lo + hi)) * u;
  };

  const double mid = 0.5 * (a + b);
  const double lo = std::min(s.crlb_at_distance(i, mid), s.crlb_at_distance(j, span - mid));
  double hi = std::min(s.crlb_at_distance(i, a), s.crlb_at_distance(j, span - b));
  if (is_unbounded(hi)) {
    if (auto p = probe(kInf)) return *p;
    hi = std::max(s.distance_profile(i).finite_sup(a), s.distance_profile(j).finite_sup(span - b));
  }
  if (auto lp = detail::maximize_level(probe, lo, hi)) return lp->z;
  return xi + mid * u;
}

std::optional<Point2> best_circle_point(const Scenario& s, std::size_t l) {
  const double eps = s.jamming().epsilon;
  const Point2 c = s.position(l);
  auto at = [&](double theta) { return Point2{c.x + eps * std::cos(theta), c.y + eps * std::sin(theta)}; };
  auto score = [&](double theta) {
    const Point2 p = at(theta);
    return s.feasible(p) ? min_crlb(s, p).value : -kInf;
  };

  std::vector<double> angles;
  angles.reserve(kCircleSamples + 2 * s.target_count());
  for (int k = 0; k < kCircleSamples; ++k) angles.push_back(2.0 * std::numbers::pi * k / kCircleSamples);
  // Ends of the arcs blocked by nearby targets are always feasible.
  for (std::size_t i = 0; i < s.target_count(); ++i) {
    if (i == l) continue;
    const double d = distance(c, s.position(i));
    if (d >= 2.0 * eps) continue;
    const double mid = std::atan2(s.position(i).y - c.y, s.position(i).x - c.x);
    const double half = std::acos(d / (2.0 * eps));
    angles.push_back(mid - half);
    angles.push_back(mid + half);
  }

  double best_theta = 0.0;
  double best = -kInf;
  for (double theta : angles) {
    const double v = score(theta);
    if (v > best && !(best > -kInf && values_equal(v, best))) {
      best = v;
      best_theta = theta;
    }
  }
  if (best == -kInf) return std::nullopt;

  // Golden-section polish within one sample spacing; kept only if it helps.
  const double step = 2.0 * std::numbers::pi / kCircleSamples;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_theta - step;
  double hi = best_theta + step;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = score(x1);
  double f2 = score(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = score(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = score(x2);
    }
  }
  const double theta = 0.5 * (lo + hi);
  const double polished = score(theta);
  if (polished > best && !values_equal(polished, best)) best_theta = theta;
  return at(best_theta);
}

void add_alternate(PlacementResult& r, Point2 z) {
  if (distance(r.z, z) <= kGeoTol) return;
  for (const Point2 a : r.alternates)
    if (distance(a, z) <= kGeoTol) return;
  r.alternates.push_back(z);
}

PlacementResult fallback(const Scenario& s, const SolveOptions& opt) {
  PlacementResult grid;
  bool have_grid = false;
  try {
    grid = grid_search(s, GridSpec{default_search_box(s), opt.grid_resolution, true});
    grid = refine(s, grid.z, opt.refine_rounds, opt.refine_factor, opt.grid_resolution);
    have_grid = true;
  } catch (const NoFeasiblePoint&) {
  }

  PlacementResult exact = solve_by_level_sets(s);
  if (!have_grid || exact.value >= grid.value || values_equal(exact.value, grid.value)) {
    exact.branch = Branch::GridFallback;
    return exact;
  }
  grid.branch = Branch::GridFallback;
  return grid;
}

}  // namespace

std::string_view to_string(Branch b) {
  for (const auto& e : kBranchNames)
    if (e.branch == b) return e.name;
  return "Unknown";
}

std::optional<Branch> branch_from_string(std::string_view s) {
  for (const auto& e : kBranchNames)
    if (e.name == s) return e.branch;
  return std::nullopt;
}

std::optional<std::pair<std::size_t, PlacementResult>> check_prop1(const Scenario& s) {
  const double eps = s.jamming().epsilon;
  for (std::size_t l = 0; l < s.target_count(); ++l) {
    const double own = s.crlb_at_distance(l, eps);
    double others = kInf;
    for (std::size_t i = 0; i < s.target_count(); ++i) {
      if (i == l) continue;
      others = std::min(others, s.crlb_at_distance(i, distance(s.position(i), s.position(l)) + eps));
    }
    if (!(own <= others)) continue;
    if (auto z = best_circle_point(s, l)) return std::pair{l, finalize(s, *z, Branch::Prop1Circle, {s.target_id(l)})};
  }
  return std::nullopt;
}

PlacementResult solve_pair(const Scenario& s, std::size_t i, std::size_t j) {
  require_distinct(s, i, j);
  const Point2 xi = s.position(i);
  const Point2 xj = s.position(j);
  const double span = distance(xi, xj);
  const double eps = s.jamming().epsilon;

  if (span < 2.0 * eps) {
    const auto pts = circle_circle_intersection(xi, eps, xj, eps);
    PlacementResult r = restricted(s, pts.front(), Branch::TwoTargetMidpoint, {i, j});
    for (std::size_t p = 1; p < pts.size(); ++p) add_alternate(r, pts[p]);
    return r;
  }

  const Point2 u = (1.0 / span) * (xj - xi);
  if (s.crlb_at_distance(i, eps) <= s.crlb_at_distance(j, span - eps))
    return restricted(s, xi + eps * u, Branch::TwoTargetEpsilonEdge, {i, j});
  if (s.crlb_at_distance(j, eps) <= s.crlb_at_distance(i, span - eps))
    return restricted(s, xj - eps * u, Branch::TwoTargetEpsilonEdge, {i, j});

  const Point2 z = s.gated() ? crossing_on_segment(s, i, j, eps, span - eps)
                             : xi + equalize_on_segment(s, i, j, eps, span - eps) * u;
  return restricted(s, z, Branch::TwoTargetEqualizer, {i, j});
}

PlacementResult solve_pair_unconstrained(const Scenario& s, std::size_t i, std::size_t j) {
  require_distinct(s, i, j);
  const Point2 xi = s.position(i);
  const Point2 xj = s.position(j);
  const double span = distance(xi, xj);
  const Point2 u = (1.0 / span) * (xj - xi);

  Point2 z;
  if (s.jamming().pj_watts == 0.0) {
    z = xi + 0.5 * span * u;
  } else if (s.gated()) {
    z = crossing_on_segment(s, i, j, 1e-9 * span, span * (1.0 - 1e-9));
  } else {
    z = xi + equalize_on_segment(s, i, j, 0.0, span) * u;
  }
  PlacementResult r = restricted(s, z, Branch::TwoTargetEqualizer, {i, j});
  return r;
}

std::vector<PairSolution> solve_all_pairs(const Scenario& s) {
  std::vector<PairSolution> out;
  for (std::size_t i = 0; i < s.target_count(); ++i)
    for (std::size_t j = i + 1; j < s.target_count(); ++j) out.push_back({i, j, solve_pair(s, i, j)});
  return out;
}

std::optional<PlacementResult> check_prop2(const Scenario& s, std::span<const PairSolution> pairs) {
  if (pairs.empty()) return std::nullopt;
  const PairSolution* best = &pairs.front();
  for (const auto& p : pairs)
    if (p.result.value < best->result.value) best = &p;

  const Point2 z = best->result.z;
  const double v = best->result.value;
  for (std::size_t m = 0; m < s.target_count(); ++m) {
    if (m == best->i || m == best->j) continue;
    if (distance(z, s.position(m)) < s.jamming().epsilon - kGeoTol) return std::nullopt;
    const double cm = s.crlb(m, z);
    if (cm < v && !values_equal(cm, v)) return std::nullopt;
  }

  PlacementResult r = finalize(s, z, Branch::Prop2Pair, best->result.subset);
  for (const Point2 a : best->result.alternates) add_alternate(r, a);
  for (const auto& p : pairs)
    if (&p != best && values_equal(p.result.value, v)) add_alternate(r, p.result.z);
  return r;
}

PlacementResult solve_triple_unconstrained(const Scenario& s, std::size_t i, std::size_t j, std::size_t k) {
  require_distinct(s, i, j);
  require_distinct(s, i, k);
  require_distinct(s, j, k);
  std::size_t idx[3] = {i, j, k};
  std::sort(idx, idx + 3);

  const std::pair<std::size_t, std::size_t> combos[3] = {{idx[0], idx[1]}, {idx[0], idx[2]}, {idx[1], idx[2]}};
  const std::size_t third[3] = {idx[2], idx[1], idx[0]};
  PlacementResult pair[3];
  int w = 0;
  for (int c = 0; c < 3; ++c) {
    pair[c] = solve_pair_unconstrained(s, combos[c].first, combos[c].second);
    if (pair[c].value < pair[w].value) w = c;
  }

  const std::size_t l3 = third[w];
  const Point2 zp = pair[w].z;
  const double v = pair[w].value;

  const Point2 a = s.position(idx[0]);
  const Point2 b = s.position(idx[1]);
  const Point2 c = s.position(idx[2]);
  const double scale = std::max({distance(a, b), distance(b, c), distance(c, a), 1.0});
  const bool collinear = std::abs(cross(b - a, c - a)) <= kGeoTol * scale;

  if (collinear || distance(s.position(l3), zp) <= s.level_radius(l3, v)) {
    PlacementResult r = restricted(s, zp, Branch::TriangleBoundary, {idx[0], idx[1], idx[2]});
    r.subset = pair[w].subset;
    for (int c2 = 0; c2 < 3; ++c2)
      if (c2 != w && values_equal(pair[c2].value, v)) add_alternate(r, pair[c2].z);
    return r;
  }

  auto probe = [&](double level) {
    const detail::Disk disks[3] = {{s.position(idx[0]), s.level_radius(idx[0], level)},
                                   {s.position(idx[1]), s.level_radius(idx[1], level)},
                                   {s.position(idx[2]), s.level_radius(idx[2], level)}};
    return detail::common_point(disks, {});
  };
  const auto lp = detail::maximize_level(probe, s.crlb(l3, zp), v);
  if (!lp) throw SolverError("three-target equalizer search failed");
  return restricted(s, lp->z, Branch::TriangleInterior, {idx[0], idx[1], idx[2]});
}

PlacementResult solve_unconstrained(const Scenario& s) {
  const std::size_t n = s.target_count();
  if (n == 1) throw SolverError("a single target has no finite unconstrained optimum");
  if (n == 2) return solve_pair_unconstrained(s, 0, 1);

  std::optional<PlacementResult> best;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        PlacementResult r = solve_triple_unconstrained(s, i, j, k);
        if (!best || r.value < best->value) best = std::move(r);
      }

  PlacementResult out = finalize(s, best->z, n == 3 ? best->branch : Branch::TripleEnum, best->subset);
  out.alternates = best->alternates;
  return out;
}

std::array<ExclusionCircle, 3> exclusion_region(const Scenario& s, std::size_t i, std::size_t j, std::size_t k,
                                                const PlacementResult& pair_result) {
  const Point2 z = pair_result.z;
  return {ExclusionCircle{s.position(i), distance(s.position(i), z)},
          ExclusionCircle{s.position(j), distance(s.position(j), z)},
          ExclusionCircle{s.position(k), s.level_radius(k, pair_result.value)}};
}

std::array<ExclusionCircle, 3> exclusion_region(const Scenario& s, std::size_t i, std::size_t j, std::size_t k) {
  std::size_t idx[3] = {i, j, k};
  std::sort(idx, idx + 3);
  const std::size_t combos[3][3] = {{idx[0], idx[1], idx[2]}, {idx[0], idx[2], idx[1]}, {idx[1], idx[2], idx[0]}};
  int w = 0;
  PlacementResult pair[3];
  for (int c = 0; c < 3; ++c) {
    pair[c] = solve_pair_unconstrained(s, combos[c][0], combos[c][1]);
    if (pair[c].value < pair[w].value) w = c;
  }
  return exclusion_region(s, combos[w][0], combos[w][1], combos[w][2], pair[w]);
}

bool outside_all(const std::array<ExclusionCircle, 3>& circles, Point2 z, double tol) {
  for (const auto& c : circles)
    if (!(distance(c.center, z) >= c.radius - tol)) return false;
  return true;
}

PlacementResult solve_by_level_sets(const Scenario& s) {
  const std::size_t n = s.target_count();
  const double eps = s.jamming().epsilon;

  std::vector<detail::Disk> inside(n);
  std::vector<detail::Disk> outside(n);
  for (std::size_t i = 0; i < n; ++i) {
    inside[i].center = s.position(i);
    outside[i] = {s.position(i), eps};
  }
  auto probe = [&](double level) {
    for (std::size_t i = 0; i < n; ++i) inside[i].radius = s.level_radius(i, level);
    return detail::common_point(inside, outside);
  };

  double lo = kInf;
  double hi = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::min(lo, s.crlb_at_distance(i, kInf));
    hi = std::min(hi, s.crlb_at_distance(i, eps));
  }
  if (is_unbounded(hi)) {
    if (auto z = probe(kInf)) return finalize(s, *z, Branch::GridFallback);
    hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) hi = std::max(hi, s.distance_profile(i).finite_sup(eps));
  }
  const auto lp = detail::maximize_level(probe, lo, hi);
  if (!lp) throw SolverError("no feasible jammer position found");
  return finalize(s, lp->z, Branch::GridFallback);
}

PlacementResult solve(const Scenario& s, const SolveOptions& opt) {
  if (s.gated()) return solve_gated(s, opt);
  const std::size_t n = s.target_count();
  if (n == 1) {
    const Point2 z = s.position(0) + Point2{s.jamming().epsilon, 0.0};
    return finalize(s, z, Branch::Prop1Circle, {s.target_id(0)});
  }
  if (n == 2) {
    PlacementResult r = solve_pair(s, 0, 1);
    PlacementResult out = finalize(s, r.z, r.branch, r.subset);
    out.alternates = r.alternates;
    return out;
  }

  if (auto p1 = check_prop1(s)) return p1->second;
  const auto pairs = solve_all_pairs(s);
  if (auto p2 = check_prop2(s, pairs)) return *p2;

  PlacementResult u = solve_unconstrained(s);
  if (u.feasible) return u;
  return fallback(s, opt);
}

PlacementResult solve_gated(const Scenario& s, const SolveOptions& opt) {
  if (!s.gated()) throw std::invalid_argument("solve_gated: scenario has no SNR gate");
  const std::size_t n = s.target_count();
  if (n == 1) {
    const Point2 z = s.position(0) + Point2{s.jamming().epsilon, 0.0};
    return finalize(s, z, Branch::Prop1Circle, {s.target_id(0)});
  }
  if (n == 2) {
    PlacementResult r = solve_pair(s, 0, 1);
    PlacementResult out = finalize(s, r.z, r.branch, r.subset);
    out.alternates = r.alternates;
    return out;
  }
  if (auto p1 = check_prop1(s)) return p1->second;
  const auto pairs = solve_all_pairs(s);
  if (auto p2 = check_prop2(s, pairs)) return *p2;
  return fallback(s, opt);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {lo};
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return out;
}

SweepResult sweep(const Scenario& s, std::span<const double> powers, const SweepOptions& opt) {
  for (std::size_t i = 1; i < powers.size(); ++i)
    if (!(powers[i] > powers[i - 1])) throw std::invalid_argument("sweep: powers must be strictly ascending");

  auto run = [&](double p) { return solve(s.with_power(p), opt.solve); };
  auto same_regime = [](const PlacementResult& a, const PlacementResult& b) {
    return a.active_targets == b.active_targets && a.branch == b.branch;
  };

  SweepResult out;
  out.samples.reserve(powers.size());
  for (double p : powers) out.samples.push_back({p, run(p)});

  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    const auto& left = out.samples[i - 1];
    const auto& right = out.samples[i];
    if (same_regime(left.result, right.result)) continue;
    double lo = left.pj_normalized;
    double hi = right.pj_normalized;
    while (hi - lo > opt.breakpoint_resolution) {
      const double mid = 0.5 * (lo + hi);
      if (same_regime(run(mid), left.result)) lo = mid;
      else hi = mid;
    }
    out.breakpoints.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace jamplace
