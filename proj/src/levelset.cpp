#include "levelset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jamplace::detail {

namespace {

double margin(double r) { return 1e-10 + 1e-13 * r; }
double slack(double r) { return 1e-12 + 1e-14 * r; }

struct Circle {
  Point2 center;
  double radius;
};

}  // namespace

std::optional<Point2> common_point(std::span<const Disk> inside, std::span<const Disk> outside) {
  std::vector<Circle> in;
  std::vector<Circle> out;
  for (const Disk& d : inside) {
    if (std::isinf(d.radius)) continue;
    const double r = d.radius - margin(d.radius);
    if (r < 0.0) return std::nullopt;
    in.push_back({d.center, r});
  }
  for (const Disk& d : outside) out.push_back({d.center, d.radius + margin(d.radius)});

  auto accepts = [&](Point2 p) {
    for (const Circle& c : in)
      if (distance(p, c.center) > c.radius + slack(c.radius)) return false;
    for (const Circle& c : out)
      if (distance(p, c.center) < c.radius - slack(c.radius)) return false;
    return true;
  };

  if (in.empty()) {
    // Unbounded region: step right of everything.
    double x = 0.0;
    double y = 0.0;
    bool first = true;
    for (const Circle& c : out) {
      if (first || c.center.x + c.radius > x) {
        x = c.center.x + c.radius;
        y = c.center.y;
        first = false;
      }
    }
    return Point2{x + 1.0, y};
  }

  std::vector<Circle> all = in;
  all.insert(all.end(), out.begin(), out.end());

  for (const Circle& c : all) {
    const Point2 p{c.center.x + c.radius, c.center.y};
    if (accepts(p)) return p;
  }
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      if (distance(all[a].center, all[b].center) <= kGeoTol) continue;
      for (const Point2 p : circle_circle_intersection(all[a].center, all[a].radius, all[b].center, all[b].radius))
        if (accepts(p)) return p;
    }
  }
  return std::nullopt;
}

std::optional<LevelPoint> maximize_level(const std::function<std::optional<Point2>(double)>& probe, double lo,
                                         double hi) {
  std::optional<Point2> at_lo = probe(lo);
  for (int attempt = 0; !at_lo && attempt < 6; ++attempt) {
    lo *= 1.0 - std::pow(10.0, -9.0 + 1.5 * attempt);
    at_lo = probe(lo);
  }
  if (!at_lo) return std::nullopt;
  if (!(hi > lo)) return LevelPoint{lo, *at_lo};
  if (auto at_hi = probe(hi)) return LevelPoint{hi, *at_hi};

  Point2 best = *at_lo;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (auto p = probe(mid)) {
      lo = mid;
      best = *p;
    } else {
      hi = mid;
    }
  }
  return LevelPoint{lo, best};
}

}  // namespace jamplace::detail
