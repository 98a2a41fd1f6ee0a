#include "jamplace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jamplace {

double distance(Point2 p, Point2 q) { return std::hypot(p.x - q.x, p.y - q.y); }

double distance_sq(Point2 p, Point2 q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

namespace {

// Signed distance of z from the directed line a->b, positive on the left.
double side(Point2 a, Point2 b, Point2 z) {
  const Point2 e = b - a;
  const double len = std::hypot(e.x, e.y);
  if (len == 0.0) return distance(a, z);
  return cross(e, z - a) / len;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point2> ccw_vertices) : vertices_(std::move(ccw_vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("ConvexPolygon: no vertices");
}

bool ConvexPolygon::contains(Point2 z, double tol) const {
  const std::size_t n = vertices_.size();
  if (n == 1) return distance(vertices_[0], z) <= tol;
  if (n == 2) return distance(closest_point_on_segment(z, vertices_[0], vertices_[1]), z) <= tol;
  for (std::size_t i = 0; i < n; ++i) {
    if (side(vertices_[i], vertices_[(i + 1) % n], z) < -tol) return false;
  }
  return true;
}

ConvexPolygon convex_hull(std::span<const Point2> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: empty input");

  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point2 a, Point2 b) { return distance(a, b) <= kGeoTol; }),
            pts.end());
  if (pts.size() <= 2) return ConvexPolygon(std::move(pts));

  // Andrew's monotone chain; near-collinear turns are dropped.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && side(hull[k - 2], hull[k - 1], pts[i]) <= kGeoTol) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && side(hull[k - 2], hull[k - 1], pts[i]) <= kGeoTol) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return ConvexPolygon(std::move(hull));
}

Point2 closest_point_on_segment(Point2 z, Point2 a, Point2 b) {
  const Point2 e = b - a;
  const double len2 = dot(e, e);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(z - a, e) / len2, 0.0, 1.0);
  return a + t * e;
}

Point2 project_onto_hull(Point2 z, const ConvexPolygon& hull) {
  const auto& v = hull.vertices();
  if (v.size() == 1) return v[0];
  if (hull.contains(z, 0.0)) return z;

  Point2 best = v[0];
  double best_d2 = distance_sq(z, best);
  const std::size_t n = v.size();
  const std::size_t edges = n == 2 ? 1 : n;
  for (std::size_t i = 0; i < edges; ++i) {
    const Point2 p = closest_point_on_segment(z, v[i], v[(i + 1) % n]);
    const double d2 = distance_sq(z, p);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = p;
    }
  }
  return best;
}

TriangleLocation locate_in_triangle(Point2 z, Point2 a, Point2 b, Point2 c) {
  const Point2 verts[3] = {a, b, c};
  TriangleLocation loc;

  const double area2 = cross(b - a, c - a);
  const double scale = std::max({distance(a, b), distance(b, c), distance(c, a)});
  if (std::abs(area2) <= kGeoTol * std::max(scale, 1.0)) {
    // Collinear: classify against the segment spanned by the three points.
    for (int v = 0; v < 3; ++v) {
      if (distance(z, verts[v]) <= kGeoTol) {
        loc.region = TriangleRegion::Boundary;
        loc.vertex = v;
        return loc;
      }
    }
    for (int e = 0; e < 3; ++e) {
      const Point2 p = closest_point_on_segment(z, verts[e], verts[(e + 1) % 3]);
      if (distance(p, z) <= kGeoTol) {
        loc.region = TriangleRegion::Boundary;
        loc.edge = e;
        return loc;
      }
    }
    return loc;
  }

  const double orient = area2 > 0.0 ? 1.0 : -1.0;
  double s[3];
  for (int e = 0; e < 3; ++e) s[e] = orient * side(verts[e], verts[(e + 1) % 3], z);

  if (s[0] < -kGeoTol || s[1] < -kGeoTol || s[2] < -kGeoTol) return loc;

  const bool on[3] = {std::abs(s[0]) <= kGeoTol, std::abs(s[1]) <= kGeoTol, std::abs(s[2]) <= kGeoTol};
  const int count = on[0] + on[1] + on[2];
  if (count == 0) {
    loc.region = TriangleRegion::Interior;
    return loc;
  }
  loc.region = TriangleRegion::Boundary;
  if (count == 1) {
    loc.edge = on[0] ? 0 : (on[1] ? 1 : 2);
  } else {
    // Two edges meet at the vertex they share.
    if (on[0] && on[2]) loc.vertex = 0;
    else if (on[0] && on[1]) loc.vertex = 1;
    else loc.vertex = 2;
  }
  return loc;
}

void sort_canonical(std::vector<Point2>& points) {
  std::sort(points.begin(), points.end(), [](Point2 p, Point2 q) {
    if (p.y != q.y) return p.y > q.y;
    return p.x > q.x;
  });
}

std::vector<Point2> circle_circle_intersection(Point2 c1, double r1, Point2 c2, double r2) {
  if (r1 < 0.0 || r2 < 0.0) throw std::invalid_argument("circle_circle_intersection: negative radius");
  const double d = distance(c1, c2);
  if (d <= kGeoTol) throw std::invalid_argument("circle_circle_intersection: concentric circles");

  const Point2 u = (1.0 / d) * (c2 - c1);
  const Point2 n{-u.y, u.x};

  const double outer = d - (r1 + r2);
  const double inner = std::abs(r1 - r2) - d;
  if (outer > kGeoTol || inner > kGeoTol) return {};

  if (std::abs(outer) <= kGeoTol) return {c1 + r1 * u};
  if (std::abs(inner) <= kGeoTol) return {c1 + (r1 >= r2 ? r1 : -r1) * u};

  const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const Point2 m = c1 + a * u;
  std::vector<Point2> out{m + h * n, m - h * n};
  sort_canonical(out);
  return out;
}

}  // namespace jamplace
