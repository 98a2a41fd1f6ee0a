#pragma once

#include <span>
#include <vector>

namespace jamplace {

// Absolute tolerance (meters) for orientation, containment and on-circle tests.
inline constexpr double kGeoTol = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

double distance(Point2 p, Point2 q);
double distance_sq(Point2 p, Point2 q);

// Counter-clockwise convex chain. One vertex is a point hull, two a segment.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Point2> ccw_vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool contains(Point2 z, double tol = kGeoTol) const;

 private:
  std::vector<Point2> vertices_;
};

// Throws std::invalid_argument on empty input.
ConvexPolygon convex_hull(std::span<const Point2> points);

Point2 closest_point_on_segment(Point2 z, Point2 a, Point2 b);
Point2 project_onto_hull(Point2 z, const ConvexPolygon& hull);

enum class TriangleRegion { Interior, Boundary, Exterior };

struct TriangleLocation {
  TriangleRegion region = TriangleRegion::Exterior;
  int edge = -1;    // 0: a-b, 1: b-c, 2: c-a
  int vertex = -1;  // 0: a, 1: b, 2: c
};

TriangleLocation locate_in_triangle(Point2 z, Point2 a, Point2 b, Point2 c);

// Sorted by y descending, then x descending. Throws std::invalid_argument for
// concentric circles.
std::vector<Point2> circle_circle_intersection(Point2 c1, double r1, Point2 c2, double r2);

void sort_canonical(std::vector<Point2>& points);

}  // namespace jamplace
