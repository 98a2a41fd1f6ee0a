#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "jamplace/geometry.hpp"

namespace jamplace::detail {

struct Disk {
  Point2 center;
  double radius = 0.0;  // may be +infinity
};

// A point inside every `inside` disk and outside every `outside` disk, or
// nothing. Inside disks are shrunk and outside disks grown by a tiny margin so
// the answer is strictly feasible. Candidates are pairwise circle
// intersections plus one point per circle, scanned in a fixed order.
std::optional<Point2> common_point(std::span<const Disk> inside, std::span<const Disk> outside);

struct LevelPoint {
  double level = 0.0;
  Point2 z;
};

// Largest level in [lo, hi] for which `probe` finds a point, by bisection.
// `probe` must be monotone: success at t implies success below t.
std::optional<LevelPoint> maximize_level(const std::function<std::optional<Point2>(double)>& probe, double lo,
                                         double hi);

}  // namespace jamplace::detail
