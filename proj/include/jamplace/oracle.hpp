#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "jamplace/scenario.hpp"
#include "jamplace/solver.hpp"

namespace jamplace {

struct Box {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

struct GridSpec {
  Box bounds;
  double resolution = 0.01;
  bool respect_epsilon = true;
};

class NoFeasiblePoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Target bounding box grown by max(2 epsilon, 2 m) on every side.
Box default_search_box(const Scenario& scenario);

// Number of grid nodes along an axis of the given length.
std::size_t grid_count(double length, double h);

// Upper bound on |grad min_crlb| over the feasible part of the box.
double lipschitz_bound(const Scenario& scenario, const Box& box);

// Exhaustive search; throws NoFeasiblePoint when every node is masked.
PlacementResult grid_search(const Scenario& scenario, const GridSpec& spec);

// Local grid searches in shrinking boxes around the incumbent, starting at
// resolution h0 and dividing by `factor` each round. Never returns a worse value.
PlacementResult refine(const Scenario& scenario, Point2 z0, int rounds, double factor, double h0 = 0.01,
                       bool respect_epsilon = true);

struct FieldMap {
  Box bounds;
  double resolution = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;  // row-major from (x_min, y_min); -inf where masked

  double at(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
  Point2 node(std::size_t ix, std::size_t iy) const;
};

FieldMap field_map(const Scenario& scenario, const GridSpec& spec);

}  // namespace jamplace
