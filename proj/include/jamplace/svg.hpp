#pragma once

#include <optional>
#include <string>

#include "jamplace/oracle.hpp"
#include "jamplace/scenario.hpp"

namespace jamplace {

struct HeatmapStyle {
  int width_px = 640;
  std::size_t max_cells = 200;  // raster is downsampled to at most this many cells per axis
};

// Field raster with anchors (squares), targets (circles) and a cross at
// `marker`; linear colour scale with a min/max legend. Output is deterministic.
std::string render_heatmap_svg(const Scenario& scenario, const FieldMap& field, std::optional<Point2> marker,
                               const HeatmapStyle& style = {});

}  // namespace jamplace
