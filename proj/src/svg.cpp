#include "jamplace/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace jamplace {

namespace {

struct Rgb {
  double r, g, b;
};

// Dark blue -> teal -> green -> yellow.
constexpr std::array<Rgb, 5> kStops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};

std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0) * (kStops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), kStops.size() - 2);
  const double f = t - static_cast<double>(i);
  const Rgb& a = kStops[i];
  const Rgb& b = kStops[i + 1];
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a.r + f * (b.r - a.r))),
                static_cast<int>(std::lround(a.g + f * (b.g - a.g))), static_cast<int>(std::lround(a.b + f * (b.b - a.b))));
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_heatmap_svg(const Scenario& scenario, const FieldMap& field, std::optional<Point2> marker,
                               const HeatmapStyle& style) {
  const Box& box = field.bounds;
  const double w_m = box.x_max - box.x_min;
  const double h_m = box.y_max - box.y_min;
  const double scale = style.width_px / w_m;
  const double plot_w = style.width_px;
  const double plot_h = h_m * scale;
  const double margin = 40.0;
  const double legend_w = 90.0;
  const double total_w = plot_w + 2 * margin + legend_w;
  const double total_h = plot_h + 2 * margin;

  auto px = [&](double x) { return margin + (x - box.x_min) * scale; };
  auto py = [&](double y) { return margin + (box.y_max - y) * scale; };

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : field.values)
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const bool any = lo <= hi;
  const double range = any && hi > lo ? hi - lo : 1.0;

  const std::size_t sx = std::max<std::size_t>(1, (field.nx + style.max_cells - 1) / style.max_cells);
  const std::size_t sy = std::max<std::size_t>(1, (field.ny + style.max_cells - 1) / style.max_cells);
  const double cell_w = sx * field.resolution * scale;
  const double cell_h = sy * field.resolution * scale;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(total_w) + "\" height=\"" + fmt(total_h) +
         "\" viewBox=\"0 0 " + fmt(total_w) + " " + fmt(total_h) + "\">\n";
  out += "<title>min CRLB over jammer position: " + scenario.name() + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(total_w) + "\" height=\"" + fmt(total_h) + "\" fill=\"white\"/>\n";
  out += "<g id=\"field\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t iy = 0; iy < field.ny; iy += sy) {
    for (std::size_t ix = 0; ix < field.nx; ix += sx) {
      const std::size_t cx = std::min(field.nx - 1, ix + sx / 2);
      const std::size_t cy = std::min(field.ny - 1, iy + sy / 2);
      const double v = field.at(cx, cy);
      const Point2 p = field.node(ix, iy);
      const std::string fill = std::isfinite(v) ? colour((v - lo) / range) : (v > 0 ? "#ffffff" : "#bdbdbd");
      out += "<rect x=\"" + fmt(px(p.x - 0.5 * field.resolution)) + "\" y=\"" +
             fmt(py(p.y - 0.5 * field.resolution) - cell_h) + "\" width=\"" + fmt(cell_w) + "\" height=\"" +
             fmt(cell_h) + "\" fill=\"" + fill + "\"/>\n";
    }
  }
  out += "</g>\n";

  out += "<rect x=\"" + fmt(margin) + "\" y=\"" + fmt(margin) + "\" width=\"" + fmt(plot_w) + "\" height=\"" +
         fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  out += "<g id=\"anchors\">\n";
  for (const auto& a : scenario.spec().anchors) {
    if (a.position.x < box.x_min || a.position.x > box.x_max || a.position.y < box.y_min || a.position.y > box.y_max)
      continue;
    out += "<rect x=\"" + fmt(px(a.position.x) - 5) + "\" y=\"" + fmt(py(a.position.y) - 5) +
           "\" width=\"10\" height=\"10\" fill=\"black\"/>\n";
  }
  out += "</g>\n<g id=\"targets\">\n";
  for (const auto& t : scenario.profiles()) {
    out += "<circle cx=\"" + fmt(px(t.position.x)) + "\" cy=\"" + fmt(py(t.position.y)) +
           "\" r=\"6\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt(px(t.position.x) + 8) + "\" y=\"" + fmt(py(t.position.y) - 8) +
           "\" font-size=\"12\" font-family=\"sans-serif\">" + std::to_string(t.id) + "</text>\n";
  }
  out += "</g>\n";

  if (marker) {
    const double mx = px(marker->x);
    const double my = py(marker->y);
    out += "<g id=\"optimum\" stroke=\"red\" stroke-width=\"2\" data-x=\"" + fmt4(marker->x) + "\" data-y=\"" +
           fmt4(marker->y) + "\">\n";
    out += "<line x1=\"" + fmt(mx - 8) + "\" y1=\"" + fmt(my - 8) + "\" x2=\"" + fmt(mx + 8) + "\" y2=\"" + fmt(my + 8) +
           "\"/>\n";
    out += "<line x1=\"" + fmt(mx - 8) + "\" y1=\"" + fmt(my + 8) + "\" x2=\"" + fmt(mx + 8) + "\" y2=\"" + fmt(my - 8) +
           "\"/>\n";
    out += "</g>\n";
  }

  const double lx = margin + plot_w + 20;
  const int bands = 50;
  const double band_h = plot_h / bands;
  out += "<g id=\"legend\" font-size=\"11\" font-family=\"sans-serif\">\n";
  for (int b = 0; b < bands; ++b) {
    const double t = 1.0 - (b + 0.5) / bands;
    out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(margin + b * band_h) + "\" width=\"16\" height=\"" +
           fmt(band_h + 0.5) + "\" fill=\"" + colour(t) + "\"/>\n";
  }
  out += "<text x=\"" + fmt(lx + 20) + "\" y=\"" + fmt(margin + 10) + "\">max " + (any ? fmt4(hi) : "n/a") +
         "</text>\n";
  out += "<text x=\"" + fmt(lx + 20) + "\" y=\"" + fmt(margin + plot_h) + "\">min " + (any ? fmt4(lo) : "n/a") +
         "</text>\n";
  out += "<text x=\"" + fmt(lx) + "\" y=\"" + fmt(margin - 10) + "\">m^2</text>\n";
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace jamplace
