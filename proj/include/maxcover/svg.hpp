#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maxcover/format.hpp"
#include "maxcover/hexlattice.hpp"
#include "maxcover/protocol.hpp"

namespace maxcover {

struct SvgOptions {
  double pixels_per_unit = 40.0;
  bool show_centers = true;
  std::string stroke = "#1f3b73";
  std::string title;
};

/// One sensing disk of radius r per node, in id order. Node 0's disk is
/// dashed. The y axis is flipped so the drawing has the usual math
/// orientation. Output depends only on the inputs.
inline std::string render_svg(std::span<const std::pair<NodeId, LatticeCoord>> nodes, double r,
                              const SvgOptions& opts = {}) {
  if (nodes.empty()) throw std::invalid_argument("render_svg: nothing to draw");
  require_radius(r);

  std::vector<std::pair<NodeId, Point>> placed;
  placed.reserve(nodes.size());
  for (const auto& [id, c] : nodes) {
    const Point p = to_cartesian(c, r);
    placed.emplace_back(id, Point{p.x, -p.y});
  }
  std::sort(placed.begin(), placed.end(), [](const auto& l, const auto& rhs) { return l.first < rhs.first; });

  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  for (const auto& [id, p] : placed) {
    min_x = std::min(min_x, p.x - r);
    max_x = std::max(max_x, p.x + r);
    min_y = std::min(min_y, p.y - r);
    max_y = std::max(max_y, p.y + r);
  }
  const double pad_x = 0.05 * (max_x - min_x), pad_y = 0.05 * (max_y - min_y);
  min_x -= pad_x;
  max_x += pad_x;
  min_y -= pad_y;
  max_y += pad_y;
  const double width = max_x - min_x, height = max_y - min_y;
  const double stroke_width = 0.03 * r;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fixed6(width * opts.pixels_per_unit) + "\" height=\"" + fixed6(height * opts.pixels_per_unit) +
         "\" viewBox=\"" + fixed6(min_x) + " " + fixed6(min_y) + " " + fixed6(width) + " " + fixed6(height) + "\">\n";
  if (!opts.title.empty()) out += "  <title>" + opts.title + "</title>\n";
  out += "  <rect x=\"" + fixed6(min_x) + "\" y=\"" + fixed6(min_y) + "\" width=\"" + fixed6(width) +
         "\" height=\"" + fixed6(height) + "\" fill=\"white\"/>\n";
  out += "  <g fill=\"none\" stroke=\"" + opts.stroke + "\" stroke-width=\"" + fixed6(stroke_width) + "\">\n";
  for (const auto& [id, p] : placed) {
    out += "    <circle id=\"node" + std::to_string(id) + "\" cx=\"" + fixed6(p.x) + "\" cy=\"" + fixed6(p.y) +
           "\" r=\"" + fixed6(r) + "\"";
    if (id == 0) out += " stroke-dasharray=\"" + fixed6(0.12 * r) + " " + fixed6(0.08 * r) + "\"";
    out += "/>\n";
  }
  out += "  </g>\n";
  if (opts.show_centers) {
    out += "  <g fill=\"" + opts.stroke + "\" stroke=\"none\">\n";
    for (const auto& [id, p] : placed)
      out += "    <circle cx=\"" + fixed6(p.x) + "\" cy=\"" + fixed6(p.y) + "\" r=\"" + fixed6(0.05 * r) + "\"/>\n";
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace maxcover
