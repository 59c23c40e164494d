#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>

#include "ncm/geom.hpp"
#include "ncm/ham_sandwich.hpp"
#include "ncm/matcher.hpp"
#include "ncm/removal.hpp"

namespace ncm {

struct SvgOptions {
  double width = 800;
  double height = 800;
  double point_radius = 3.5;
  bool labels = true;
};

namespace detail {

struct SvgFrame {
  double min_x, min_y, scale, height, margin;

  double x(double v) const { return margin + (v - min_x) * scale; }
  double y(double v) const { return height - margin - (v - min_y) * scale; }
};

inline SvgFrame make_frame(const PointSet& ps, const SvgOptions& opt) {
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (ps.size() > 0) {
    min_x = max_x = static_cast<double>(ps[0].x);
    min_y = max_y = static_cast<double>(ps[0].y);
    for (const Point& p : ps.points()) {
      min_x = std::min(min_x, static_cast<double>(p.x));
      max_x = std::max(max_x, static_cast<double>(p.x));
      min_y = std::min(min_y, static_cast<double>(p.y));
      max_y = std::max(max_y, static_cast<double>(p.y));
    }
  }
  const double margin = 30;
  const double span_x = std::max(1.0, max_x - min_x);
  const double span_y = std::max(1.0, max_y - min_y);
  const double scale = std::min((opt.width - 2 * margin) / span_x,
                                (opt.height - 2 * margin) / span_y);
  return SvgFrame{min_x, min_y, scale, opt.height, margin};
}

}  // namespace detail

// SVG rendering of a point set with optional matching (solid), removal
// (dashed) and subdivision cut lines.
inline std::string render_svg(const PointSet& ps,
                              const std::vector<EdgeRef>* matching,
                              const std::vector<EdgeRef>* removal,
                              const SubdivisionTree* tree,
                              SvgOptions opt = {}) {
  const detail::SvgFrame fr = detail::make_frame(ps, opt);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width
      << " " << opt.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto line = [&](double x1, double y1, double x2, double y2,
                  const char* style) {
    out << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
        << "\" y2=\"" << y2 << "\" " << style << "/>\n";
  };

  if (tree && tree->root) {
    // Cut coordinates live on the doubled grid; halve them back.
    tree->for_each_node([&](const SubdivisionNode& node) {
      if (!node.cut) return;
      const double ax = node.cut->pa.x / 2.0, ay = node.cut->pa.y / 2.0;
      const double bx = node.cut->pb.x / 2.0, by = node.cut->pb.y / 2.0;
      // Extend the segment well past both anchors.
      const double dx = bx - ax, dy = by - ay;
      const double t = 50.0;
      line(fr.x(ax - t * dx), fr.y(ay - t * dy), fr.x(bx + t * dx),
           fr.y(by + t * dy),
           "stroke=\"#7f9fe0\" stroke-width=\"1\" stroke-opacity=\"0.6\"");
    });
  }

  if (removal) {
    for (const EdgeRef& e : *removal)
      line(fr.x(static_cast<double>(ps[e.i].x)),
           fr.y(static_cast<double>(ps[e.i].y)),
           fr.x(static_cast<double>(ps[e.j].x)),
           fr.y(static_cast<double>(ps[e.j].y)),
           "stroke=\"#d04040\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"6 4\"");
  }

  if (matching) {
    for (const EdgeRef& e : *matching)
      line(fr.x(static_cast<double>(ps[e.i].x)),
           fr.y(static_cast<double>(ps[e.i].y)),
           fr.x(static_cast<double>(ps[e.j].x)),
           fr.y(static_cast<double>(ps[e.j].y)),
           "stroke=\"#208040\" stroke-width=\"2\"");
  }

  for (int i = 0; i < ps.size(); ++i) {
    const double cx = fr.x(static_cast<double>(ps[i].x));
    const double cy = fr.y(static_cast<double>(ps[i].y));
    out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\""
        << opt.point_radius << "\" fill=\"#202020\"/>\n";
    if (opt.labels && ps.size() <= 64)
      out << "<text x=\"" << cx + 5 << "\" y=\"" << cy - 5
          << "\" font-size=\"11\" fill=\"#606060\">" << i << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace ncm
