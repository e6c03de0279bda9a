#include "clustertess/render.hpp"

#include <algorithm>
#include <cmath>

#include "clustertess/cutproject.hpp"
#include "clustertess/run_config.hpp"
#include "clustertess/svg.hpp"

namespace ctess::cli {

namespace {

using Polygon = std::vector<std::pair<double, double>>;

svg::Style frame_style() { return {"none", "black", 1.5, 1.0, false}; }
svg::Style dot_style() { return {"black", "none", 0.0, 1.0, false}; }
svg::Style hull_style(bool uncertain) {
  return {uncertain ? "none" : "#9ecae1", uncertain ? "#888888" : "#3182bd", 1.0,
          uncertain ? 1.0 : 0.6, uncertain};
}

Polygon hull_polygon(const Cluster& x) {
  Polygon out;
  for (const auto& p : convex_hull_vertices(x)) out.emplace_back(p[0], p[1]);
  return out;
}

std::string render_1d(const Record& r, RenderStyle style, const RenderOptions& options) {
  const Window& w = r.points.window();
  const double lo = w.low()[0], hi = w.high()[0];
  const double h = 0.05 * (hi - lo);
  svg::Document doc(lo, -h, hi, h);
  doc.line(lo, 0.0, hi, 0.0, frame_style());
  doc.line(lo, -h, lo, h, frame_style());
  doc.line(hi, -h, hi, h, frame_style());
  const double dot = 0.004 * (hi - lo);
  if (r.clusters) {
    for (const auto& e : *r.clusters) {
      double a = e.cluster[0][0], b = a;
      for (const auto& p : e.cluster) a = std::min(a, p[0]), b = std::max(b, p[0]);
      auto s = hull_style(e.boundary_uncertain);
      s.stroke_width = 3.0;
      if (b > a) doc.line(a, 0.0, b, 0.0, s);
      if (style == RenderStyle::hardcore)
        for (const auto& p : e.cluster) doc.line(p[0] - options.hardcore_r / 2, 0.0, p[0] + options.hardcore_r / 2, 0.0, s);
    }
  }
  for (const auto& a : r.points.atoms()) doc.circle(a.point[0], 0.0, dot, dot_style());
  return doc.str();
}

}  // namespace

RenderStyle parse_style(const std::string& name) {
  if (name == "plain") return RenderStyle::plain;
  if (name == "delone") return RenderStyle::delone;
  if (name == "hardcore") return RenderStyle::hardcore;
  if (name == "voronoi") return RenderStyle::voronoi;
  throw ConfigError("unknown render style '" + name + "'");
}

std::string render_record(const Record& r, RenderStyle style, const RenderOptions& options) {
  const std::size_t d = r.points.dim();
  if (d == 1) return render_1d(r, style, options);
  if (d != 2) throw UnsupportedDimension("rendering needs dimension 1 or 2");

  const Window& w = r.points.window();
  const Point& lo = w.low();
  const Point& hi = w.high();
  svg::Document doc(lo[0], lo[1], hi[0], hi[1]);
  doc.rect(lo[0], lo[1], hi[0], hi[1], frame_style());
  if (w.buffer_margin() > 0.0) {
    const Window inner = w.eroded();
    doc.rect(inner.low()[0], inner.low()[1], inner.high()[0], inner.high()[1],
             {"none", "#888888", 0.75, 1.0, true});
  }
  const double dot = 0.004 * std::max(hi[0] - lo[0], hi[1] - lo[1]);

  if (r.clusters) {
    doc.comment("clusters");
    for (const auto& e : *r.clusters) {
      const Cluster& x = e.cluster;
      switch (style) {
        case RenderStyle::hardcore:
          for (const auto& p : x)
            doc.circle(p[0], p[1], options.hardcore_r / 2.0, hull_style(e.boundary_uncertain));
          break;
        case RenderStyle::plain:
        case RenderStyle::delone:
        case RenderStyle::voronoi:
          if (x.size() >= 3) {
            doc.polygon(hull_polygon(x), hull_style(e.boundary_uncertain));
          } else if (x.size() == 2) {
            doc.line(x[0][0], x[0][1], x[1][0], x[1][1], hull_style(e.boundary_uncertain));
          }
          if (style == RenderStyle::delone && options.circumcircles && x.size() == 3 &&
              is_simplex(x.points())) {
            const Ball b = circumball(x);
            doc.circle(b.center[0], b.center[1], b.radius, {"none", "#de2d26", 0.5, 0.7, true});
          }
          break;
      }
    }
  }
  doc.comment("points");
  for (const auto& a : r.points.atoms()) doc.circle(a.point[0], a.point[1], dot, dot_style());
  return doc.str();
}

std::string render_silver_strip(double x_lo, double x_hi, const std::vector<double>* vertices) {
  constexpr double kHalfHeight = 2.5;
  const double axis_y = -kHalfHeight - 0.6;
  svg::Document doc(x_lo - 0.5, axis_y - 0.5, x_hi + 0.5, kHalfHeight + 0.5);

  doc.comment("strip");
  doc.rect(x_lo - 0.5, -silver::kStripHalfWidth, x_hi + 0.5, silver::kStripHalfWidth,
           {"#fdd49e", "none", 0.0, 0.8, false});
  doc.comment("lattice");
  const auto all = silver::strip_points(x_lo, x_hi, kHalfHeight);
  for (const auto& e : all) {
    const bool inside = std::abs(e.pi_star()) <= silver::kStripHalfWidth + 1e-12;
    doc.circle(e.pi(), e.pi_star(), 0.06,
               inside ? svg::Style{"black", "none", 0.0, 1.0, false}
                      : svg::Style{"none", "#636363", 0.75, 1.0, false});
    if (inside && !vertices) doc.line(e.pi(), e.pi_star(), e.pi(), axis_y, {"none", "#bdbdbd", 0.5, 1.0, true});
  }

  doc.comment("chain");
  doc.line(x_lo, axis_y, x_hi, axis_y, {"none", "black", 1.5, 1.0, false});
  std::vector<double> xs;
  if (vertices) {
    xs = *vertices;
  } else {
    xs = silver::deterministic_chain(x_lo, x_hi).vertices;
  }
  for (double x : xs) doc.line(x, axis_y - 0.2, x, axis_y + 0.2, {"none", "black", 1.5, 1.0, false});
  return doc.str();
}

}  // namespace ctess::cli
