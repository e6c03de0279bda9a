#pragma once

#include <string>
#include <vector>

#include "clustertess/records.hpp"

namespace ctess::cli {

enum class RenderStyle { plain, delone, hardcore, voronoi };

RenderStyle parse_style(const std::string& name);

struct RenderOptions {
  double hardcore_r = 0.1;
  bool circumcircles = true;
};

/// SVG drawing of one record: window frame, points as dots and, depending
/// on the style, cluster hulls, circumcircles or hard-core balls. Throws
/// UnsupportedDimension unless d is 1 or 2.
std::string render_record(const Record& r, RenderStyle style, const RenderOptions& options = {});

/// Cut-and-project picture over [x_lo, x_hi]: lattice dots, the strip band,
/// and ticks on the line below at the chain vertices. Without explicit
/// vertices the deterministic chain is drawn.
std::string render_silver_strip(double x_lo, double x_hi,
                                const std::vector<double>* vertices = nullptr);

}  // namespace ctess::cli
