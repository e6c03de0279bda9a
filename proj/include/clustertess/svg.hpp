#pragma once

// Minimal SVG writer. Numbers are printed with a fixed number of decimals so
// equal input gives byte-identical files.

#include <string>
#include <utility>
#include <vector>

namespace ctess::svg {

struct Style {
  std::string fill = "none";
  std::string stroke = "black";
  double stroke_width = 1.0;
  double opacity = 1.0;
  bool dashed = false;
};

/// Maps the user rectangle [x0, x1] x [y0, y1] onto a canvas of the given
/// pixel width, y pointing up, with a fixed pixel padding.
class Document {
 public:
  Document(double x0, double y0, double x1, double y1, double width_px = 600.0,
           double padding_px = 20.0);

  void rect(double x0, double y0, double x1, double y1, const Style& s);
  void circle(double cx, double cy, double r, const Style& s);
  void line(double x0, double y0, double x1, double y1, const Style& s);
  void polygon(const std::vector<std::pair<double, double>>& pts, const Style& s);
  /// Group comment, handy when diffing golden files.
  void comment(const std::string& text);

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;
  std::string attrs(const Style& s) const;

  double x0_, y0_, scale_, padding_, width_px_, height_px_;
  std::string body_;
};

}  // namespace ctess::svg
