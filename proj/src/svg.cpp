#include "clustertess/svg.hpp"

#include <cstdio>
#include <stdexcept>

namespace ctess::svg {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace

Document::Document(double x0, double y0, double x1, double y1, double width_px, double padding_px)
    : x0_(x0), y0_(y0), padding_(padding_px), width_px_(width_px) {
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("empty drawing area");
  scale_ = (width_px - 2.0 * padding_px) / (x1 - x0);
  height_px_ = (y1 - y0) * scale_ + 2.0 * padding_px;
}

double Document::px(double x) const { return padding_ + (x - x0_) * scale_; }
double Document::py(double y) const { return height_px_ - padding_ - (y - y0_) * scale_; }

std::string Document::attrs(const Style& s) const {
  std::string a = " fill=\"" + s.fill + "\" stroke=\"" + s.stroke + "\" stroke-width=\"" +
                  fmt(s.stroke_width) + "\"";
  if (s.opacity < 1.0) a += " opacity=\"" + fmt(s.opacity) + "\"";
  if (s.dashed) a += " stroke-dasharray=\"4 3\"";
  return a;
}

void Document::rect(double x0, double y0, double x1, double y1, const Style& s) {
  body_ += "<rect x=\"" + fmt(px(x0)) + "\" y=\"" + fmt(py(y1)) + "\" width=\"" +
           fmt((x1 - x0) * scale_) + "\" height=\"" + fmt((y1 - y0) * scale_) + "\"" + attrs(s) +
           "/>\n";
}

void Document::circle(double cx, double cy, double r, const Style& s) {
  body_ += "<circle cx=\"" + fmt(px(cx)) + "\" cy=\"" + fmt(py(cy)) + "\" r=\"" + fmt(r * scale_) +
           "\"" + attrs(s) + "/>\n";
}

void Document::line(double x0, double y0, double x1, double y1, const Style& s) {
  body_ += "<line x1=\"" + fmt(px(x0)) + "\" y1=\"" + fmt(py(y0)) + "\" x2=\"" + fmt(px(x1)) +
           "\" y2=\"" + fmt(py(y1)) + "\"" + attrs(s) + "/>\n";
}

void Document::polygon(const std::vector<std::pair<double, double>>& pts, const Style& s) {
  std::string list;
  for (const auto& [x, y] : pts) {
    if (!list.empty()) list += ' ';
    list += fmt(px(x)) + "," + fmt(py(y));
  }
  body_ += "<polygon points=\"" + list + "\"" + attrs(s) + "/>\n";
}

void Document::comment(const std::string& text) { body_ += "<!-- " + text + " -->\n"; }

std::string Document::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         fmt(width_px_) + "\" height=\"" + fmt(height_px_) + "\" viewBox=\"0 0 " + fmt(width_px_) +
         " " + fmt(height_px_) + "\">\n" + body_ + "</svg>\n";
}

}  // namespace ctess::svg
