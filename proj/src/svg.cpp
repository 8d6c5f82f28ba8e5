#include "masr/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace masr {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Bounds {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  void add(const Point2& p) {
    min_x = std::min(min_x, p.x());
    min_y = std::min(min_y, p.y());
    max_x = std::max(max_x, p.x());
    max_y = std::max(max_y, p.y());
  }
};

Bounds world_bounds(const RobotSpec& spec, const std::vector<JointVector>& frames, const Scene* scene) {
  Bounds b;
  for (const auto& theta : frames)
    for (const auto& link : robot_footprint(spec, theta).links)
      for (const auto& c : link.corners) b.add(c);
  if (scene) {
    for (const auto& o : scene->obstacles)
      for (const auto& v : o.vertices) b.add(v);
    const double r = std::max(scene->target.radius, scene->grasp_radius);
    b.add(scene->target.center - Point2(r, r));
    b.add(scene->target.center + Point2(r, r));
  }
  const double pad = 0.05 * std::max({b.max_x - b.min_x, b.max_y - b.min_y, spec.link_length});
  b.min_x -= pad;
  b.min_y -= pad;
  b.max_x += pad;
  b.max_y += pad;
  return b;
}

void draw(SvgDocument& svg, const RobotSpec& spec, const JointVector& theta, const Scene* scene) {
  if (scene) {
    for (const auto& o : scene->obstacles) svg.polygon(o.vertices, "#7f7f7f", "#404040");
    svg.circle(scene->target.center, scene->target.radius, "#3060d0");
    svg.circle(scene->target.center, scene->grasp_radius, "none", "#3060d0");
  }
  const Footprint fp = robot_footprint(spec, theta);
  for (const auto& link : fp.links)
    svg.polygon({link.corners.begin(), link.corners.end()}, "#e8c070", "#805010");
}

}  // namespace

SvgDocument::SvgDocument(double min_x, double min_y, double max_x, double max_y, double width)
    : min_x_(min_x), min_y_(min_y), max_x_(max_x), max_y_(max_y) {
  const double span = std::max(max_x_ - min_x_, 1e-9);
  scale_ = width / span;
}

std::string SvgDocument::point(const Point2& p) const {
  const Point2 q = p + offset_;
  return fmt((q.x() - min_x_) * scale_) + "," + fmt((max_y_ - q.y()) * scale_);
}

void SvgDocument::polygon(const std::vector<Point2>& points, const std::string& fill,
                          const std::string& stroke) {
  body_ += "<polygon points=\"";
  for (std::size_t k = 0; k < points.size(); ++k) body_ += (k ? " " : "") + point(points[k]);
  body_ += "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
}

void SvgDocument::polyline(const std::vector<Point2>& points, const std::string& stroke,
                           double stroke_px) {
  body_ += "<polyline points=\"";
  for (std::size_t k = 0; k < points.size(); ++k) body_ += (k ? " " : "") + point(points[k]);
  body_ += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(stroke_px) + "\"/>\n";
}

void SvgDocument::circle(const Point2& center, double radius, const std::string& fill,
                         const std::string& stroke) {
  const Point2 q = center + offset_;
  body_ += "<circle cx=\"" + fmt((q.x() - min_x_) * scale_) + "\" cy=\"" +
           fmt((max_y_ - q.y()) * scale_) + "\" r=\"" + fmt(radius * scale_) + "\" fill=\"" + fill +
           "\" stroke=\"" + stroke + "\"/>\n";
}

void SvgDocument::text(const Point2& at, const std::string& content, double size_px) {
  const Point2 q = at + offset_;
  body_ += "<text x=\"" + fmt((q.x() - min_x_) * scale_) + "\" y=\"" + fmt((max_y_ - q.y()) * scale_) +
           "\" font-family=\"sans-serif\" font-size=\"" + fmt(size_px) + "\">" + escape(content) +
           "</text>\n";
}

std::string SvgDocument::str() const {
  const double w = (max_x_ - min_x_) * scale_;
  const double h = (max_y_ - min_y_) * scale_;
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
         "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         body_ + "</svg>\n";
}

std::string chain_svg(const RobotSpec& spec, const JointVector& theta, const Scene* scene) {
  const Bounds b = world_bounds(spec, {theta}, scene);
  SvgDocument svg(b.min_x, b.min_y, b.max_x, b.max_y);
  draw(svg, spec, theta, scene);
  return svg.str();
}

std::string storyboard_svg(const RobotSpec& spec, const std::vector<JointVector>& frames,
                           const std::vector<std::string>& labels, const Scene* scene) {
  if (frames.empty()) return SvgDocument(0.0, 0.0, 1.0, 1.0).str();
  const Bounds b = world_bounds(spec, frames, scene);
  const double w = b.max_x - b.min_x;
  const double h = b.max_y - b.min_y;
  const std::size_t columns = std::min<std::size_t>(frames.size(), 3);
  const std::size_t rows = (frames.size() + columns - 1) / columns;
  SvgDocument svg(b.min_x, b.max_y - rows * h, b.min_x + columns * w, b.max_y,
                  320.0 * static_cast<double>(columns));
  for (std::size_t k = 0; k < frames.size(); ++k) {
    svg.set_offset(Point2(static_cast<double>(k % columns) * w, -static_cast<double>(k / columns) * h));
    draw(svg, spec, frames[k], scene);
    if (k < labels.size()) svg.text(Point2(b.min_x + 0.02 * w, b.max_y - 0.08 * h), labels[k]);
  }
  return svg.str();
}

}  // namespace masr
