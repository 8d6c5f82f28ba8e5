#pragma once

#include <string>
#include <vector>

#include "masr/robot.hpp"
#include "masr/scene.hpp"

namespace masr {

// Minimal SVG writer in world coordinates (meters, y up).
class SvgDocument {
 public:
  // World window [min_x, max_x] x [min_y, max_y] drawn `width` pixels wide.
  SvgDocument(double min_x, double min_y, double max_x, double max_y, double width = 800.0);

  void polygon(const std::vector<Point2>& points, const std::string& fill,
               const std::string& stroke = "none");
  void polyline(const std::vector<Point2>& points, const std::string& stroke, double stroke_px = 1.0);
  void circle(const Point2& center, double radius, const std::string& fill,
              const std::string& stroke = "none");
  void text(const Point2& at, const std::string& content, double size_px = 12.0);
  // Subsequent shapes are shifted by `offset` (world units).
  void set_offset(const Point2& offset) { offset_ = offset; }

  std::string str() const;

 private:
  std::string point(const Point2& p) const;

  double min_x_, min_y_, max_x_, max_y_;
  double scale_;
  Point2 offset_ = Point2::Zero();
  std::string body_;
};

// The chain (and optionally a scene) in a single picture.
std::string chain_svg(const RobotSpec& spec, const JointVector& theta, const Scene* scene = nullptr);

// Panels of several configurations side by side, labelled in order.
std::string storyboard_svg(const RobotSpec& spec, const std::vector<JointVector>& frames,
                           const std::vector<std::string>& labels, const Scene* scene = nullptr);

}  // namespace masr
