#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "masr/robot.hpp"

namespace masr {

struct Obstacle {
  std::string name;
  std::vector<Point2> vertices;  // simple polygon, either winding
};

struct Target {
  Point2 center = Point2::Zero();
  double radius = 0.01;
};

struct Scene {
  std::string name;
  std::vector<Obstacle> obstacles;
  Target target;
  double grasp_radius = 0.015;
  std::optional<double> pass_width;
  std::optional<double> display_scale;  // pixels per meter hint for viewers

  // Throws ParameterError for degenerate or self-intersecting polygons and
  // non-positive radii.
  void validate() const;
  Scene translated(const Point2& offset) const;
};

Scene scene_from_json(const std::string& text);
std::string scene_to_json(const Scene& scene);
Scene load_scene(const std::string& path);

// Link i as a rectangle around the segment from joint i to joint i + 1.
// Corners run start-right, end-right, end-left, start-left.
struct LinkRect {
  std::array<Point2, 4> corners;
};

struct Footprint {
  std::vector<LinkRect> links;
};

Footprint robot_footprint(const RobotSpec& spec, const JointVector& theta,
                          const Point2& base = Point2::Zero());

struct Contact {
  int link = 0;      // 1-based
  int obstacle = 0;  // 0-based index into Scene::obstacles

  friend bool operator==(const Contact&, const Contact&) = default;
};

struct SelfContact {
  int first = 0;  // 1-based, first < second - 1
  int second = 0;

  friend bool operator==(const SelfContact&, const SelfContact&) = default;
};

struct CollisionReport {
  bool collides = false;
  std::vector<Contact> contacts;            // every link/obstacle pair in contact
  std::vector<SelfContact> self_contacts;   // non-adjacent links overlapping

  std::optional<Contact> first() const;
};

// Touching counts as contact. Adjacent links always overlap at their shared
// joint and are never reported.
CollisionReport collides(const Scene& scene, const RobotSpec& spec, const JointVector& theta,
                         const Point2& base = Point2::Zero());

bool rect_intersects_polygon(const LinkRect& rect, const std::vector<Point2>& polygon);
bool rects_intersect(const LinkRect& a, const LinkRect& b);
// Boundary points count as inside.
bool point_in_polygon(const Point2& p, const std::vector<Point2>& polygon);

bool can_grasp(const RobotSpec& spec, const JointVector& theta, const Scene& scene);

// Two walls with a 15 mm slot centred 5 link lengths from the base and the
// target at the tip of the reaching configuration. Needs N = 10, L = 0.05 m.
Scene narrow_pass_scene(const RobotSpec& spec);

}  // namespace masr
