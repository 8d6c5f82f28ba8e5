#include "masr/scene.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "masr/io.hpp"

namespace masr {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

// Closed segments; touching and collinear overlap both count.
bool segments_intersect(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

bool point_in_rect(const Point2& p, const LinkRect& r) {
  // Convex quadrilateral: p must not lie strictly outside any edge.
  int positive = 0;
  int negative = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const int s = sign(cross(r.corners[k], r.corners[(k + 1) % 4], p));
    positive += s > 0;
    negative += s < 0;
  }
  return positive == 0 || negative == 0;
}

Point2 point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected a point [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::ordered_json point_to_json(const Point2& p) { return nlohmann::ordered_json::array({p.x(), p.y()}); }

constexpr double kPassWidth = 0.015;

}  // namespace

void Scene::validate() const {
  for (const auto& o : obstacles) {
    const auto& v = o.vertices;
    if (v.size() < 3) throw ParameterError("obstacle '" + o.name + "' needs at least 3 vertices");
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
        if (adjacent) continue;
        if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
          throw ParameterError("obstacle '" + o.name + "' is not a simple polygon");
      }
    }
  }
  if (!(target.radius > 0.0)) throw ParameterError("target radius must be positive");
  if (!(grasp_radius > 0.0)) throw ParameterError("grasp radius must be positive");
  if (pass_width && !(*pass_width > 0.0)) throw ParameterError("pass width must be positive");
}

Scene Scene::translated(const Point2& offset) const {
  Scene out = *this;
  for (auto& o : out.obstacles)
    for (auto& v : o.vertices) v += offset;
  out.target.center += offset;
  return out;
}

Scene scene_from_json(const std::string& text) {
  Scene scene;
  try {
    const auto doc = nlohmann::json::parse(text);
    scene.name = doc.value("name", "");
    for (const auto& o : doc.value("obstacles", nlohmann::json::array())) {
      Obstacle obstacle;
      obstacle.name = o.value("name", "");
      for (const auto& v : o.at("vertices")) obstacle.vertices.push_back(point_from_json(v));
      scene.obstacles.push_back(std::move(obstacle));
    }
    const auto& t = doc.at("target");
    scene.target.center = point_from_json(t.at("center"));
    scene.target.radius = t.at("radius").get<double>();
    scene.grasp_radius = doc.at("grasp_radius").get<double>();
    if (doc.contains("pass_width")) scene.pass_width = doc.at("pass_width").get<double>();
    if (doc.contains("display_scale")) scene.display_scale = doc.at("display_scale").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid scene: ") + e.what());
  }
  scene.validate();
  return scene;
}

std::string scene_to_json(const Scene& scene) {
  nlohmann::ordered_json doc;
  doc["name"] = scene.name;
  doc["obstacles"] = nlohmann::ordered_json::array();
  for (const auto& o : scene.obstacles) {
    nlohmann::ordered_json entry;
    entry["name"] = o.name;
    entry["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : o.vertices) entry["vertices"].push_back(point_to_json(v));
    doc["obstacles"].push_back(entry);
  }
  doc["target"] = {{"center", point_to_json(scene.target.center)}, {"radius", scene.target.radius}};
  doc["grasp_radius"] = scene.grasp_radius;
  if (scene.pass_width) doc["pass_width"] = *scene.pass_width;
  if (scene.display_scale) doc["display_scale"] = *scene.display_scale;
  return doc.dump(2) + "\n";
}

Scene load_scene(const std::string& path) { return scene_from_json(read_text_file(path)); }

Footprint robot_footprint(const RobotSpec& spec, const JointVector& theta, const Point2& base) {
  const std::vector<Point2> points = forward_kinematics(spec.link_length, theta);
  const double half = 0.5 * spec.link_thickness;
  Footprint fp;
  fp.links.reserve(points.size());
  Point2 start = base;
  for (const auto& p : points) {
    const Point2 end = base + p;
    const Point2 dir = (end - start) / spec.link_length;
    const Point2 normal(-dir.y(), dir.x());
    fp.links.push_back({{start - half * normal, end - half * normal, end + half * normal,
                         start + half * normal}});
    start = end;
  }
  return fp;
}

bool point_in_polygon(const Point2& p, const std::vector<Point2>& polygon) {
  const std::size_t n = polygon.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[j];
    if (cross(a, b, p) == 0.0 && on_segment(a, b, p)) return true;
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

bool rect_intersects_polygon(const LinkRect& rect, const std::vector<Point2>& polygon) {
  const std::size_t n = polygon.size();
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (segments_intersect(rect.corners[k], rect.corners[(k + 1) % 4], polygon[i],
                             polygon[(i + 1) % n]))
        return true;
  // No edge crossings: one shape is inside the other or they are apart.
  if (point_in_polygon(rect.corners[0], polygon)) return true;
  return !polygon.empty() && point_in_rect(polygon[0], rect);
}

bool rects_intersect(const LinkRect& a, const LinkRect& b) {
  // Separating axis test over the edge normals of both rectangles.
  for (const LinkRect* r : {&a, &b}) {
    for (std::size_t k = 0; k < 2; ++k) {
      const Point2 edge = r->corners[k + 1] - r->corners[k];
      const Point2 axis(-edge.y(), edge.x());
      double amin = INFINITY, amax = -INFINITY, bmin = INFINITY, bmax = -INFINITY;
      for (const auto& c : a.corners) {
        amin = std::min(amin, axis.dot(c));
        amax = std::max(amax, axis.dot(c));
      }
      for (const auto& c : b.corners) {
        bmin = std::min(bmin, axis.dot(c));
        bmax = std::max(bmax, axis.dot(c));
      }
      if (amax < bmin || bmax < amin) return false;
    }
  }
  return true;
}

std::optional<Contact> CollisionReport::first() const {
  if (contacts.empty()) return std::nullopt;
  return contacts.front();
}

CollisionReport collides(const Scene& scene, const RobotSpec& spec, const JointVector& theta,
                         const Point2& base) {
  if (theta.size() != spec.link_count) throw DimensionError("theta does not match the robot");
  const Footprint fp = robot_footprint(spec, theta, base);
  CollisionReport report;
  for (std::size_t l = 0; l < fp.links.size(); ++l)
    for (std::size_t o = 0; o < scene.obstacles.size(); ++o)
      if (rect_intersects_polygon(fp.links[l], scene.obstacles[o].vertices))
        report.contacts.push_back({static_cast<int>(l) + 1, static_cast<int>(o)});
  for (std::size_t i = 0; i < fp.links.size(); ++i)
    for (std::size_t j = i + 2; j < fp.links.size(); ++j)
      if (rects_intersect(fp.links[i], fp.links[j]))
        report.self_contacts.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1});
  report.collides = !report.contacts.empty();
  return report;
}

bool can_grasp(const RobotSpec& spec, const JointVector& theta, const Scene& scene) {
  const Pose2 tip = endpoint_pose(spec.link_length, theta);
  return std::hypot(tip.x - scene.target.center.x(), tip.y - scene.target.center.y()) <=
         scene.grasp_radius;
}

Scene narrow_pass_scene(const RobotSpec& spec) {
  if (spec.link_count != 10 || std::abs(spec.link_length - 0.05) > 1e-12)
    throw ParameterError("the narrow-pass scene is laid out for 10 links of 5 cm");
  const double l = spec.link_length;
  const double axis = 5.0 * l;
  const double half_gap = kPassWidth / 2.0;
  const double top = -0.010;
  const double bottom = -0.035;
  Scene scene;
  scene.name = "narrow_pass";
  scene.obstacles.push_back(
      {"left wall", {{0.0, bottom}, {axis - half_gap, bottom}, {axis - half_gap, top}, {0.0, top}}});
  scene.obstacles.push_back({"right wall",
                             {{axis + half_gap, bottom},
                              {10.0 * l, bottom},
                              {10.0 * l, top},
                              {axis + half_gap, top}}});
  scene.target = {{0.3811390037890724, 0.057769725863528715}, 0.01};
  scene.grasp_radius = 0.015;
  scene.pass_width = kPassWidth;
  scene.display_scale = 1600.0;
  return scene;
}

}  // namespace masr
