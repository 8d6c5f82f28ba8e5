#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "masr/cost_model.hpp"
#include "masr/scene.hpp"

using namespace masr;
using std::numbers::pi;

namespace {

const std::string kRoot = MASR_SOURCE_DIR;

std::vector<Point2> box(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// Horizontal 15 mm slot around the x axis between x = 0.1 and 0.2.
Scene slot_scene() {
  Scene s;
  s.name = "slot";
  s.obstacles = {{"upper", box(0.1, 0.0075, 0.2, 0.05)}, {"lower", box(0.1, -0.05, 0.2, -0.0075)}};
  s.target.center = Point2(0.45, 0.0);
  s.pass_width = 0.015;
  return s;
}

// Sampling oracle: any sample point of a link rectangle inside a polygon.
bool sampled_contact(const Scene& scene, const RobotSpec& spec, const JointVector& theta) {
  const Footprint fp = robot_footprint(spec, theta);
  for (const auto& r : fp.links) {
    const Point2 o = r.corners[0], u = r.corners[1] - o, v = r.corners[3] - o;
    for (int i = 0; i <= 60; ++i)
      for (int j = 0; j <= 6; ++j) {
        const Point2 p = o + (i / 60.0) * u + (j / 6.0) * v;
        for (const auto& ob : scene.obstacles) {
          const auto& poly = ob.vertices;
          bool inside = false;
          for (std::size_t a = 0, b = poly.size() - 1; a < poly.size(); b = a++)
            if ((poly[a].y() > p.y()) != (poly[b].y() > p.y()) &&
                p.x() < (poly[b].x() - poly[a].x()) * (p.y() - poly[a].y()) / (poly[b].y() - poly[a].y()) +
                            poly[a].x())
              inside = !inside;
          if (inside) return true;
        }
      }
  }
  return false;
}

}  // namespace

TEST(Footprint, StraightChain) {
  const RobotSpec spec;
  const Footprint fp = robot_footprint(spec, JointVector::Zero(10));
  ASSERT_EQ(fp.links.size(), 10u);
  EXPECT_TRUE(fp.links[0].corners[0].isApprox(Point2(0, -0.005)));
  EXPECT_TRUE(fp.links[9].corners[2].isApprox(Point2(0.5, 0.005)));
}

TEST(Collision, SlotClearance) {
  const RobotSpec spec;
  const Scene s = slot_scene();
  EXPECT_FALSE(collides(s, spec, JointVector::Zero(10)).collides);
  const CollisionReport hit = collides(s, spec, JointVector::Zero(10), Point2(0, 0.004));
  EXPECT_TRUE(hit.collides);
  ASSERT_TRUE(hit.first());
  EXPECT_EQ(hit.first()->obstacle, 0);
  EXPECT_EQ(hit.first()->link, 2);  // its tip edge touches the wall face at x = 0.1
}

TEST(Collision, TouchingCounts) {
  const RobotSpec spec;
  Scene s = slot_scene();
  s.obstacles = {{"touch", box(0.1, 0.005, 0.2, 0.05)}};
  EXPECT_TRUE(collides(s, spec, JointVector::Zero(10)).collides);
}

TEST(Collision, MatchesSamplingOracle) {
  const RobotSpec spec;
  const Scene s = load_scene(kRoot + "/scenes/narrow_pass.json");
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> U(-pi / 4, pi / 4);
  int disagreements = 0, hits = 0;
  for (int k = 0; k < 300; ++k) {
    JointVector th(10);
    for (int i = 0; i < 10; ++i) th[i] = U(rng) - (i == 0 ? 0.35 : 0.0);
    const bool exact = !collides(s, spec, th).contacts.empty();
    const bool sampled = sampled_contact(s, spec, th);
    hits += exact;
    // Sampling can only miss contacts, never invent them.
    if (sampled && !exact) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(hits, 0);
}

TEST(Collision, SelfContact) {
  const RobotSpec spec;
  JointVector th = JointVector::Zero(10);
  for (int i = 1; i < 10; ++i) th[i] = 0.75;  // curls past a full turn
  Scene empty = slot_scene();
  empty.obstacles.clear();
  const CollisionReport r = collides(empty, spec, th);
  EXPECT_FALSE(r.self_contacts.empty());
  for (const auto& c : r.self_contacts) EXPECT_LT(c.first, c.second - 1);
}

TEST(Geometry, Primitives) {
  const auto sq = box(0, 0, 1, 1);
  EXPECT_TRUE(point_in_polygon(Point2(0.5, 0.5), sq));
  EXPECT_TRUE(point_in_polygon(Point2(1, 0.5), sq));
  EXPECT_FALSE(point_in_polygon(Point2(1.01, 0.5), sq));
  LinkRect a{{Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)}};
  LinkRect b{{Point2(0.5, 0.5), Point2(2, 0.5), Point2(2, 2), Point2(0.5, 2)}};
  LinkRect c{{Point2(3, 3), Point2(4, 3), Point2(4, 4), Point2(3, 4)}};
  EXPECT_TRUE(rects_intersect(a, b));
  EXPECT_FALSE(rects_intersect(a, c));
  EXPECT_TRUE(rect_intersects_polygon(a, box(0.2, 0.2, 0.3, 0.3)));  // contained
  EXPECT_FALSE(rect_intersects_polygon(a, box(2, 2, 3, 3)));
}

TEST(Scene, JsonRoundTripAndValidation) {
  const Scene s = load_scene(kRoot + "/scenes/narrow_pass.json");
  const Scene back = scene_from_json(scene_to_json(s));
  EXPECT_EQ(scene_to_json(back), scene_to_json(s));
  EXPECT_EQ(s.obstacles.size(), 2u);
  EXPECT_NEAR(*s.pass_width, 0.015, 1e-12);
  EXPECT_THROW(scene_from_json(R"({"name":"x","obstacles":[{"name":"a","vertices":[[0,0],[1,1]]}]})"), Error);
  EXPECT_EQ(scene_to_json(narrow_pass_scene(RobotSpec{})), scene_to_json(s));
}

TEST(Scene, PassGapBetweenWalls) {
  const Scene s = load_scene(kRoot + "/scenes/narrow_pass.json");
  double left = -INFINITY, right = INFINITY;
  for (const auto& ob : s.obstacles) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& v : ob.vertices) lo = std::min(lo, v.x()), hi = std::max(hi, v.x());
    if (hi <= 0.25) left = std::max(left, hi);
    else right = std::min(right, lo);
  }
  EXPECT_NEAR(right - left, 0.015, 1e-12);
}

TEST(Grasp, BundledReachingEndsAtTarget) {
  const RobotSpec spec;
  const Scene s = load_scene(kRoot + "/scenes/narrow_pass.json");
  ReplayOptions o;
  o.limits = LimitCheck::kOff;
  const ReplayResult r = replay(load_plan(kRoot + "/data/reach_and_return.plan"), spec, straight_state(spec), o);
  const auto end = r.phase_end("reaching");
  ASSERT_TRUE(end);
  EXPECT_TRUE(can_grasp(spec, r.frames[*end].theta, s));
  EXPECT_FALSE(can_grasp(spec, JointVector::Zero(10), s));
  for (const auto& f : r.frames) ASSERT_FALSE(collides(s, spec, f.theta).collides) << "step " << f.step;
}

TEST(Scene, Translated) {
  const Scene s = slot_scene().translated(Point2(1, 2));
  EXPECT_TRUE(s.target.center.isApprox(Point2(1.45, 2)));
  EXPECT_TRUE(s.obstacles[0].vertices[0].isApprox(Point2(1.1, 2.0075)));
}
