#include "masr/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include <json.hpp>

#include "masr/io.hpp"

namespace masr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::remainder(a, kTwoPi);
  return a <= -kPi ? a + kTwoPi : a;
}

double wrapped_distance(const JointVector& a, const JointVector& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(wrap(a[i] - b[i])));
  return worst;
}

JointVector unwrap_near(JointVector theta, const JointVector& reference) {
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    theta[i] += kTwoPi * std::round((reference[i] - theta[i]) / kTwoPi);
  return theta;
}

void require_three_links(const RobotSpec& spec) {
  if (spec.link_count != 3) throw DimensionError("closed-form inverse kinematics needs N = 3");
  if (!(spec.link_length > 0.0)) throw ParameterError("link length must be positive");
}

// Two-link solution from the joint at `origin` with incoming heading `base`.
// Returns (theta_a, theta_b) relative angles, or nothing if out of reach.
std::optional<std::pair<double, double>> two_link(double link_length, const Point2& origin,
                                                  double base, const Point2& target,
                                                  ElbowBranch branch, double slack) {
  const Point2 d = target - origin;
  const double l2 = link_length * link_length;
  double c = (d.squaredNorm() - 2.0 * l2) / (2.0 * l2);
  if (c > 1.0 + slack) return std::nullopt;
  c = std::clamp(c, -1.0, 1.0);
  const double second = branch == ElbowBranch::kUp ? -std::acos(c) : std::acos(c);
  const double first = std::atan2(d.y(), d.x()) - base -
                       std::atan2(link_length * std::sin(second),
                                  link_length + link_length * std::cos(second));
  return std::make_pair(wrap(first), second);
}

// One closed loop of the self-motion manifold, parametrized on [0, 1).
using Loop = std::function<JointVector(double)>;

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int k = 0; k < 200 && b - a > 1e-14; ++k) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

struct Candidate {
  JointVector theta;
  double det;
};

bool prefer_first(const Candidate& a, const Candidate& b) {
  // Used only on ties: theta_1 >= 0 wins.
  return wrap(a.theta[0]) >= 0.0 && wrap(b.theta[0]) < 0.0;
}

Point2 to_point(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected a point [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::ordered_json from_point(const Point2& p) { return nlohmann::ordered_json::array({p.x(), p.y()}); }

JointVector to_vector(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("expected a non-empty angle list");
  JointVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

nlohmann::ordered_json from_vector(const JointVector& v) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::string describe_u(double u) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", u);
  return buf;
}

}  // namespace

JointVector ik_3link(const RobotSpec& spec, const Pose2& target, ElbowBranch branch) {
  require_three_links(spec);
  const double l = spec.link_length;
  const Point2 wrist(target.x - l * std::cos(target.heading), target.y - l * std::sin(target.heading));
  const auto sol = two_link(l, Point2::Zero(), 0.0, wrist, branch, 1e-9);
  if (!sol) throw ReachabilityError("pose out of reach of the 3-link arm");
  JointVector theta(3);
  theta << sol->first, sol->second, target.heading - sol->first - sol->second;
  return theta;
}

std::optional<JointVector> self_motion_point(const RobotSpec& spec, const Point2& target,
                                             double theta1, ElbowBranch branch) {
  require_three_links(spec);
  const double l = spec.link_length;
  const Point2 p1(l * std::cos(theta1), l * std::sin(theta1));
  const auto sol = two_link(l, p1, theta1, target, branch, 1e-9);
  if (!sol) return std::nullopt;
  JointVector theta(3);
  theta << theta1, sol->first, sol->second;
  return theta;
}

RedundancyResult resolve_redundancy(const RobotSpec& spec, const Point2& target,
                                    const JointVector& seed, const RedundancyOptions& options) {
  require_three_links(spec);
  if (seed.size() != 3) throw DimensionError("seed must have 3 joints");
  if (options.grid_points < 8) throw ParameterError("grid needs at least 8 points");
  const double l = spec.link_length;
  const double r = target.norm();
  const double psi = std::atan2(target.y(), target.x());
  if (r > 3.0 * l * (1.0 + 1e-12)) throw ReachabilityError("target out of reach");
  if (r >= 3.0 * l * (1.0 - 1e-12)) {
    RedundancyResult out;
    out.theta = unwrap_near(JointVector::Unit(3, 0) * psi, seed);
    out.manipulability = manipulability(l, out.theta);
    out.singular = true;
    return out;
  }

  auto at = [&](double phi, ElbowBranch b) {
    const Point2 p1(l * std::cos(phi), l * std::sin(phi));
    const auto sol = two_link(l, p1, phi, target, b, std::numeric_limits<double>::infinity());
    JointVector theta(3);
    theta << wrap(phi), sol->first, sol->second;
    return theta;
  };

  std::vector<Loop> loops;
  const double bound = r == 0.0 ? -std::numeric_limits<double>::infinity()
                                : (r * r - 3.0 * l * l) / (2.0 * r * l);
  if (bound <= -1.0) {
    for (ElbowBranch b : {ElbowBranch::kUp, ElbowBranch::kDown})
      loops.push_back([=](double s) { return at(-kPi + kTwoPi * s, b); });
  } else {
    const double half = std::acos(bound);
    loops.push_back([=](double s) {
      return s < 0.5 ? at(psi - half + 4.0 * half * s, ElbowBranch::kUp)
                     : at(psi + half - 4.0 * half * (s - 0.5), ElbowBranch::kDown);
    });
  }

  std::vector<Candidate> candidates;
  const std::size_t g = options.grid_points;
  for (const Loop& loop : loops) {
    auto value = [&](double s) {
      s -= std::floor(s);
      return manipulability(l, loop(s));
    };
    std::vector<double> det(g);
    for (std::size_t k = 0; k < g; ++k) det[k] = value(static_cast<double>(k) / g);
    for (std::size_t k = 0; k < g; ++k) {
      const double prev = det[(k + g - 1) % g];
      const double next = det[(k + 1) % g];
      if (!(det[k] >= prev && det[k] > next)) continue;
      const double s0 = static_cast<double>(k) / g;
      double s = golden_max(value, s0 - 1.0 / g, s0 + 1.0 / g);
      s -= std::floor(s);
      JointVector theta = loop(s);
      candidates.push_back({theta, manipulability(l, theta)});
    }
    if (candidates.empty()) candidates.push_back({loop(0.0), det[0]});
  }

  const double scale = 1.0 + std::abs(seed.maxCoeff());
  const Candidate* best = nullptr;
  double best_key = 0.0;
  for (const auto& c : candidates) {
    const double key =
        options.mode == RedundancyMode::kGlobal ? -c.det : wrapped_distance(c.theta, seed);
    const double tie = 1e-12 * (options.mode == RedundancyMode::kGlobal ? 1.0 + std::abs(c.det) : scale);
    if (!best || key < best_key - tie || (std::abs(key - best_key) <= tie && prefer_first(c, *best))) {
      best = &c;
      best_key = key;
    }
  }
  RedundancyResult out;
  out.theta = unwrap_near(best->theta, seed);
  out.manipulability = best->det;
  return out;
}

void TaskSpec::validate() const {
  if (samples < 2) throw TaskError("a task needs at least 2 samples");
  if (const auto* p = std::get_if<PointToPoint>(&geometry)) {
    if (p->theta_a.size() != p->theta_b.size() || p->theta_a.size() == 0)
      throw TaskError("point-to-point endpoints must have equal, non-zero length");
  } else if (const auto* z = std::get_if<TraceZ>(&geometry)) {
    if (z->corners.size() < 2) throw TaskError("a traced polyline needs at least 2 corners");
  } else if (const auto* c = std::get_if<TraceCircle>(&geometry)) {
    if (!(c->radius > 0.0)) throw TaskError("circle radius must be positive");
  }
}

TaskSpec cup_task() {
  return {"cup", LineTransport{{0.08, 0.18}, {0.16, 0.18}, kPi / 2.0}, 401, three_link_spec()};
}

TaskSpec z_task() {
  return {"z", TraceZ{{{0.05, 0.22}, {0.15, 0.22}, {0.05, 0.12}, {0.15, 0.12}}}, 601,
          three_link_spec()};
}

TaskSpec circle_task() {
  return {"circle", TraceCircle{{0.10, 0.20}, 0.02}, 401, three_link_spec()};
}

TaskSpec task_from_json(const std::string& text) {
  TaskSpec task;
  try {
    const auto doc = nlohmann::json::parse(text);
    task.name = doc.value("name", "");
    task.samples = doc.value("samples", std::size_t{401});
    const std::string type = doc.at("type").get<std::string>();
    if (type == "point_to_point") {
      task.geometry = PointToPoint{to_vector(doc.at("theta_a")), to_vector(doc.at("theta_b"))};
    } else if (type == "line_transport") {
      task.geometry = LineTransport{to_point(doc.at("start")), to_point(doc.at("end")),
                                    doc.at("heading_rad").get<double>()};
    } else if (type == "trace_z") {
      TraceZ z;
      for (const auto& c : doc.at("corners")) z.corners.push_back(to_point(c));
      task.geometry = z;
    } else if (type == "trace_circle") {
      task.geometry = TraceCircle{to_point(doc.at("center")), doc.at("radius").get<double>()};
    } else {
      throw FormatError("unknown task type '" + type + "'");
    }
    if (doc.contains("robot")) task.robot = robot_spec_from_json(doc.at("robot").dump());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid task file: ") + e.what());
  }
  task.validate();
  return task;
}

std::string task_to_json(const TaskSpec& task) {
  nlohmann::ordered_json doc;
  doc["name"] = task.name;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PointToPoint>) {
          doc["type"] = "point_to_point";
          doc["theta_a"] = from_vector(g.theta_a);
          doc["theta_b"] = from_vector(g.theta_b);
        } else if constexpr (std::is_same_v<T, LineTransport>) {
          doc["type"] = "line_transport";
          doc["start"] = from_point(g.start);
          doc["end"] = from_point(g.end);
          doc["heading_rad"] = g.heading;
        } else if constexpr (std::is_same_v<T, TraceZ>) {
          doc["type"] = "trace_z";
          doc["corners"] = nlohmann::ordered_json::array();
          for (const auto& c : g.corners) doc["corners"].push_back(from_point(c));
        } else {
          doc["type"] = "trace_circle";
          doc["center"] = from_point(g.center);
          doc["radius"] = g.radius;
        }
      },
      task.geometry);
  doc["samples"] = task.samples;
  if (task.robot) doc["robot"] = nlohmann::ordered_json::parse(robot_spec_to_json(*task.robot));
  return doc.dump(2) + "\n";
}

TaskSpec load_task(const std::string& path) { return task_from_json(read_text_file(path)); }

Point2 task_point(const TaskSpec& task, double u) {
  u = std::clamp(u, 0.0, 1.0);
  if (const auto* line = std::get_if<LineTransport>(&task.geometry))
    return line->start + u * (line->end - line->start);
  if (const auto* c = std::get_if<TraceCircle>(&task.geometry))
    return c->center + c->radius * Point2(std::cos(kTwoPi * u), std::sin(kTwoPi * u));
  if (const auto* z = std::get_if<TraceZ>(&task.geometry)) {
    double total = 0.0;
    for (std::size_t k = 1; k < z->corners.size(); ++k)
      total += (z->corners[k] - z->corners[k - 1]).norm();
    double remaining = u * total;
    for (std::size_t k = 1; k < z->corners.size(); ++k) {
      const double len = (z->corners[k] - z->corners[k - 1]).norm();
      if (remaining <= len || k + 1 == z->corners.size()) {
        const double f = len > 0.0 ? std::min(remaining / len, 1.0) : 0.0;
        return z->corners[k - 1] + f * (z->corners[k] - z->corners[k - 1]);
      }
      remaining -= len;
    }
    return z->corners.back();
  }
  throw TaskError("task has no workspace path");
}

CSpaceCurve reference_trajectory(const TaskSpec& task, const RobotSpec& spec,
                                 const TrajectoryOptions& options) {
  task.validate();
  if (const auto* p = std::get_if<PointToPoint>(&task.geometry)) {
    if (p->theta_a.size() != spec.link_count)
      throw TaskError("point-to-point endpoints do not match the robot");
    return CSpaceCurve::segment(p->theta_a, p->theta_b);
  }

  const std::size_t n = task.samples;
  std::vector<JointVector> samples;
  samples.reserve(n);
  const auto* line = std::get_if<LineTransport>(&task.geometry);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(n - 1);
    const Point2 p = task_point(task, u);
    JointVector theta;
    try {
      if (line) {
        theta = ik_3link(spec, {p.x(), p.y(), line->heading});
        if (!samples.empty()) theta = unwrap_near(theta, samples.back());
      } else if (samples.empty()) {
        RedundancyOptions global;
        global.mode = RedundancyMode::kGlobal;
        theta = resolve_redundancy(spec, p, JointVector::Zero(3), global).theta;
      } else {
        theta = resolve_redundancy(spec, p, samples.back()).theta;
      }
    } catch (const ReachabilityError& e) {
      throw TaskError("sample at u=" + describe_u(u) + " is unreachable: " + e.what());
    }
    if (std::holds_alternative<TraceCircle>(task.geometry) && k + 1 == n) {
      // Close the loop exactly; the last point repeats the first.
      theta = samples.front();
      if ((theta - samples.back()).cwiseAbs().maxCoeff() > options.max_jump)
        throw TaskError("closed trajectory does not return to its start");
    }
    if (!samples.empty() && (theta - samples.back()).cwiseAbs().maxCoeff() > options.max_jump)
      throw TaskError("trajectory jumps at u=" + describe_u(u));
    samples.push_back(std::move(theta));
  }
  return CSpaceCurve::from_samples(std::move(samples));
}

}  // namespace masr
