#include "masr/cli.hpp"

#include <csignal>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "masr/approximation.hpp"
#include "masr/cost_model.hpp"
#include "masr/error_metrics.hpp"
#include "masr/io.hpp"
#include "masr/scene.hpp"
#include "masr/svg.hpp"
#include "masr/tasks.hpp"
#ifdef MASR_HAVE_SERVER
#include "masr/server.hpp"
#endif

namespace masr {

namespace {

namespace fs = std::filesystem;

constexpr double kDegree = std::numbers::pi / 180.0;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain failure that has already been reported.
struct Failure {};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw UsageError("malformed " + what + " list: '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("empty " + what + " list");
  return values;
}

struct Globals {
  std::string spec_path;
  std::string out_dir;
  std::string formats = "csv";
  bool degrees = false;

  std::set<std::string> format_set() const {
    std::set<std::string> out;
    std::stringstream in(formats);
    for (std::string f; std::getline(in, f, ',');) {
      if (f != "csv" && f != "svg" && f != "json") throw UsageError("unknown format '" + f + "'");
      out.insert(f);
    }
    return out;
  }

  bool wants(const std::string& format) const { return format_set().count(format) > 0; }

  void write(const std::string& name, const std::string& contents) const {
    if (out_dir.empty()) return;
    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / name).string(), contents);
  }

  double angle(double v) const { return degrees ? v * kDegree : v; }
};

TaskSpec resolve_task(const std::string& name) {
  std::error_code ec;
  if (fs::is_regular_file(name, ec)) return load_task(name);
  if (name == "cup") return cup_task();
  if (name == "z") return z_task();
  if (name == "circle") return circle_task();
  throw UsageError("unknown task '" + name + "' (expected a file or cup, z, circle)");
}

RobotSpec task_robot(const TaskSpec& task, const Globals& g) {
  if (!g.spec_path.empty()) return load_robot_spec(g.spec_path);
  if (task.robot) return *task.robot;
  return three_link_spec();
}

ActuatorPlacement first_joints(int count) {
  std::vector<int> joints;
  for (int j = 1; j <= count; ++j) joints.push_back(j);
  return ActuatorPlacement(joints);
}

std::vector<Point2> endpoint_trace(double link_length, const std::vector<JointVector>& thetas) {
  std::vector<Point2> out;
  out.reserve(thetas.size());
  for (const auto& t : thetas) {
    const Pose2 p = endpoint_pose(link_length, t);
    out.emplace_back(p.x, p.y);
  }
  return out;
}

std::string trace_svg(const RobotSpec& spec, const CSpaceCurve& curve, const PiecewiseLinearPath& path) {
  const auto reference = endpoint_trace(spec.link_length, curve.sample(1000));
  const auto approx = endpoint_trace(spec.link_length, path.dense_samples(2000));
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  for (const auto* pts : {&reference, &approx})
    for (const auto& p : *pts) {
      min_x = std::min(min_x, p.x());
      min_y = std::min(min_y, p.y());
      max_x = std::max(max_x, p.x());
      max_y = std::max(max_y, p.y());
    }
  const double pad = 0.05 * std::max(max_x - min_x, max_y - min_y);
  SvgDocument svg(min_x - pad, min_y - pad, max_x + pad, max_y + pad);
  svg.polyline(approx, "#d03030", 1.0);
  svg.polyline(reference, "#3060d0", 2.0);
  svg.circle(Point2::Zero(), 0.004, "#000000");
  return svg.str();
}

struct ApproxRun {
  PiecewiseLinearPath path;
  VerificationResult verification;
  TraversalCount traversals;
  EndpointError endpoint;
  std::optional<PoseBounds> bounds;
  std::optional<double> position_bound;
};

ApproxRun run_approximation(const CSpaceCurve& curve, const RobotSpec& spec, int actuators,
                            double delta) {
  ApproxRun run;
  run.path = approximation_curve(curve, actuators, delta);
  run.verification = verify_delta_approx(run.path, curve, delta);
  run.traversals = count_traversals(run.path, first_joints(actuators));
  run.endpoint = empirical_endpoint_error(run.path, curve, spec);
  if (spec.link_count * delta <= std::numbers::pi / 2.0) {
    run.position_bound = endpoint_error_bound(spec.link_count, spec.link_length, delta);
    run.bounds = planar_pose_bounds(spec.link_count, spec.link_length, delta);
  }
  return run;
}

// Time with a constant cost per radian turned and per actuator shift;
// simultaneous rotations by several actuators overlap.
double traversal_time(const TraversalCount& t, double per_radian = 1.0, double per_shift = 1.0) {
  return per_radian * t.total_rotation_time_basis() + per_shift * static_cast<double>(t.steps);
}

int cmd_fk(const Globals& g, const std::string& theta_text, std::ostream& out) {
  JointVector theta;
  {
    const auto values = parse_list(theta_text, "theta");
    theta.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) theta[static_cast<Eigen::Index>(i)] = g.angle(values[i]);
  }
  RobotSpec spec;
  if (!g.spec_path.empty()) {
    spec = load_robot_spec(g.spec_path);
    if (spec.link_count != theta.size())
      throw DimensionError("theta has " + std::to_string(theta.size()) + " entries, robot has " +
                           std::to_string(spec.link_count) + " joints");
  } else {
    spec.link_count = static_cast<int>(theta.size());
  }
  const auto points = forward_kinematics(spec.link_length, theta);
  const Pose2 pose = endpoint_pose(spec.link_length, theta);
  std::ostringstream csv;
  csv << "link,x,y\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    csv << i + 1 << ',' << num(points[i].x()) << ',' << num(points[i].y()) << '\n';
  out << csv.str();
  out << "endpoint x=" << num(pose.x) << " y=" << num(pose.y) << " heading=" << num(pose.heading)
      << " rad (" << num(pose.heading / kDegree) << " deg)\n";
  if (!spec.within_limits(theta)) out << "note: joint limit exceeded\n";
  if (g.wants("csv")) g.write("fk.csv", csv.str());
  if (g.wants("svg")) g.write("chain.svg", chain_svg(spec, theta));
  if (g.wants("json")) {
    nlohmann::ordered_json doc;
    doc["endpoint"] = {pose.x, pose.y, pose.heading};
    doc["points"] = nlohmann::ordered_json::array();
    for (const auto& p : points) doc["points"].push_back({p.x(), p.y()});
    g.write("fk.json", doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_approx(const Globals& g, const std::string& task_name, int actuators, double delta_in,
               std::ostream& out) {
  const TaskSpec task = resolve_task(task_name);
  const RobotSpec spec = task_robot(task, g);
  const double delta = g.angle(delta_in);
  if (!(delta > 0.0)) throw UsageError("delta must be positive");
  if (actuators < 1 || actuators > spec.link_count) throw UsageError("actuator count must lie in 1..N");
  const CSpaceCurve curve = reference_trajectory(task, spec);
  const ApproxRun run = run_approximation(curve, spec, actuators, delta);
  const Plan plan = plan_from_path(run.path, first_joints(actuators));

  std::ostringstream report;
  report << "task " << (task.name.empty() ? task_name : task.name) << '\n'
         << "actuators " << actuators << '\n'
         << "delta " << num(delta) << '\n'
         << "verified " << (run.verification.ok ? "true" : "false") << '\n'
         << "worst " << num(run.verification.worst) << '\n'
         << "segments " << run.path.segment_count() << '\n'
         << "traversals " << run.traversals.steps << '\n'
         << "relocations " << run.traversals.relocations << '\n'
         << "link_moves " << run.traversals.total_link_moves() << '\n'
         << "total_time_s " << num(traversal_time(run.traversals)) << '\n'
         << "empirical_position_m " << num(run.endpoint.one_sided) << '\n'
         << "empirical_position_symmetric_m " << num(run.endpoint.symmetric) << '\n'
         << "empirical_orientation_rad " << num(run.endpoint.orientation) << '\n'
         << "bound_position_m " << (run.position_bound ? num(*run.position_bound) : "n/a") << '\n'
         << "bound_orientation_rad " << (run.bounds ? num(run.bounds->orientation) : "n/a") << '\n';
  out << report.str();
  if (g.wants("csv")) g.write("path.csv", run.path.to_csv());
  g.write("path.plan", format_plan(plan));
  g.write("report.txt", report.str());
  if (g.wants("svg")) g.write("trace.svg", trace_svg(spec, curve, run.path));
  if (g.wants("json")) {
    nlohmann::ordered_json doc;
    doc["verified"] = run.verification.ok;
    doc["worst"] = run.verification.worst;
    doc["traversals"] = run.traversals.steps;
    doc["link_moves"] = run.traversals.total_link_moves();
    g.write("report.json", doc.dump(2) + "\n");
  }
  if (!run.verification.ok) {
    out << "verification failed: worst distance " << num(run.verification.worst) << " exceeds delta "
        << num(delta) << '\n';
    return 1;
  }
  return 0;
}

int cmd_sweep(const Globals& g, const std::string& task_name, const std::string& actuator_text,
              const std::string& delta_text, std::ostream& out) {
  const TaskSpec task = resolve_task(task_name);
  const RobotSpec spec = task_robot(task, g);
  std::vector<int> actuator_list;
  for (double m : parse_list(actuator_text, "actuator")) {
    if (m != std::floor(m) || m < 1 || m > spec.link_count) throw UsageError("actuator counts must be integers in 1..N");
    actuator_list.push_back(static_cast<int>(m));
  }
  std::vector<double> deltas;
  for (double d : parse_list(delta_text, "delta")) {
    if (!(g.angle(d) > 0.0)) throw UsageError("delta values must be positive");
    deltas.push_back(g.angle(d));
  }
  const CSpaceCurve curve = reference_trajectory(task, spec);
  const std::string name = task.name.empty() ? task_name : task.name;

  struct Row {
    double delta;
    int m;
    ApproxRun run;
  };
  std::vector<Row> rows;
  std::map<double, std::size_t> two_actuator;
  for (double delta : deltas)
    for (int m : actuator_list) {
      rows.push_back({delta, m, run_approximation(curve, spec, m, delta)});
      if (m == 2) two_actuator[delta] = rows.back().run.traversals.steps;
    }

  std::ostringstream csv;
  csv << "task,delta,actuators,verified,worst,traversals,ratio_to_two_actuators,relocations,"
         "link_moves,rotation_rad,total_time_s,empirical_pos,empirical_pos_symmetric,empirical_ori,"
         "bound_pos,bound_ori\n";
  bool all_ok = true;
  for (const auto& r : rows) {
    const auto& t = r.run.traversals;
    all_ok = all_ok && r.run.verification.ok;
    const auto two = two_actuator.find(r.delta);
    csv << name << ',' << num(r.delta) << ',' << r.m << ',' << (r.run.verification.ok ? "true" : "false")
        << ',' << num(r.run.verification.worst) << ',' << t.steps << ','
        << (two != two_actuator.end() && two->second > 0
                ? num(static_cast<double>(t.steps) / static_cast<double>(two->second))
                : "")
        << ',' << t.relocations << ',' << t.total_link_moves() << ',' << num(t.total_rotation_time_basis())
        << ',' << num(traversal_time(t)) << ',' << num(r.run.endpoint.one_sided) << ','
        << num(r.run.endpoint.symmetric) << ',' << num(r.run.endpoint.orientation) << ','
        << (r.run.position_bound ? num(*r.run.position_bound) : "") << ','
        << (r.run.bounds ? num(r.run.bounds->orientation) : "") << '\n';
  }
  out << csv.str();
  g.write("sweep.csv", csv.str());
  return all_ok ? 0 : 1;
}

int cmd_replay(const Globals& g, const std::string& plan_path, const std::string& scene_path,
               const std::string& limits, std::ostream& out) {
  const Plan plan = load_plan(plan_path);
  const RobotSpec spec = g.spec_path.empty() ? RobotSpec{} : load_robot_spec(g.spec_path);
  std::optional<Scene> scene;
  if (!scene_path.empty()) scene = load_scene(scene_path);

  ReplayOptions options;
  if (limits == "report")
    options.limits = LimitCheck::kOff;
  else if (limits == "step-end")
    options.limits = LimitCheck::kStepEnd;
  else if (limits == "strict")
    options.limits = LimitCheck::kStrict;
  else
    throw UsageError("limits must be report, step-end or strict");

  ReplayResult result;
  try {
    result = replay(plan, spec, straight_state(spec), options);
  } catch (const InfeasiblePlanError& e) {
    out << "infeasible plan at step " << e.step() << ": " << e.what() << '\n';
    throw Failure{};
  } catch (const JointLimitError& e) {
    out << "joint limit exceeded at step " << e.step() << ": " << e.what() << '\n';
    throw Failure{};
  }

  const PlanSummary summary = summarize(plan);
  const CostParams params;
  out << "steps " << summary.steps << '\n';
  out << "turning_deg " << num(summary.turning_degrees);
  if (plan.declared.turning_degrees && *plan.declared.turning_degrees != summary.turning_degrees)
    out << " (declared total " << num(*plan.declared.turning_degrees) << " differs from the recount)";
  out << '\n';
  out << "translation_links " << summary.translation_links;
  if (plan.declared.translation_links && *plan.declared.translation_links != summary.translation_links)
    out << " (declared total " << *plan.declared.translation_links << " differs from the recount)";
  out << '\n';
  out << "total_time_s " << num(total_time(summary, params, spec.link_length));
  if (plan.declared.turning_degrees && *plan.declared.turning_degrees != summary.turning_degrees) {
    PlanSummary declared = summary;
    declared.turning_degrees = *plan.declared.turning_degrees;
    out << " (" << num(total_time(declared, params, spec.link_length)) << " with the declared turning)";
  }
  out << '\n';
  out << "total_energy " << num(total_energy(plan, params, spec.link_length)) << '\n';

  out << "limit_violations " << result.violations.size() << '\n';
  for (const auto& v : result.violations)
    out << "  step " << v.step << " joint " << v.joint << " at " << num(v.degrees) << " deg\n";

  bool collision_free = true;
  if (scene) {
    std::optional<std::size_t> first_hit;
    std::optional<std::size_t> grasp_step;
    std::size_t self_frames = 0;
    for (std::size_t k = 0; k < result.frames.size(); ++k) {
      const auto& f = result.frames[k];
      const CollisionReport report = collides(*scene, spec, f.theta);
      if (report.collides && !first_hit) first_hit = k;
      if (!report.self_contacts.empty()) ++self_frames;
      if (!grasp_step && can_grasp(spec, f.theta, *scene)) grasp_step = f.step;
    }
    collision_free = !first_hit;
    out << "states_checked " << result.frames.size() << '\n';
    out << "collision_free " << (collision_free ? "true" : "false") << '\n';
    if (first_hit) {
      const auto& f = result.frames[*first_hit];
      const auto contact = collides(*scene, spec, f.theta).first();
      out << "  first contact at step " << f.step << ": link " << contact->link << " with obstacle '"
          << scene->obstacles[static_cast<std::size_t>(contact->obstacle)].name << "'\n";
    }
    out << "self_contact_states " << self_frames << '\n';
    if (const auto end = result.phase_end("reaching"))
      out << "grasp_after_reaching "
          << (can_grasp(spec, result.frames[*end].theta, *scene) ? "true" : "false") << '\n';
    out << "grasp " << (grasp_step ? "true (first at step " + std::to_string(*grasp_step) + ")" : "false")
        << '\n';
  }

  if (g.wants("csv")) g.write("replay.csv", replay_csv(result));
  if (g.wants("svg")) {
    std::vector<JointVector> frames;
    std::vector<std::string> labels;
    const std::vector<std::size_t> wanted{0, 1, 3, 6, 8, summary.steps};
    char label = 'a';
    for (std::size_t step : wanted) {
      if (step > summary.steps) continue;
      std::size_t index = 0;
      for (std::size_t k = 0; k < result.frames.size(); ++k)
        if (result.frames[k].step <= step) index = k;
      frames.push_back(result.frames[index].theta);
      labels.push_back(std::string(1, label++) + " (after step " + std::to_string(step) + ")");
    }
    g.write("storyboard.svg", storyboard_svg(spec, frames, labels, scene ? &*scene : nullptr));
  }
  return collision_free ? 0 : 1;
}

#ifdef MASR_HAVE_SERVER
int cmd_serve(const Globals& g, const std::string& host, int port, const std::string& scene_path,
              const std::string& static_dir, const std::string& plan_dir, const std::string& scene_dir,
              std::ostream& out) {
  ServerConfig config;
  config.address = host;
  if (port < 0 || port > 65535) throw UsageError("port out of range");
  config.port = static_cast<unsigned short>(port);
  config.spec = g.spec_path.empty() ? RobotSpec{} : load_robot_spec(g.spec_path);
  config.scene = scene_path.empty() ? narrow_pass_scene(config.spec) : load_scene(scene_path);
  config.static_dir = static_dir;
  config.plan_dir = plan_dir;
  config.scene_dir = scene_dir;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  TeleopServer server(config);
  server.start();
  out << "listening on http://" << host << ':' << server.port() << " (WebSocket at /ws)" << std::endl;
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  return 0;
}
#endif

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and planning tools for serial robots driven by mobile actuators", "masr"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--spec", g.spec_path, "Robot spec JSON")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "Directory for output files");
  app.add_option("--format", g.formats, "Comma-separated output formats: csv, svg, json");

  std::string theta_text;
  auto* fk = app.add_subcommand("fk", "Forward kinematics of one configuration");
  fk->add_option("--theta", theta_text, "Comma-separated joint angles")->required();
  fk->add_flag("--deg", g.degrees, "Angles in degrees");

  std::string task = "cup";
  int actuators = 1;
  double delta = 0.1;
  auto* approx = app.add_subcommand("approx", "Approximate a task trajectory with M actuators");
  approx->add_option("--task", task, "Task JSON file or one of cup, z, circle");
  approx->add_option("--actuators,-m", actuators, "Number of mobile actuators");
  approx->add_option("--delta", delta, "Joint-space accuracy");
  approx->add_flag("--deg", g.degrees, "Delta in degrees");

  std::string actuator_list = "1,2";
  std::string delta_list = "0.01,0.02,0.05,0.1,0.2";
  auto* sweep = app.add_subcommand("sweep", "Traversals, time and error over a grid of accuracies");
  sweep->add_option("--task", task, "Task JSON file or one of cup, z, circle");
  sweep->add_option("--actuators,-m", actuator_list, "Comma-separated actuator counts");
  sweep->add_option("--deltas", delta_list, "Comma-separated accuracies");
  sweep->add_flag("--deg", g.degrees, "Accuracies in degrees");

  std::string plan_path;
  std::string scene_path;
  std::string limits = "report";
  auto* rp = app.add_subcommand("replay", "Replay a motion plan, optionally inside a scene");
  rp->add_option("--plan", plan_path, "Plan file")->required()->check(CLI::ExistingFile);
  rp->add_option("--scene", scene_path, "Scene JSON")->check(CLI::ExistingFile);
  rp->add_option("--limits", limits, "Joint-limit handling: report, step-end, strict");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir = "web";
  std::string plan_dir = "data";
  std::string scene_dir = "scenes";
  auto* serve = app.add_subcommand("serve", "Run the teleoperation service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--scene", scene_path, "Scene JSON (default: built-in narrow pass)")
      ->check(CLI::ExistingFile);
  serve->add_option("--static", static_dir, "Directory served over HTTP");
  serve->add_option("--plans", plan_dir, "Directory of plan files offered to clients");
  serve->add_option("--scenes", scene_dir, "Directory of scene files offered to clients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    g.format_set();
    if (*fk) return cmd_fk(g, theta_text, out);
    if (*approx) return cmd_approx(g, task, actuators, delta, out);
    if (*sweep) return cmd_sweep(g, task, actuator_list, delta_list, out);
    if (*rp) return cmd_replay(g, plan_path, scene_path, limits, out);
    if (*serve) {
#ifdef MASR_HAVE_SERVER
      return cmd_serve(g, host, port, scene_path, static_dir, plan_dir, scene_dir, out);
#else
      err << "error: built without the teleoperation service\n";
      return 2;
#endif
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Failure&) {
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace masr
