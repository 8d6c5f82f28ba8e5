#include "masr/teleop.hpp"

#include <cmath>

#include <json.hpp>

namespace masr {

namespace {

using nlohmann::json;

int substeps(double duration, double dt) {
  return std::max(1, static_cast<int>(std::ceil(duration / dt - 1e-9)));
}

double substep_length(int k, int count, double duration, double dt) {
  return k + 1 == count ? duration - (count - 1) * dt : dt;
}

int parse_direction(const json& args) {
  if (!args.contains("direction") || !args["direction"].is_number_integer())
    throw ProtocolError("direction must be +1 or -1");
  const int d = args["direction"].get<int>();
  if (d != 1 && d != -1) throw ProtocolError("direction must be +1 or -1");
  return d;
}

double parse_duration(const json& args) {
  if (!args.contains("duration") || !args["duration"].is_number())
    throw ProtocolError("duration is required");
  const double t = args["duration"].get<double>();
  if (!(t > 0.0 && t <= kMaxCommandDuration))
    throw ProtocolError("duration must lie in (0, 10] seconds");
  return t;
}

json contacts_json(const std::vector<Contact>& contacts) {
  json out = json::array();
  for (const auto& c : contacts) out.push_back({{"link", c.link}, {"obstacle", c.obstacle}});
  return out;
}

std::string reply(const char* type, const json& seq, const json& payload) {
  json msg;
  msg["type"] = type;
  msg["seq_ack"] = seq;
  msg["payload"] = payload;
  return msg.dump();
}

}  // namespace

Session::Session(SessionConfig config) : config_(std::move(config)) {
  config_.spec.validate();
  config_.scene.validate();
  if (!(config_.drive_speed > 0.0) || !(config_.rotation_speed > 0.0) || !(config_.time_step > 0.0))
    throw ParameterError("session speeds and time step must be positive");
  reset_state();
}

void Session::reset_state() {
  state_ = SessionState{JointVector::Zero(config_.spec.link_count), 0.0, std::nullopt, false, 0.0,
                        {}, std::nullopt, std::move(state_.plan), 0};
  state_.collision = collides(config_.scene, config_.spec, state_.theta);
  log_.clear();
}

Event Session::make_event(std::string kind, std::string message, int joint) const {
  return {std::move(kind), std::move(message), state_.clock, joint, {}};
}

void Session::check_grasp(std::vector<Event>& events) {
  if (state_.grasped || !can_grasp(config_.spec, state_.theta, config_.scene)) return;
  state_.grasped = true;
  events.push_back(make_event("grasped", "target within grasp radius"));
}

std::vector<Event> Session::apply(const Command& command) {
  std::lock_guard lock(mutex_);
  std::vector<Event> events = std::visit(
      [&](const auto& cmd) -> std::vector<Event> {
        using T = std::decay_t<decltype(cmd)>;
        if constexpr (std::is_same_v<T, DriveCommand>) {
          return drive(cmd);
        } else if constexpr (std::is_same_v<T, RotateCommand>) {
          return rotate(cmd);
        } else if constexpr (std::is_same_v<T, EngageCommand>) {
          return engage();
        } else if constexpr (std::is_same_v<T, DisengageCommand>) {
          return disengage();
        } else if constexpr (std::is_same_v<T, StepPlanCommand>) {
          return step_plan();
        } else if constexpr (std::is_same_v<T, LoadPlanCommand>) {
          try {
            validate_plan(cmd.plan, config_.spec.link_count);
          } catch (const PlanError& e) {
            return {make_event("rejected", e.what())};
          }
          state_.plan = cmd.plan;
          state_.plan_cursor = 0;
          return {make_event("plan_loaded", std::to_string(cmd.plan.steps.size()) + " steps")};
        } else if constexpr (std::is_same_v<T, LoadSceneCommand>) {
          cmd.scene.validate();
          config_.scene = cmd.scene;
          state_.collision = collides(config_.scene, config_.spec, state_.theta);
          state_.grasped = false;
          std::vector<Event> out{make_event("scene_loaded", cmd.scene.name)};
          check_grasp(out);
          return out;
        } else {
          reset_state();
          return {make_event("reset", "straight chain, actuator at the base")};
        }
      },
      command);
  log_.insert(log_.end(), events.begin(), events.end());
  return events;
}

std::vector<Event> Session::drive(const DriveCommand& cmd) {
  if (state_.engaged)
    return {make_event("rejected", "disengage before driving", *state_.engaged)};
  const double speed = config_.drive_speed / config_.spec.link_length;
  const double end = config_.spec.link_count;
  const double dt = config_.time_step;
  std::vector<Event> events;
  const int count = substeps(cmd.duration, dt);
  for (int k = 0; k < count; ++k) {
    const double h = substep_length(k, count, cmd.duration, dt);
    const double next = state_.position + cmd.direction * speed * h;
    if (next > end || next < 0.0) {
      const double bound = next > end ? end : 0.0;
      state_.clock += std::abs(bound - state_.position) / speed;
      state_.position = bound;
      events.push_back(make_event("chain_end", bound == 0.0 ? "at the base" : "at the tip"));
      break;
    }
    state_.position = next;
    state_.clock += h;
    check_grasp(events);
  }
  return events;
}

std::vector<Event> Session::rotate(const RotateCommand& cmd) {
  if (!state_.engaged) return {make_event("rejected", "no joint engaged")};
  const int joint = *state_.engaged;
  if (state_.blocked && state_.blocked->first == joint && state_.blocked->second == cmd.direction)
    return {make_event("rejected", "motion blocked by contact in this direction", joint)};
  const Eigen::Index i = joint - 1;
  const double limit = config_.spec.joint_limit;
  const double omega = config_.rotation_speed;
  const double dt = config_.time_step;
  std::vector<Event> events;
  const int count = substeps(cmd.duration, dt);
  for (int k = 0; k < count; ++k) {
    const double h = substep_length(k, count, cmd.duration, dt);
    const double current = state_.theta[i];
    double target = current + cmd.direction * omega * h;
    double used = h;
    bool at_limit = false;
    if (std::abs(target) >= limit) {
      target = std::copysign(limit, target);
      used = std::abs(target - current) / omega;
      at_limit = true;
    }
    state_.theta[i] = target;
    CollisionReport report = collides(config_.scene, config_.spec, state_.theta);
    if (report.collides && !state_.collision.collides) {
      state_.theta[i] = current;
      state_.blocked = std::make_pair(joint, cmd.direction);
      Event e = make_event("collision", "contact with an obstacle; step reverted", joint);
      e.contacts = report.contacts;
      events.push_back(std::move(e));
      break;
    }
    state_.collision = std::move(report);
    state_.clock += used;
    if (state_.blocked && state_.blocked->first == joint) state_.blocked.reset();
    check_grasp(events);
    if (at_limit) {
      events.push_back(make_event("joint_limit", "joint held at its limit", joint));
      break;
    }
  }
  return events;
}

std::vector<Event> Session::engage() {
  if (state_.engaged) return {make_event("rejected", "a joint is already engaged", *state_.engaged)};
  const double nearest = std::round(state_.position);
  if (std::abs(state_.position - nearest) > 1e-6)
    return {make_event("rejected", "actuator is between joints")};
  const int joint = static_cast<int>(nearest) + 1;
  if (joint > config_.spec.link_count) return {make_event("rejected", "no joint at the chain tip")};
  state_.position = nearest;
  state_.engaged = joint;
  return {make_event("engaged", "joint engaged", joint)};
}

std::vector<Event> Session::disengage() {
  if (!state_.engaged) return {make_event("rejected", "no joint engaged")};
  const int joint = *state_.engaged;
  state_.engaged.reset();
  return {make_event("disengaged", "joint released", joint)};
}

std::vector<Event> Session::step_plan() {
  if (!state_.plan) return {make_event("rejected", "no plan loaded")};
  if (state_.plan_cursor >= state_.plan->steps.size())
    return {make_event("rejected", "plan already finished")};
  const double nearest = std::round(state_.position);
  if (std::abs(state_.position - nearest) > 1e-6)
    return {make_event("rejected", "actuator is between joints")};

  const std::size_t number = state_.plan_cursor + 1;
  const PlanStep& step = state_.plan->steps[state_.plan_cursor];
  RobotState robot{state_.theta, {static_cast<int>(nearest) + 1}};
  std::vector<ReplayFrame> frames;
  std::vector<LimitViolation> violations;
  ReplayOptions options;
  options.limits = LimitCheck::kOff;
  try {
    apply_plan_step(step, number, config_.spec, options, robot, &frames, &violations);
  } catch (const PlanError& e) {
    return {make_event("rejected", e.what())};
  }

  std::vector<Event> events;
  bool reported = false;
  for (const auto& frame : frames) {
    state_.theta = frame.theta;
    CollisionReport report = collides(config_.scene, config_.spec, state_.theta);
    if (report.collides && !reported) {
      Event e = make_event("collision", "plan step " + std::to_string(number) + " touches an obstacle",
                           frame.moving_joint);
      e.contacts = report.contacts;
      events.push_back(std::move(e));
      reported = true;
    }
    state_.collision = std::move(report);
    check_grasp(events);
  }
  state_.theta = robot.theta;
  state_.position = robot.actuators.front() - 1;
  state_.engaged = robot.actuators.front();
  state_.clock += config_.spec.link_length * step.link_moves() / config_.drive_speed +
                  step.rotation_degrees() * std::numbers::pi / 180.0 / config_.rotation_speed;
  ++state_.plan_cursor;
  for (const auto& v : violations)
    events.push_back(make_event("joint_limit",
                                "plan step " + std::to_string(v.step) + " ends beyond the limit",
                                v.joint));
  events.push_back(make_event("plan_step", "step " + std::to_string(number) + " of " +
                                               std::to_string(state_.plan->steps.size()),
                              state_.engaged.value_or(0)));
  return events;
}

SessionState Session::state() const {
  std::lock_guard lock(mutex_);
  return state_;
}

Scene Session::scene() const {
  std::lock_guard lock(mutex_);
  return config_.scene;
}

std::vector<Event> Session::event_log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

std::string Session::snapshot_json() const {
  std::lock_guard lock(mutex_);
  const RobotSpec& spec = config_.spec;
  json payload;
  payload["theta"] = json::array();
  for (Eigen::Index i = 0; i < state_.theta.size(); ++i) payload["theta"].push_back(state_.theta[i]);
  std::vector<Point2> points{Point2::Zero()};
  for (const auto& p : forward_kinematics(spec.link_length, state_.theta)) points.push_back(p);
  payload["points"] = json::array();
  for (const auto& p : points) payload["points"].push_back({p.x(), p.y()});
  payload["actuator_position"] = state_.position;
  const auto link = std::min(static_cast<std::size_t>(state_.position), points.size() - 2);
  const double frac = state_.position - static_cast<double>(link);
  const Point2 marker = points[link] + frac * (points[link + 1] - points[link]);
  payload["actuator_point"] = {marker.x(), marker.y()};
  payload["engaged_joint"] = state_.engaged ? json(*state_.engaged) : json(nullptr);
  payload["collides"] = state_.collision.collides;
  payload["contacts"] = contacts_json(state_.collision.contacts);
  payload["self_contacts"] = json::array();
  for (const auto& s : state_.collision.self_contacts)
    payload["self_contacts"].push_back({s.first, s.second});
  payload["grasped"] = state_.grasped;
  payload["clock"] = state_.clock;
  payload["blocked"] = state_.blocked
                           ? json({{"joint", state_.blocked->first}, {"direction", state_.blocked->second}})
                           : json(nullptr);
  payload["plan"] = {{"loaded", state_.plan.has_value()},
                     {"cursor", state_.plan_cursor},
                     {"steps", state_.plan ? state_.plan->steps.size() : 0}};
  payload["robot"] = {{"n_links", spec.link_count},
                      {"link_length_m", spec.link_length},
                      {"thickness_m", spec.link_thickness},
                      {"joint_limit_rad", spec.joint_limit}};
  payload["scene"] = config_.scene.name;
  return payload.dump();
}

std::string event_json(const Event& event) {
  json payload;
  payload["kind"] = event.kind;
  payload["message"] = event.message;
  payload["clock"] = event.clock;
  payload["joint"] = event.joint == 0 ? json(nullptr) : json(event.joint);
  payload["contacts"] = contacts_json(event.contacts);
  return payload.dump();
}

Command parse_command(const std::string& type, const std::string& args_json) {
  json args;
  try {
    args = args_json.empty() ? json::object() : json::parse(args_json);
  } catch (const json::exception&) {
    throw ProtocolError("args must be a JSON object");
  }
  if (!args.is_object()) throw ProtocolError("args must be a JSON object");
  if (type == "drive") return DriveCommand{parse_direction(args), parse_duration(args)};
  if (type == "rotate") return RotateCommand{parse_direction(args), parse_duration(args)};
  if (type == "engage") return EngageCommand{};
  if (type == "disengage") return DisengageCommand{};
  if (type == "step_plan") return StepPlanCommand{};
  if (type == "reset") return ResetCommand{};
  if (type == "load_plan") {
    if (!args.contains("text") || !args["text"].is_string())
      throw ProtocolError("load_plan needs the plan text");
    return LoadPlanCommand{parse_plan(args["text"].get<std::string>())};
  }
  if (type == "load_scene") {
    if (!args.contains("scene") || !args["scene"].is_object())
      throw ProtocolError("load_scene needs a scene object");
    return LoadSceneCommand{scene_from_json(args["scene"].dump())};
  }
  throw ProtocolError("unknown command type '" + type + "'");
}

std::vector<std::string> handle_message(Session& session, const std::string& message,
                                        const NameResolver& resolve_plan,
                                        const NameResolver& resolve_scene) {
  json seq = nullptr;
  try {
    json msg;
    try {
      msg = json::parse(message);
    } catch (const json::exception&) {
      throw ProtocolError("message is not valid JSON");
    }
    if (!msg.is_object()) throw ProtocolError("message must be an object");
    if (msg.contains("seq")) {
      if (!msg["seq"].is_number_integer()) throw ProtocolError("seq must be an integer");
      seq = msg["seq"];
    }
    if (!msg.contains("type") || !msg["type"].is_string()) throw ProtocolError("type is required");
    const std::string type = msg["type"].get<std::string>();
    json args = msg.value("args", json::object());
    if (!args.is_object()) throw ProtocolError("args must be an object");

    std::vector<std::string> out;
    if (type != "snapshot") {
      if (args.contains("name") && args["name"].is_string()) {
        const std::string name = args["name"].get<std::string>();
        const NameResolver& resolver = type == "load_plan" ? resolve_plan : resolve_scene;
        const auto text = resolver ? resolver(name) : std::nullopt;
        if (!text) throw ProtocolError("unknown name '" + name + "'");
        if (type == "load_plan")
          args["text"] = *text;
        else
          args["scene"] = json::parse(*text);
      }
      for (const auto& e : session.apply(parse_command(type, args.dump())))
        out.push_back(reply("event", seq, json::parse(event_json(e))));
    }
    out.push_back(reply("snapshot", seq, json::parse(session.snapshot_json())));
    return out;
  } catch (const Error& e) {
    return {reply("error", seq, {{"message", e.what()}})};
  } catch (const json::exception& e) {
    return {reply("error", seq, {{"message", std::string("malformed content: ") + e.what()}})};
  }
}

}  // namespace masr
