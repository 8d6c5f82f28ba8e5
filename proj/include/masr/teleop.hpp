#pragma once

#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "masr/cost_model.hpp"
#include "masr/robot.hpp"
#include "masr/scene.hpp"

namespace masr {

struct DriveCommand {
  int direction = 1;  // +1 toward the tip, -1 toward the base
  double duration = 0.0;
};

struct RotateCommand {
  int direction = 1;  // +1 counter-clockwise
  double duration = 0.0;
};

struct EngageCommand {};
struct DisengageCommand {};
struct LoadPlanCommand {
  Plan plan;
};
struct StepPlanCommand {};
struct ResetCommand {};
struct LoadSceneCommand {
  Scene scene;
};

using Command = std::variant<DriveCommand, RotateCommand, EngageCommand, DisengageCommand,
                             LoadPlanCommand, StepPlanCommand, ResetCommand, LoadSceneCommand>;

constexpr double kMaxCommandDuration = 10.0;

struct SessionConfig {
  RobotSpec spec;
  Scene scene;
  double drive_speed = 0.03;                                  // m/s
  double rotation_speed = 18.0 * std::numbers::pi / 180.0;    // rad/s
  double time_step = 0.02;                                    // s
};

struct Event {
  std::string kind;  // rejected, collision, joint_limit, chain_end, grasped, engaged, ...
  std::string message;
  double clock = 0.0;
  int joint = 0;
  std::vector<Contact> contacts;
};

struct SessionState {
  JointVector theta;
  double position = 0.0;  // actuator location in link lengths; joint j sits at j - 1
  std::optional<int> engaged;
  bool grasped = false;
  double clock = 0.0;
  CollisionReport collision;
  // Rotation direction refused after a collision, per joint.
  std::optional<std::pair<int, int>> blocked;
  std::optional<Plan> plan;
  std::size_t plan_cursor = 0;
};

// One teleoperated robot. Commands are applied in order under a lock, so
// snapshots taken from other threads always fall between commands.
class Session {
 public:
  explicit Session(SessionConfig config);

  std::vector<Event> apply(const Command& command);

  SessionState state() const;
  const SessionConfig& config() const { return config_; }
  Scene scene() const;
  std::vector<Event> event_log() const;

  // JSON payload of the current state.
  std::string snapshot_json() const;

 private:
  std::vector<Event> drive(const DriveCommand& cmd);
  std::vector<Event> rotate(const RotateCommand& cmd);
  std::vector<Event> engage();
  std::vector<Event> disengage();
  std::vector<Event> step_plan();
  void reset_state();
  void check_grasp(std::vector<Event>& events);
  Event make_event(std::string kind, std::string message, int joint = 0) const;

  mutable std::mutex mutex_;
  SessionConfig config_;
  SessionState state_;
  std::vector<Event> log_;
};

// Wire protocol. Client messages are {"type", "args", "seq"}; replies are
// {"type": "snapshot" | "event" | "error", "seq_ack", "payload"}.
Command parse_command(const std::string& type, const std::string& args_json);

// Handles one client message and returns the replies in order: one message
// per event followed by a snapshot, or a single error. `resolve_plan` and
// `resolve_scene` map names from server listings to file contents; they
// may be empty.
using NameResolver = std::function<std::optional<std::string>(const std::string&)>;
std::vector<std::string> handle_message(Session& session, const std::string& message,
                                        const NameResolver& resolve_plan = {},
                                        const NameResolver& resolve_scene = {});

std::string event_json(const Event& event);

}  // namespace masr
