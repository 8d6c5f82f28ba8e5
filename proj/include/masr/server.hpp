#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <thread>

#include "masr/robot.hpp"
#include "masr/scene.hpp"

namespace masr {

struct ServerConfig {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  RobotSpec spec;
  Scene scene;
  std::string static_dir;  // UI bundle; empty disables static files
  std::string plan_dir;    // *.plan files offered by /api/plans
  std::string scene_dir;   // *.json files offered by /api/scenes
};

// HTTP + WebSocket endpoint. Each WebSocket connection on /ws owns one
// teleoperation session that lives until the socket closes.
//
//   GET /api/health            {"status": "ok"}
//   GET /api/plans             ["reach_and_return", ...]
//   GET /api/plans/<name>      plan text
//   GET /api/scenes            ["narrow_pass", ...]
//   GET /api/scenes/<name>     scene JSON
//   GET /<path>                file from static_dir
class TeleopServer {
 public:
  explicit TeleopServer(ServerConfig config);
  ~TeleopServer();

  TeleopServer(const TeleopServer&) = delete;
  TeleopServer& operator=(const TeleopServer&) = delete;

  // Binds and starts accepting in a background thread.
  void start();
  // Stops accepting; open connections finish on their own.
  void stop();
  // Blocks until stop() is called from another thread.
  void wait();

  unsigned short port() const { return port_; }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  std::thread accept_thread_;
  unsigned short port_ = 0;
};

}  // namespace masr
