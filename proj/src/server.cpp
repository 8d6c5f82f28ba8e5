#include "masr/server.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <condition_variable>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <json.hpp>

#include "masr/io.hpp"
#include "masr/teleop.hpp"

namespace masr {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace fs = std::filesystem;
using tcp = asio::ip::tcp;

namespace {

bool valid_name(const std::string& name) {
  return !name.empty() && name.size() < 128 &&
         std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; });
}

std::vector<std::string> list_names(const std::string& dir, const std::string& extension) {
  std::vector<std::string> names;
  std::error_code ec;
  if (dir.empty() || !fs::is_directory(dir, ec)) return names;
  for (const auto& entry : fs::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == extension &&
        valid_name(entry.path().stem().string()))
      names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

std::optional<std::string> read_named(const std::string& dir, const std::string& name,
                                      const std::string& extension) {
  if (dir.empty() || !valid_name(name)) return std::nullopt;
  const fs::path path = fs::path(dir) / (name + extension);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return std::nullopt;
  return read_text_file(path.string());
}

std::string mime_type(const fs::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".html") return "text/html";
  if (ext == ".js" || ext == ".mjs") return "application/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  return "application/octet-stream";
}

}  // namespace

struct TeleopServer::Impl {
  ServerConfig config;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::atomic<bool> stopping{false};
  std::mutex mutex;
  std::condition_variable stopped_cv;
  bool stopped = false;

  http::response<http::string_body> respond(const http::request<http::string_body>& req) {
    auto make = [&](http::status status, std::string body, const std::string& type) {
      http::response<http::string_body> res{status, req.version()};
      res.set(http::field::content_type, type);
      res.keep_alive(req.keep_alive());
      res.body() = std::move(body);
      res.prepare_payload();
      return res;
    };
    if (req.method() != http::verb::get)
      return make(http::status::method_not_allowed, "method not allowed\n", "text/plain");

    std::string target(req.target());
    if (const auto q = target.find('?'); q != std::string::npos) target.erase(q);

    auto listing = [&](const std::string& prefix, const std::string& dir,
                       const std::string& ext, const std::string& type)
        -> std::optional<http::response<http::string_body>> {
      if (target == prefix) return make(http::status::ok, nlohmann::json(list_names(dir, ext)).dump(), "application/json");
      if (target.rfind(prefix + "/", 0) == 0) {
        const auto body = read_named(dir, target.substr(prefix.size() + 1), ext);
        if (!body) return make(http::status::not_found, "not found\n", "text/plain");
        return make(http::status::ok, *body, type);
      }
      return std::nullopt;
    };

    if (target == "/api/health") return make(http::status::ok, R"({"status":"ok"})", "application/json");
    if (auto r = listing("/api/plans", config.plan_dir, ".plan", "text/plain")) return *r;
    if (auto r = listing("/api/scenes", config.scene_dir, ".json", "application/json")) return *r;

    if (config.static_dir.empty() || target.find("..") != std::string::npos || target.empty() ||
        target[0] != '/')
      return make(http::status::not_found, "not found\n", "text/plain");
    fs::path path = fs::path(config.static_dir) / target.substr(1);
    std::error_code ec;
    if (fs::is_directory(path, ec)) path /= "index.html";
    if (!fs::is_regular_file(path, ec)) return make(http::status::not_found, "not found\n", "text/plain");
    return make(http::status::ok, read_text_file(path.string()), mime_type(path));
  }

  void run_websocket(tcp::socket socket, const http::request<http::string_body>& req) {
    websocket::stream<tcp::socket> ws(std::move(socket));
    ws.accept(req);
    ws.text(true);
    Session session(SessionConfig{config.spec, config.scene});
    const NameResolver plans = [this](const std::string& n) { return read_named(config.plan_dir, n, ".plan"); };
    const NameResolver scenes = [this](const std::string& n) { return read_named(config.scene_dir, n, ".json"); };
    ws.write(asio::buffer(R"({"type":"snapshot","seq_ack":null,"payload":)" + session.snapshot_json() + "}"));
    for (;;) {
      beast::flat_buffer buffer;
      beast::error_code ec;
      ws.read(buffer, ec);
      if (ec == websocket::error::closed || ec) return;
      const std::string message = beast::buffers_to_string(buffer.data());
      for (const auto& out : handle_message(session, message, plans, scenes)) ws.write(asio::buffer(out));
    }
  }

  void serve(tcp::socket socket) {
    try {
      beast::flat_buffer buffer;
      for (;;) {
        http::request<http::string_body> req;
        beast::error_code ec;
        http::read(socket, buffer, req, ec);
        if (ec) return;
        if (websocket::is_upgrade(req)) {
          if (req.target() == "/ws") run_websocket(std::move(socket), req);
          return;
        }
        auto res = respond(req);
        http::write(socket, res, ec);
        if (ec || !res.keep_alive()) break;
      }
      beast::error_code ignored;
      socket.shutdown(tcp::socket::shutdown_send, ignored);
    } catch (const std::exception& e) {
      std::cerr << "connection error: " << e.what() << '\n';
    }
  }
};

TeleopServer::TeleopServer(ServerConfig config) : impl_(std::make_shared<Impl>()) {
  config.spec.validate();
  config.scene.validate();
  impl_->config = std::move(config);
}

TeleopServer::~TeleopServer() { stop(); }

void TeleopServer::start() {
  auto impl = impl_;
  const tcp::endpoint endpoint(asio::ip::make_address(impl->config.address), impl->config.port);
  impl->acceptor.open(endpoint.protocol());
  impl->acceptor.set_option(asio::socket_base::reuse_address(true));
  impl->acceptor.bind(endpoint);
  impl->acceptor.listen();
  port_ = impl->acceptor.local_endpoint().port();
  accept_thread_ = std::thread([impl] {
    while (!impl->stopping) {
      tcp::socket socket(impl->io);
      beast::error_code ec;
      impl->acceptor.accept(socket, ec);
      if (ec || impl->stopping) continue;
      std::thread([impl, s = std::move(socket)]() mutable { impl->serve(std::move(s)); }).detach();
    }
    std::lock_guard lock(impl->mutex);
    impl->stopped = true;
    impl->stopped_cv.notify_all();
  });
}

void TeleopServer::stop() {
  if (!accept_thread_.joinable()) return;
  impl_->stopping = true;
  // Wake the blocking accept with a throwaway connection.
  try {
    asio::io_context io;
    tcp::socket poke(io);
    beast::error_code ec;
    poke.connect(tcp::endpoint(asio::ip::make_address(impl_->config.address == "0.0.0.0"
                                                          ? "127.0.0.1"
                                                          : impl_->config.address),
                               port_),
                 ec);
  } catch (const std::exception&) {
  }
  accept_thread_.join();
  beast::error_code ec;
  impl_->acceptor.close(ec);
}

void TeleopServer::wait() {
  std::unique_lock lock(impl_->mutex);
  impl_->stopped_cv.wait(lock, [&] { return impl_->stopped; });
}

}  // namespace masr
