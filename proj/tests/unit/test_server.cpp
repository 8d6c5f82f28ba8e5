#include <gtest/gtest.h>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <json.hpp>

#include "masr/server.hpp"

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;

namespace {

const std::string kRoot = MASR_SOURCE_DIR;

masr::ServerConfig config() {
  masr::ServerConfig c;
  c.port = 0;
  c.scene = masr::load_scene(kRoot + "/scenes/narrow_pass.json");
  c.static_dir = kRoot + "/web";
  c.plan_dir = kRoot + "/data";
  c.scene_dir = kRoot + "/scenes";
  return c;
}

std::pair<int, std::string> get(unsigned short port, const std::string& target) {
  asio::io_context io;
  tcp::socket socket(io);
  socket.connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), port));
  http::request<http::empty_body> req{http::verb::get, target, 11};
  req.set(http::field::host, "localhost");
  req.keep_alive(false);
  http::write(socket, req);
  beast::flat_buffer buffer;
  http::response<http::string_body> res;
  http::read(socket, buffer, res);
  return {static_cast<int>(res.result_int()), res.body()};
}

std::string read_text(websocket::stream<tcp::socket>& ws) {
  beast::flat_buffer b;
  ws.read(b);
  return beast::buffers_to_string(b.data());
}

}  // namespace

TEST(Server, HttpEndpoints) {
  masr::TeleopServer server(config());
  server.start();
  ASSERT_NE(server.port(), 0);
  EXPECT_EQ(get(server.port(), "/api/health").second, R"({"status":"ok"})");
  const auto plans = json::parse(get(server.port(), "/api/plans").second);
  EXPECT_NE(std::find(plans.begin(), plans.end(), "reach_and_return"), plans.end());
  const auto [code, text] = get(server.port(), "/api/plans/reach_and_return");
  EXPECT_EQ(code, 200);
  EXPECT_NE(text.find("declare turning_degrees 840"), std::string::npos);
  EXPECT_EQ(get(server.port(), "/api/plans/..%2Fsecret").first, 404);
  EXPECT_EQ(get(server.port(), "/../CMakeLists.txt").first, 404);
  EXPECT_EQ(json::parse(get(server.port(), "/api/scenes/narrow_pass").second)["name"], "narrow_pass");
  EXPECT_EQ(get(server.port(), "/").first, 200);
  server.stop();
}

TEST(Server, WebSocketSession) {
  masr::TeleopServer server(config());
  server.start();
  asio::io_context io;
  websocket::stream<tcp::socket> ws(io);
  ws.next_layer().connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), server.port()));
  ws.handshake("localhost", "/ws");
  const json hello = json::parse(read_text(ws));
  EXPECT_EQ(hello["type"], "snapshot");
  EXPECT_TRUE(hello["seq_ack"].is_null());
  EXPECT_EQ(hello["payload"]["theta"].size(), 10u);

  ws.write(asio::buffer(std::string(R"({"type":"engage","args":{},"seq":1})")));
  EXPECT_EQ(json::parse(read_text(ws))["payload"]["kind"], "engaged");
  EXPECT_EQ(json::parse(read_text(ws))["payload"]["engaged_joint"], 1);

  ws.write(asio::buffer(std::string(R"({"type":"rotate","args":{"direction":1,"duration":1.0},"seq":2})")));
  json last;
  do last = json::parse(read_text(ws));
  while (last["type"] != "snapshot");
  EXPECT_EQ(last["seq_ack"], 2);
  EXPECT_NEAR(last["payload"]["theta"][0].get<double>(), 18.0 * M_PI / 180.0, 1e-12);

  ws.write(asio::buffer(std::string(R"({"type":"load_plan","args":{"name":"reach_and_return"},"seq":3})")));
  do last = json::parse(read_text(ws));
  while (last["type"] != "snapshot");
  EXPECT_EQ(last["payload"]["plan"]["steps"], 17);

  ws.write(asio::buffer(std::string(R"({"type":"rotate","args":{"direction":5},"seq":4})")));
  EXPECT_EQ(json::parse(read_text(ws))["type"], "error");
  ws.close(websocket::close_code::normal);
  server.stop();
}
