// Copyright 2026 The Tunnelmail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tunnelmail/bus/bridge.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <thread>

#include "tcp_client.hpp"
#include "tunnelmail/bus/websocket.hpp"

namespace tunnelmail::bus {
namespace {

using nlohmann::json;
using testing::TcpClient;

template <typename Pred>
bool eventually(Pred pred, int timeout_ms = 3000) {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  while (std::chrono::steady_clock::now() < deadline) {
    if (pred()) return true;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  return pred();
}

TEST(WebSocketTest, AcceptKeyMatchesRfcExample) {
  EXPECT_EQ(ws::accept_key("dGhlIHNhbXBsZSBub25jZQ=="), "s3pPLMBiTxaQ9kYGzzhZRbK+xOo=");
}

TEST(WebSocketTest, HandshakeResponse) {
  const std::string req =
      "GET / HTTP/1.1\r\nHost: x\r\nsec-websocket-key:  dGhlIHNhbXBsZSBub25jZQ== \r\n\r\n";
  const auto resp = ws::handshake_response(req);
  ASSERT_TRUE(resp);
  EXPECT_NE(resp->find("101 Switching Protocols"), std::string::npos);
  EXPECT_NE(resp->find("Sec-WebSocket-Accept: s3pPLMBiTxaQ9kYGzzhZRbK+xOo="), std::string::npos);
  EXPECT_FALSE(ws::handshake_response("GET / HTTP/1.1\r\nHost: x\r\n\r\n"));
}

TEST(WebSocketTest, EncodeDecodeRoundTripAcrossLengthForms) {
  for (std::size_t len : {0u, 5u, 125u, 126u, 300u, 70000u}) {
    for (std::uint32_t mask : {0u, 0xA1B2C3D4u}) {
      ws::Frame f{true, ws::kText, std::string(len, 'x')};
      if (len > 3) f.payload[3] = 'y';
      std::string wire = ws::encode(f, mask);
      std::string partial = wire.substr(0, wire.size() - 1);
      EXPECT_FALSE(ws::decode(partial));
      wire += "tail";
      const auto back = ws::decode(wire);
      ASSERT_TRUE(back);
      EXPECT_EQ(back->payload, f.payload);
      EXPECT_EQ(back->opcode, ws::kText);
      EXPECT_EQ(wire, "tail");
    }
  }
}

TEST(BridgeSessionTest, FramesMapToBusOperations) {
  Broker broker;
  BridgeConfig config;
  config.meta["meta/map"] = R"({"nodes":[]})";
  BridgeSession session(broker, config);
  EXPECT_TRUE(session.handle_line(R"({"op":"sub","topic":"perceptions"})").empty());
  EXPECT_EQ(session.subscription_count(), 1u);
  auto local = broker.subscribe("perceptions");
  EXPECT_TRUE(session.handle_line(R"j({"op":"pub","topic":"perceptions","payload":"request(post1,post4)"})j").empty());
  EXPECT_EQ(local->try_pop()->payload, "request(post1,post4)");
  const auto frames = session.poll_messages();
  ASSERT_EQ(frames.size(), 1u);
  const json f = json::parse(frames[0]);
  EXPECT_EQ(f["op"], "msg");
  EXPECT_EQ(f["topic"], "perceptions");
  EXPECT_EQ(f["payload"], "request(post1,post4)");
  EXPECT_EQ(f["seq"], 1);
  EXPECT_TRUE(f.contains("ts"));

  const auto meta = session.handle_line(R"({"op":"sub","topic":"meta/map"})");
  ASSERT_EQ(meta.size(), 1u);
  EXPECT_EQ(json::parse(meta[0])["payload"], R"({"nodes":[]})");
}

TEST(BridgeSessionTest, MalformedFramesYieldErrors) {
  Broker broker;
  BridgeConfig config;
  BridgeSession session(broker, config);
  for (const char* bad : {"not json", "[1,2]", R"({"topic":"a"})", R"({"op":"sub"})",
                          R"({"op":"sub","topic":"Bad/Topic"})", R"({"op":"pub","topic":"a"})",
                          R"({"op":"dance","topic":"a"})", R"({"op":"sub","topic":"meta/none"})",
                          R"({"op":"pub","topic":"meta/map","payload":"x"})"}) {
    const auto out = session.handle_line(bad);
    ASSERT_EQ(out.size(), 1u) << bad;
    const json f = json::parse(out[0]);
    EXPECT_EQ(f["op"], "err") << bad;
    EXPECT_TRUE(f["reason"].is_string());
  }
}

TEST(BridgeSessionTest, DestructionReleasesSubscriptions) {
  Broker broker;
  BridgeConfig config;
  {
    BridgeSession session(broker, config);
    session.handle_line(R"({"op":"sub","topic":"actions"})");
    EXPECT_EQ(broker.subscriber_count("actions"), 1u);
  }
  EXPECT_EQ(broker.subscriber_count("actions"), 0u);
}

class BridgeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    BridgeConfig config;
    config.meta["meta/map"] = R"({"nodes":[{"id":"post1","is_dock":false}]})";
    bridge_ = std::make_unique<Bridge>(broker_, config);
    bridge_->start();
  }
  void TearDown() override { bridge_->stop(); }

  Broker broker_;
  std::unique_ptr<Bridge> bridge_;
};

TEST_F(BridgeTest, LineClientReceivesPublishedPerception) {
  TcpClient client(bridge_->port());
  client.send_line(R"({"op":"sub","topic":"perceptions"})");
  ASSERT_TRUE(eventually([&] { return broker_.subscriber_count("perceptions") == 1; }));
  broker_.publish("perceptions", "dest(post4)");
  const auto frame = client.read_frame();
  ASSERT_TRUE(frame);
  const json f = json::parse(*frame);
  EXPECT_EQ(f["op"], "msg");
  EXPECT_EQ(f["payload"], "dest(post4)");
}

TEST_F(BridgeTest, ClientPublishReachesInProcessSubscribers) {
  auto local = broker_.subscribe("perceptions");
  TcpClient client(bridge_->port());
  client.send_line(R"j({"op":"pub","topic":"perceptions","payload":"request(post1,post4)"})j");
  const auto m = local->wait_pop(std::chrono::seconds(3));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->payload, "request(post1,post4)");
  EXPECT_EQ(m->seq, 1u);
}

TEST_F(BridgeTest, MalformedLineGetsErrorAndSessionStaysOpen) {
  TcpClient client(bridge_->port());
  client.send_line("{broken");
  const auto err = client.read_frame();
  ASSERT_TRUE(err);
  EXPECT_EQ(json::parse(*err)["op"], "err");
  client.send_line(R"({"op":"sub","topic":"meta/map"})");
  const auto snap = client.read_frame();
  ASSERT_TRUE(snap);
  EXPECT_EQ(json::parse(*snap)["topic"], "meta/map");
}

TEST_F(BridgeTest, DisconnectCleansUpSubscriptions) {
  {
    TcpClient client(bridge_->port());
    client.send_line(R"({"op":"sub","topic":"actions"})");
    ASSERT_TRUE(eventually([&] { return broker_.subscriber_count("actions") == 1; }));
  }
  EXPECT_TRUE(eventually([&] { return broker_.subscriber_count("actions") == 0; }));
  EXPECT_TRUE(eventually([&] { return bridge_->session_count() == 0; }));
}

TEST_F(BridgeTest, WebSocketClientSpeaksTheSameProtocol) {
  TcpClient client(bridge_->port());
  const std::string head = client.upgrade();
  EXPECT_NE(head.find("s3pPLMBiTxaQ9kYGzzhZRbK+xOo="), std::string::npos);
  client.send_frame(R"({"op":"sub","topic":"meta/map"})");
  const auto snap = client.read_frame();
  ASSERT_TRUE(snap);
  EXPECT_EQ(json::parse(*snap)["payload"], R"({"nodes":[{"id":"post1","is_dock":false}]})");
  client.send_frame(R"({"op":"sub","topic":"sensor/qr"})");
  ASSERT_TRUE(eventually([&] { return broker_.subscriber_count("sensor/qr") == 1; }));
  broker_.publish("sensor/qr", "post2,post1");
  const auto msg = client.read_frame();
  ASSERT_TRUE(msg);
  EXPECT_EQ(json::parse(*msg)["payload"], "post2,post1");
}

// Bridge transparency: bytes and order published through the bridge match an
// in-process publisher.
TEST_F(BridgeTest, BridgePublishPreservesOrderAndBytes) {
  auto local = broker_.subscribe("perceptions", 1000);
  TcpClient client(bridge_->port());
  std::vector<std::string> sent;
  for (int i = 0; i < 200; ++i) {
    sent.push_back("line(" + std::string(i % 2 ? "left" : "center") + ")#" + std::to_string(i) + " \xC3\xA9");
    client.send_line(json{{"op", "pub"}, {"topic", "perceptions"}, {"payload", sent.back()}}.dump());
  }
  ASSERT_TRUE(eventually([&] { return local->size() == sent.size(); }));
  const auto got = local->drain();
  for (std::size_t i = 0; i < sent.size(); ++i) {
    EXPECT_EQ(got[i].payload, sent[i]);
    EXPECT_EQ(got[i].seq, i + 1);
  }
}

}  // namespace
}  // namespace tunnelmail::bus
