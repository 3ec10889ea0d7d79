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

#ifndef TUNNELMAIL_BUS_BRIDGE_HPP_
#define TUNNELMAIL_BUS_BRIDGE_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tunnelmail/bus/broker.hpp"

namespace tunnelmail::bus {

struct BridgeConfig {
  std::string host = "127.0.0.1";
  /// 0 picks an ephemeral port; read it back with Bridge::port().
  std::uint16_t port = 0;
  std::size_t capacity = kDefaultCapacity;
  /// Snapshots answered once on subscribe to `meta/...` topics, keyed by topic.
  std::map<std::string, std::string> meta;
};

std::string msg_frame(const BusMessage& m);
std::string err_frame(std::string_view reason);

/// Transport-independent half of a client session: turns incoming JSON lines
/// into bus operations and pending deliveries into `msg` frames. Owned
/// subscriptions are released on destruction.
class BridgeSession {
 public:
  BridgeSession(Broker& broker, const BridgeConfig& config);
  ~BridgeSession();
  BridgeSession(const BridgeSession&) = delete;
  BridgeSession& operator=(const BridgeSession&) = delete;

  /// Processes one frame; returns the frames to send back immediately.
  std::vector<std::string> handle_line(std::string_view line);
  /// `msg` frames for everything delivered since the last call, oldest first
  /// within a topic.
  std::vector<std::string> poll_messages();
  std::size_t subscription_count() const { return subs_.size(); }

 private:
  Broker& broker_;
  const BridgeConfig& config_;
  std::map<std::string, std::shared_ptr<Subscription>> subs_;
};

/// TCP server exposing the broker to external clients. A connection opening
/// with `GET ` is upgraded to WebSocket (one JSON frame per text message);
/// anything else speaks newline-delimited JSON directly.
class Bridge {
 public:
  Bridge(Broker& broker, BridgeConfig config);
  ~Bridge();
  Bridge(const Bridge&) = delete;
  Bridge& operator=(const Bridge&) = delete;

  /// Binds and starts accepting. Throws std::runtime_error on socket errors.
  void start();
  void stop();
  std::uint16_t port() const { return port_; }
  std::size_t session_count() const { return active_sessions_.load(); }

 private:
  void accept_loop();
  void serve(int fd);

  Broker& broker_;
  BridgeConfig config_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::atomic<std::size_t> active_sessions_{0};
  std::thread acceptor_;
  std::mutex threads_mu_;
  std::list<std::thread> sessions_;
};

}  // namespace tunnelmail::bus

#endif  // TUNNELMAIL_BUS_BRIDGE_HPP_
