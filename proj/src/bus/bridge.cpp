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

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tunnelmail/bus/websocket.hpp"
#include "tunnelmail/common/log.hpp"

namespace tunnelmail::bus {
namespace {

constexpr int kPollMs = 10;
constexpr std::size_t kMaxLine = 1u << 20;

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

std::string msg_frame(const BusMessage& m) {
  return nlohmann::json{{"op", "msg"}, {"topic", m.topic}, {"payload", m.payload},
                        {"seq", m.seq}, {"ts", m.ts}}
      .dump();
}

std::string err_frame(std::string_view reason) {
  return nlohmann::json{{"op", "err"}, {"reason", std::string(reason)}}.dump();
}

BridgeSession::BridgeSession(Broker& broker, const BridgeConfig& config)
    : broker_(broker), config_(config) {}

BridgeSession::~BridgeSession() {
  for (auto& [topic, sub] : subs_) broker_.unsubscribe(sub);
}

std::vector<std::string> BridgeSession::handle_line(std::string_view line) {
  nlohmann::json frame;
  try {
    frame = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    return {err_frame("malformed json")};
  }
  if (!frame.is_object() || !frame.contains("op") || !frame["op"].is_string()) {
    return {err_frame("missing op")};
  }
  const std::string op = frame["op"];
  if (!frame.contains("topic") || !frame["topic"].is_string()) return {err_frame("missing topic")};
  const std::string topic = frame["topic"];
  if (!is_valid_topic(topic)) return {err_frame("invalid topic '" + topic + "'")};

  if (op == "sub") {
    if (topic.rfind("meta/", 0) == 0) {
      auto it = config_.meta.find(topic);
      if (it == config_.meta.end()) return {err_frame("unknown meta topic '" + topic + "'")};
      return {msg_frame(BusMessage{topic, it->second, 1, broker_.clock().now_ns()})};
    }
    if (!subs_.count(topic)) subs_.emplace(topic, broker_.subscribe(topic, config_.capacity));
    return {};
  }
  if (op == "unsub") {
    auto it = subs_.find(topic);
    if (it != subs_.end()) {
      broker_.unsubscribe(it->second);
      subs_.erase(it);
    }
    return {};
  }
  if (op == "pub") {
    if (!frame.contains("payload") || !frame["payload"].is_string()) return {err_frame("missing payload")};
    if (topic.rfind("meta/", 0) == 0) return {err_frame("meta topics are read-only")};
    broker_.publish(topic, frame["payload"].get<std::string>());
    return {};
  }
  return {err_frame("unknown op '" + op + "'")};
}

std::vector<std::string> BridgeSession::poll_messages() {
  std::vector<std::string> out;
  for (auto& [topic, sub] : subs_) {
    for (const BusMessage& m : sub->drain()) out.push_back(msg_frame(m));
  }
  return out;
}

Bridge::Bridge(Broker& broker, BridgeConfig config) : broker_(broker), config_(std::move(config)) {}

Bridge::~Bridge() { stop(); }

void Bridge::start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(config_.port);
  if (::inet_pton(AF_INET, config_.host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::runtime_error("bad bridge host '" + config_.host + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
      ::listen(listen_fd_, 16) < 0) {
    const std::string err = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::runtime_error("bridge bind/listen on port " + std::to_string(config_.port) + ": " + err);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  stopping_ = false;
  acceptor_ = std::thread([this] { accept_loop(); });
  get_logger("bridge")->info("bridge listening on {}:{}", config_.host, port_);
}

void Bridge::stop() {
  stopping_ = true;
  if (acceptor_.joinable()) acceptor_.join();
  std::list<std::thread> sessions;
  {
    std::lock_guard<std::mutex> lock(threads_mu_);
    sessions.swap(sessions_);
  }
  for (auto& t : sessions) t.join();
  if (listen_fd_ >= 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
}

void Bridge::accept_loop() {
  while (!stopping_) {
    pollfd p{listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, kPollMs) <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    std::lock_guard<std::mutex> lock(threads_mu_);
    sessions_.emplace_back([this, fd] { serve(fd); });
  }
}

void Bridge::serve(int fd) {
  enum class Mode { kUnknown, kHandshake, kLines, kWebSocket };
  ++active_sessions_;
  auto log = get_logger("bridge");
  BridgeSession session(broker_, config_);
  Mode mode = Mode::kUnknown;
  std::string buffer;
  bool open = true;

  auto send_frame = [&](const std::string& json) {
    if (mode == Mode::kWebSocket) return send_all(fd, ws::encode(ws::Frame{true, ws::kText, json}));
    return send_all(fd, json + "\n");
  };
  auto handle_text = [&](std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) {
        for (const std::string& reply : session.handle_line(line)) open = open && send_frame(reply);
      }
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
  };

  char chunk[4096];
  while (open && !stopping_) {
    pollfd p{fd, POLLIN, 0};
    const int ready = ::poll(&p, 1, kPollMs);
    if (ready > 0) {
      const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
      if (n <= 0) break;
      buffer.append(chunk, static_cast<std::size_t>(n));
    }
    if (mode == Mode::kUnknown && buffer.size() >= 4) {
      mode = buffer.compare(0, 4, "GET ") == 0 ? Mode::kHandshake : Mode::kLines;
    }
    if (mode == Mode::kHandshake) {
      const std::size_t end = buffer.find("\r\n\r\n");
      if (end != std::string::npos) {
        const auto response = ws::handshake_response(std::string_view(buffer).substr(0, end + 4));
        if (!response) {
          send_all(fd, "HTTP/1.1 400 Bad Request\r\nContent-Length: 0\r\n\r\n");
          break;
        }
        open = send_all(fd, *response);
        buffer.erase(0, end + 4);
        mode = Mode::kWebSocket;
      }
    }
    if (mode == Mode::kLines) {
      const std::size_t last_nl = buffer.rfind('\n');
      if (last_nl != std::string::npos) {
        const std::string complete = buffer.substr(0, last_nl + 1);
        buffer.erase(0, last_nl + 1);
        handle_text(complete);
      } else if (buffer.size() > kMaxLine) {
        send_frame(err_frame("line too long"));
        buffer.clear();
      }
    }
    if (mode == Mode::kWebSocket) {
      try {
        while (auto frame = ws::decode(buffer)) {
          if (frame->opcode == ws::kClose) {
            send_all(fd, ws::encode(ws::Frame{true, ws::kClose, ""}));
            open = false;
            break;
          }
          if (frame->opcode == ws::kPing) {
            send_all(fd, ws::encode(ws::Frame{true, ws::kPong, frame->payload}));
          } else if (frame->opcode == ws::kText) {
            handle_text(frame->payload);
          }
        }
      } catch (const std::exception& e) {
        log->warn("closing websocket session: {}", e.what());
        break;
      }
    }
    if (mode == Mode::kLines || mode == Mode::kWebSocket) {
      for (const std::string& m : session.poll_messages()) {
        if (!(open = send_frame(m))) break;
      }
    }
  }
  ::close(fd);
  --active_sessions_;
}

}  // namespace tunnelmail::bus
