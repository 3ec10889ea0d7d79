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

#include "tunnelmail/sim/world.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "tunnelmail/common/log.hpp"

namespace tunnelmail::sim {

void SensorConfig::validate(double tick_rate_hz) const {
  for (double rate : {line_rate, camera_rate, battery_rate}) {
    if (!(rate > 0.0)) throw std::invalid_argument("sensor rates must be positive");
  }
  const double fastest = std::max({line_rate, camera_rate, battery_rate});
  if (tick_rate_hz < 2.0 * fastest) {
    throw std::invalid_argument("tick rate must be at least twice the fastest sensor rate");
  }
  if (!(camera_radius > 0.0) || !(junction_radius > 0.0) || !(dock_radius > 0.0)) {
    throw std::invalid_argument("sensor radii must be positive");
  }
  if (drift_sigma < 0.0) throw std::invalid_argument("drift_sigma must be non-negative");
}

std::string LineReading::payload() const {
  std::string out = "0,0,0";
  if (left) out[0] = '1';
  if (center) out[2] = '1';
  if (right) out[4] = '1';
  return out;
}

std::optional<Command> parse_command(std::string_view topic, std::string_view payload) {
  using K = Command::Kind;
  auto direction = [&](bool allow_behind) {
    if (payload == "left") return TurnDir::kLeft;
    if (payload == "right") return TurnDir::kRight;
    if (allow_behind && payload == "behind") return TurnDir::kBehind;
    throw std::invalid_argument("unexpected direction on " + std::string(topic) + ": '" + std::string(payload) + "'");
  };
  if (topic == "cmd/velocity") {
    if (payload.substr(0, 2) != "v=") throw std::invalid_argument("velocity payload must be v=<float>");
    const std::string_view number = payload.substr(2);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), v);
    if (ec != std::errc() || ptr != number.data() + number.size() || !std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("bad velocity '" + std::string(payload) + "'");
    }
    return Command{K::kSetVelocity, v, TurnDir::kAhead};
  }
  if (topic == "cmd/steer") return Command{K::kSteer, 0.0, direction(false)};
  if (topic == "cmd/turn") return Command{K::kSelectTurn, 0.0, direction(true)};
  if (topic == "cmd/halt") return Command{K::kHalt, 0.0, TurnDir::kAhead};
  if (topic == "cmd/dock") return Command{K::kDock, 0.0, TurnDir::kAhead};
  if (topic == "cmd/undock") return Command{K::kUndock, 0.0, TurnDir::kAhead};
  return std::nullopt;
}

std::string format_ratio(double ratio) {
  const double rounded = std::round(ratio * 1e6) / 1e6;
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, rounded);
  return std::string(buf, ptr);
}

World::World(TrackMap map, const RobotStart& start, double battery, SensorConfig sensors,
             BatteryConfig battery_config)
    : map_(std::move(map)), sensors_(sensors), battery_config_(battery_config), rng_(sensors.seed) {
  const auto len = map_.length(start.node, start.toward);
  if (!len) throw std::invalid_argument("no edge from " + start.node + " to " + start.toward);
  if (start.offset < 0.0 || start.offset > *len) throw std::invalid_argument("start offset outside the edge");
  if (battery < 0.0 || battery > 1.0) throw std::invalid_argument("battery ratio must lie in [0,1]");
  robot_.from = start.node;
  robot_.to = start.toward;
  robot_.progress = start.offset;
  robot_.battery = battery;
  edge_length_ = *len;
}

void World::set_state(RobotState state) {
  const auto len = map_.length(state.from, state.to);
  if (!len) throw std::invalid_argument("no edge from " + state.from + " to " + state.to);
  if (state.progress < 0.0 || state.progress > *len) throw std::invalid_argument("progress outside the edge");
  if (state.battery < 0.0 || state.battery > 1.0) throw std::invalid_argument("battery ratio must lie in [0,1]");
  if (state.speed < 0.0) throw std::invalid_argument("speed must be non-negative");
  if (state.docked && state.speed != 0.0) throw std::invalid_argument("a docked robot cannot move");
  robot_ = std::move(state);
  edge_length_ = *len;
}

void World::raise_fault(std::string reason) {
  if (!fault_reason_.empty()) return;
  get_logger("sim")->warn("fault: {}", reason);
  fault_reason_ = std::move(reason);
}

void World::tick(double dt) {
  if (!(dt > 0.0) || dt > kMaxDt) throw std::invalid_argument("tick dt must lie in (0, 0.05]");
  RobotState& r = robot_;
  if (r.docked) {
    r.battery = std::min(1.0, r.battery + battery_config_.charge_rate * dt);
    return;
  }
  if (r.speed > 0.0) {
    r.drift += sensors_.drift_sigma * std::sqrt(dt) * normal_(rng_);
    r.drift = std::clamp(r.drift, -kMaxDrift, kMaxDrift);
    r.progress += r.speed * dt;
    r.battery -= battery_config_.drain_moving * dt;
    while (r.progress >= edge_length_ && r.speed > 0.0) arrive();
  } else {
    r.battery -= battery_config_.drain_idle * dt;
  }
  r.battery = std::clamp(r.battery, 0.0, 1.0);
}

void World::arrive() {
  RobotState& r = robot_;
  const TurnDir dir = r.armed_turn.value_or(TurnDir::kAhead);
  const auto next = map_.departure(r.to, r.from, dir);
  arrivals_.push_back(r.to);
  if (!next) {
    r.progress = edge_length_;
    r.speed = 0.0;
    raise_fault("no '" + std::string(turn_name(dir)) + "' departure at " + r.to + " arriving from " + r.from);
    return;
  }
  const double leftover = r.progress - edge_length_;
  r.from = r.to;
  r.to = *next;
  edge_length_ = *map_.length(r.from, r.to);
  r.progress = std::min(leftover, edge_length_);
  r.armed_turn.reset();
  r.drift = 0.0;
}

std::optional<std::string> World::node_within(double radius) const {
  const double to_from = robot_.progress;
  const double to_to = edge_length_ - robot_.progress;
  if (to_from <= radius && (to_from <= to_to || to_to > radius)) return robot_.from;
  if (to_to <= radius) return robot_.to;
  return std::nullopt;
}

LineReading World::read_line_sensor() const {
  if (node_within(sensors_.junction_radius)) return {true, true, true};
  const double d = robot_.drift;
  if (std::abs(d) >= kLostBand) return {false, false, false};
  if (std::abs(d) < kCenterBand) return {false, true, false};
  return d > 0.0 ? LineReading{true, false, false} : LineReading{false, false, true};
}

std::optional<std::pair<std::string, std::string>> World::read_camera() {
  const auto node = node_within(sensors_.camera_radius);
  if (!node || node == last_seen_) return std::nullopt;
  std::pair<std::string, std::string> out{*node, last_seen_.value_or(*node)};
  last_seen_ = *node;
  return out;
}

void World::apply(const Command& command) {
  using K = Command::Kind;
  RobotState& r = robot_;
  switch (command.kind) {
    case K::kSetVelocity:
      if (r.docked) {
        get_logger("sim")->warn("velocity command ignored while docked");
        return;
      }
      r.speed = command.velocity;
      return;
    case K::kSteer: {
      const double mag = std::max(0.0, std::abs(r.drift) - kSteerStep);
      r.drift = std::copysign(mag, r.drift);
      return;
    }
    case K::kSelectTurn:
      // Still inside the marking of the node just left: the command belongs
      // to that node and is ignored.
      if (r.progress <= sensors_.junction_radius && r.progress < edge_length_ - sensors_.junction_radius) {
        return;
      }
      r.armed_turn = command.dir;
      return;
    case K::kHalt:
      r.speed = 0.0;
      return;
    case K::kDock: {
      const auto node = node_within(sensors_.dock_radius);
      if (!node || !map_.is_dock(*node)) {
        raise_fault("dock command away from a dock node");
        return;
      }
      r.docked = true;
      r.speed = 0.0;
      return;
    }
    case K::kUndock:
      r.docked = false;
      return;
  }
}

}  // namespace tunnelmail::sim
