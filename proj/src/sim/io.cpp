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

#include "tunnelmail/sim/io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tunnelmail/common/log.hpp"

namespace tunnelmail::sim {
namespace {

std::int64_t to_ms(double seconds) { return static_cast<std::int64_t>(std::llround(seconds * 1000.0)); }

std::int64_t period_ms(double rate) { return std::max<std::int64_t>(1, to_ms(1.0 / rate)); }

constexpr const char* kCommandTopics[] = {"cmd/velocity", "cmd/steer", "cmd/turn",
                                          "cmd/halt",     "cmd/dock",  "cmd/undock"};

}  // namespace

SensorPump::SensorPump(World& world, bus::Broker& broker)
    : world_(world),
      broker_(broker),
      line_{period_ms(world.sensors().line_rate), to_ms(world.sensors().line_phase)},
      camera_{period_ms(world.sensors().camera_rate), to_ms(world.sensors().camera_phase)},
      battery_{period_ms(world.sensors().battery_rate), to_ms(world.sensors().battery_phase)} {}

void SensorPump::on_tick(std::int64_t t_ms) {
  if (line_.due(t_ms)) broker_.publish(kLineTopic, world_.read_line_sensor().payload());
  if (camera_.due(t_ms)) {
    if (const auto seen = world_.read_camera()) broker_.publish(kQrTopic, seen->first + "," + seen->second);
  }
  if (battery_.due(t_ms)) broker_.publish(kBatteryTopic, format_ratio(world_.robot().battery));
}

CommandSink::CommandSink(bus::Broker& broker) : broker_(broker) {
  for (const char* topic : kCommandTopics) subs_.push_back(broker_.subscribe(topic));
}

CommandSink::~CommandSink() {
  for (const auto& s : subs_) broker_.unsubscribe(s);
}

std::size_t CommandSink::apply_pending(World& world) {
  std::vector<bus::BusMessage> pending;
  for (const auto& s : subs_) {
    for (bus::BusMessage& m : s->drain()) pending.push_back(std::move(m));
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [](const bus::BusMessage& a, const bus::BusMessage& b) { return a.ts < b.ts; });
  std::size_t applied = 0;
  for (const bus::BusMessage& m : pending) {
    try {
      if (const auto command = parse_command(m.topic, m.payload)) {
        world.apply(*command);
        ++applied;
      }
    } catch (const std::invalid_argument& e) {
      get_logger("sim")->warn("dropping command on {}: {}", m.topic, e.what());
    }
  }
  return applied;
}

}  // namespace tunnelmail::sim
