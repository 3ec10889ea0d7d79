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

#ifndef TUNNELMAIL_SIM_IO_HPP_
#define TUNNELMAIL_SIM_IO_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "tunnelmail/bus/broker.hpp"
#include "tunnelmail/sim/world.hpp"

namespace tunnelmail::sim {

inline constexpr const char* kLineTopic = "sensor/line";
inline constexpr const char* kQrTopic = "sensor/qr";
inline constexpr const char* kBatteryTopic = "battery/chargeratio";

/// Publishes raw sensor readings on the sensor topics at their configured
/// rates and phases, driven by an integer millisecond clock.
class SensorPump {
 public:
  SensorPump(World& world, bus::Broker& broker);
  /// Publishes every stream due at `t_ms`.
  void on_tick(std::int64_t t_ms);

 private:
  struct Stream {
    std::int64_t period_ms;
    std::int64_t phase_ms;
    bool due(std::int64_t t_ms) const { return t_ms >= phase_ms && (t_ms - phase_ms) % period_ms == 0; }
  };

  World& world_;
  bus::Broker& broker_;
  Stream line_;
  Stream camera_;
  Stream battery_;
};

/// Drains the actuator topics once per tick and applies them to the world
/// in timestamp order.
class CommandSink {
 public:
  explicit CommandSink(bus::Broker& broker);
  ~CommandSink();
  CommandSink(const CommandSink&) = delete;
  CommandSink& operator=(const CommandSink&) = delete;

  /// Returns the number of commands applied.
  std::size_t apply_pending(World& world);

 private:
  bus::Broker& broker_;
  std::vector<std::shared_ptr<bus::Subscription>> subs_;
};

}  // namespace tunnelmail::sim

#endif  // TUNNELMAIL_SIM_IO_HPP_
