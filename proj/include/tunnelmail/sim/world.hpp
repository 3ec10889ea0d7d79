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

#ifndef TUNNELMAIL_SIM_WORLD_HPP_
#define TUNNELMAIL_SIM_WORLD_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tunnelmail/sim/track_map.hpp"

namespace tunnelmail::sim {

struct SensorConfig {
  double line_rate = 10.0;
  double camera_rate = 2.0;
  double battery_rate = 1.0;
  /// Phase offsets in seconds so the periodic streams do not share ticks.
  double line_phase = 0.0;
  double camera_phase = 0.04;
  double battery_phase = 0.02;
  /// Lateral drift random walk intensity in m/sqrt(s).
  double drift_sigma = 0.01;
  std::uint64_t seed = 1;
  double camera_radius = 0.2;
  double junction_radius = 0.05;
  double dock_radius = 0.1;

  /// Throws std::invalid_argument on non-positive rates or a tick rate below
  /// twice the fastest sensor.
  void validate(double tick_rate_hz) const;
};

struct BatteryConfig {
  double drain_moving = 0.000625;
  double drain_idle = 0.00005;
  double charge_rate = 0.01;
};

struct LineReading {
  bool left = false;
  bool center = false;
  bool right = false;

  /// "L,C,R" as 0/1 bits.
  std::string payload() const;
  friend bool operator==(const LineReading&, const LineReading&) = default;
};

struct RobotStart {
  std::string node;
  std::string toward;
  /// Metres along the start edge; outside the junction marking by default.
  double offset = 0.1;
};

/// The robot travels the directed edge from -> to.
struct RobotState {
  std::string from;
  std::string to;
  double progress = 0.0;
  double speed = 0.0;
  /// Signed lateral offset; positive means the line appears left.
  double drift = 0.0;
  bool docked = false;
  double battery = 1.0;
  std::optional<TurnDir> armed_turn;
};

struct Command {
  enum class Kind { kSetVelocity, kSteer, kSelectTurn, kHalt, kDock, kUndock };
  Kind kind = Kind::kHalt;
  double velocity = 0.0;
  TurnDir dir = TurnDir::kAhead;
};

/// Decodes one actuator topic message. Returns nullopt for topics outside
/// `cmd/*`; throws std::invalid_argument on a malformed payload.
std::optional<Command> parse_command(std::string_view topic, std::string_view payload);

/// Formats a charge ratio for `battery/chargeratio` (shortest decimal after
/// rounding to 1e-6).
std::string format_ratio(double ratio);

class World {
 public:
  static constexpr double kMaxDt = 0.05;
  static constexpr double kMaxDrift = 0.1;
  static constexpr double kSteerStep = 0.01;
  static constexpr double kCenterBand = 0.015;
  static constexpr double kLostBand = 0.05;

  World(TrackMap map, const RobotStart& start, double battery, SensorConfig sensors = {},
        BatteryConfig battery_config = {});

  /// Advances physics by dt seconds (0 < dt <= kMaxDt).
  void tick(double dt);
  LineReading read_line_sensor() const;
  /// (current, previous) on first sight of a node different from the camera
  /// history; updates the history.
  std::optional<std::pair<std::string, std::string>> read_camera();
  void apply(const Command& command);
  /// Replaces the robot state, for scenario setup and tests. Throws
  /// std::invalid_argument if the state violates the world invariants.
  void set_state(RobotState state);

  const RobotState& robot() const { return robot_; }
  const TrackMap& map() const { return map_; }
  const SensorConfig& sensors() const { return sensors_; }
  double edge_length() const { return edge_length_; }
  const std::optional<std::string>& camera_last_seen() const { return last_seen_; }
  bool fault() const { return !fault_reason_.empty(); }
  const std::string& fault_reason() const { return fault_reason_; }
  /// Nodes the robot has driven over, in order.
  const std::vector<std::string>& arrivals() const { return arrivals_; }
  /// Closest end of the current edge within `radius`, if any.
  std::optional<std::string> node_within(double radius) const;

 private:
  void raise_fault(std::string reason);
  void arrive();

  TrackMap map_;
  SensorConfig sensors_;
  BatteryConfig battery_config_;
  RobotState robot_;
  double edge_length_ = 0.0;
  std::optional<std::string> last_seen_;
  std::string fault_reason_;
  std::vector<std::string> arrivals_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace tunnelmail::sim

#endif  // TUNNELMAIL_SIM_WORLD_HPP_
