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

#ifndef TUNNELMAIL_MISSION_SCENARIO_HPP_
#define TUNNELMAIL_MISSION_SCENARIO_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tunnelmail/sim/track_map.hpp"
#include "tunnelmail/sim/world.hpp"

namespace tunnelmail::mission {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A perception published on `perceptions` at simulated time `t` seconds.
struct ScriptedPercept {
  double t = 0.0;
  std::string payload;
  friend bool operator==(const ScriptedPercept&, const ScriptedPercept&) = default;
};

enum class StartMode {
  /// The runner publishes request(SENDER,RECEIVER) at start_at.
  kRequest,
  /// Sender and receiver are program beliefs; the runner posts !deliverMail
  /// at start_at.
  kBeliefs,
};

struct Scenario {
  std::string name = "scenario";
  /// Map file; empty means the built-in default map. Relative paths resolve
  /// against the scenario file's directory.
  std::string map_path;
  std::string sender;
  std::string receiver;
  std::string dock;
  sim::RobotStart start;
  double battery_start = 1.0;
  sim::BatteryConfig battery;
  StartMode start_mode = StartMode::kRequest;
  double start_at = 0.5;
  std::vector<ScriptedPercept> perceptions;

  /// Throws ScenarioError unless sender, receiver and dock are distinct
  /// nodes of `map`, the dock is a dock node and the start edge exists.
  void validate(const sim::TrackMap& map) const;
  /// The map named by map_path, or the default map.
  sim::TrackMap load_map() const;

  static Scenario from_json(const nlohmann::json& j, const std::string& base_dir = "");
  static Scenario load(const std::string& path);
  nlohmann::json to_json() const;

  /// Sender post1, receiver post4, dock post5, starting at post5 toward post3
  /// on a full battery.
  static Scenario delivery();
  /// The delivery scenario starting at 0.27 charge with a drain that crosses
  /// 0.25 on the way back from post1, before post3.
  static Scenario battery_abort();
};

std::string start_mode_name(StartMode mode);

}  // namespace tunnelmail::mission

#endif  // TUNNELMAIL_MISSION_SCENARIO_HPP_
