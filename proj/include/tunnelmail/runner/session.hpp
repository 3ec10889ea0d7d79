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

#ifndef TUNNELMAIL_RUNNER_SESSION_HPP_
#define TUNNELMAIL_RUNNER_SESSION_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tunnelmail/engine/engine.hpp"
#include "tunnelmail/mission/scenario.hpp"
#include "tunnelmail/runner/period_stats.hpp"
#include "tunnelmail/runner/record.hpp"
#include "tunnelmail/sim/world.hpp"
#include "tunnelmail/translate/translators.hpp"

namespace tunnelmail::runner {

/// Bad paths, unparsable inputs or inconsistent settings.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { kDeterministic, kRealtime };
enum class Outcome { kDelivered, kDockedLowBattery, kTimeout, kFault };

std::string mode_name(Mode mode);
std::string outcome_name(Outcome outcome);

struct RunConfig {
  /// Overrides the scenario's map when set.
  std::string map_path;
  /// Empty means the built-in delivery scenario unless `scenario` is set.
  std::string scenario_path;
  std::optional<mission::Scenario> scenario;
  /// Replaces the assembled program when set.
  std::string asl_path;
  Mode mode = Mode::kDeterministic;
  /// Simulated seconds.
  double duration = 600.0;
  std::uint64_t seed = 1;
  std::optional<std::uint16_t> bridge_port;
  std::string record_path;
  std::string metrics_path;
  /// JSON-lines of every cycle that selected an event or emitted an action.
  std::string cycle_log_path;
  /// Wall seconds per simulated second in realtime mode.
  double pacing = 1.0;
  /// Ends the run as soon as the mission outcome is settled.
  bool stop_on_outcome = false;
  sim::SensorConfig sensors;
  translate::TranslatorConfig translator;
  std::size_t stack_bound = 64;
  int depth_limit = 256;
  /// Checked once per tick; lets a caller end a realtime session.
  const std::atomic<bool>* stop = nullptr;
  /// Called with the bridge port once the bridge listens.
  std::function<void(std::uint16_t)> on_bridge_ready;
  /// Called after every tick with the simulated time in seconds.
  std::function<void(double, const sim::World&, const engine::Engine&)> observer;

  /// Applies keys of a JSON config file (same names as the CLI flags plus
  /// `sensors`, `translator` and `engine` sections). Throws ConfigError.
  void apply_json(const nlohmann::json& j);
  void validate() const;
};

struct SessionReport {
  Outcome outcome = Outcome::kTimeout;
  double sim_seconds = 0.0;
  double wall_seconds = 0.0;
  std::uint64_t cycles = 0;
  std::size_t actions = 0;
  std::size_t percepts = 0;
  std::size_t max_queue_depth = 0;
  std::size_t unfinished_intentions = 0;
  std::string fault;
  std::optional<double> delivered_at;
  std::optional<double> docked_at;
  std::optional<std::uint16_t> bridge_port;
  std::vector<RecordEntry> record;
  PeriodStats stats;

  nlohmann::json to_json() const;
};

/// Wires bus, simulator, translators and engine and runs them for the
/// configured duration on a 1 ms tick. Throws ConfigError.
SessionReport run_session(const RunConfig& config);

struct ReplayResult {
  std::vector<std::string> actions;
  PeriodStats stats;
};

/// Feeds the recorded `perceptions` stream, tick by tick, into a fresh
/// engine running the program stored in the record header. Throws
/// RecordError or ConfigError.
ReplayResult replay(const std::vector<RecordEntry>& record);

/// Payloads of one topic, in record order.
std::vector<std::string> payloads(const std::vector<RecordEntry>& record, const std::string& topic);

}  // namespace tunnelmail::runner

#endif  // TUNNELMAIL_RUNNER_SESSION_HPP_
