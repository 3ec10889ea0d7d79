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

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tunnelmail/mission/assemble.hpp"
#include "tunnelmail/runner/session.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop.store(true); }

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFault = 2;

int run_replay(const std::string& path) {
  using namespace tunnelmail::runner;
  const std::vector<RecordEntry> record = read_record(path);
  const ReplayResult result = replay(record);
  const std::vector<std::string> recorded = payloads(record, "actions");
  const bool match = result.actions == recorded;
  nlohmann::json out = {{"replayed_actions", result.actions.size()},
                        {"recorded_actions", recorded.size()},
                        {"match", match},
                        {"periods", result.stats.to_json()}};
  std::cout << out.dump(2) << '\n';
  return match ? kExitOk : kExitFault;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tunnelmail;
  CLI::App app{"Tunnelmail: BDI mail-delivery robot in a simulated tunnel"};
  runner::RunConfig config;
  std::string config_path, replay_path, mode = "deterministic", emit_asl;
  std::optional<double> duration, pacing;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint16_t> bridge_port;
  std::string map_path, scenario_path, asl_path, record_path, metrics_path, cycle_log_path;
  bool stop_on_outcome = false;

  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--map", map_path, "Track map JSON (overrides the scenario's map)");
  app.add_option("--scenario", scenario_path, "Scenario JSON (default: built-in delivery scenario)");
  app.add_option("--asl", asl_path, "Agent program to run instead of the assembled one");
  app.add_option("--mode", mode, "deterministic or realtime")->check(CLI::IsMember({"deterministic", "realtime"}));
  app.add_option("--duration", duration, "Simulated seconds to run");
  app.add_option("--seed", seed, "Sensor noise seed");
  app.add_option("--bridge-port", bridge_port, "Expose the bus on this TCP/WebSocket port (0 picks one)");
  app.add_option("--record", record_path, "Write the JSON-lines topic record here");
  app.add_option("--metrics", metrics_path, "Write the report and period statistics here");
  app.add_option("--cycle-log", cycle_log_path, "Write non-idle reasoning cycles as JSON lines here");
  app.add_option("--pacing", pacing, "Wall seconds per simulated second in realtime mode");
  app.add_option("--replay", replay_path, "Replay a record's perceptions and compare the actions");
  app.add_option("--emit-asl", emit_asl, "Write the assembled agent program here and exit");
  app.add_flag("--stop-on-outcome", stop_on_outcome, "End the run once the mission outcome is settled");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!replay_path.empty()) return run_replay(replay_path);

    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw runner::ConfigError("cannot open config '" + config_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw runner::ConfigError("config '" + config_path + "': " + e.what());
      }
      config.apply_json(j);
    }
    if (!map_path.empty()) config.map_path = map_path;
    if (!scenario_path.empty()) config.scenario_path = scenario_path;
    if (!asl_path.empty()) config.asl_path = asl_path;
    if (app.count("--mode")) config.mode = mode == "realtime" ? runner::Mode::kRealtime : runner::Mode::kDeterministic;
    if (duration) config.duration = *duration;
    if (seed) config.seed = *seed;
    if (bridge_port) config.bridge_port = *bridge_port;
    if (!record_path.empty()) config.record_path = record_path;
    if (!metrics_path.empty()) config.metrics_path = metrics_path;
    if (!cycle_log_path.empty()) config.cycle_log_path = cycle_log_path;
    if (pacing) config.pacing = *pacing;
    if (stop_on_outcome) config.stop_on_outcome = true;

    if (!emit_asl.empty()) {
      mission::Scenario s =
          config.scenario_path.empty() ? mission::Scenario::delivery() : mission::Scenario::load(config.scenario_path);
      if (!config.map_path.empty()) s.map_path = config.map_path;
      std::ofstream out(emit_asl, std::ios::binary | std::ios::trunc);
      if (!out) throw runner::ConfigError("cannot write '" + emit_asl + "'");
      out << mission::assemble_program(s, s.load_map());
      return kExitOk;
    }

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    config.stop = &g_stop;
    const runner::SessionReport report = runner::run_session(config);
    std::cout << report.to_json().dump(2) << '\n';
    return report.outcome == runner::Outcome::kFault ? kExitFault : kExitOk;
  } catch (const runner::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const runner::RecordError& e) {
    std::cerr << "record error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitConfig;
}
