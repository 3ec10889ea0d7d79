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

#include "tunnelmail/runner/session.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "tunnelmail/asl/parser.hpp"
#include "tunnelmail/bus/bridge.hpp"
#include "tunnelmail/common/log.hpp"
#include "tunnelmail/mission/assemble.hpp"
#include "tunnelmail/mission/nav_rules.hpp"
#include "tunnelmail/sim/io.hpp"

namespace tunnelmail::runner {
namespace {

constexpr std::int64_t kTickNs = 1000000;
constexpr double kTickSeconds = 0.001;

std::int64_t to_ticks(double seconds) { return static_cast<std::int64_t>(std::llround(seconds * 1000.0)); }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

asl::Program parse_or_throw(const std::string& text, const std::string& origin) {
  try {
    return asl::parse_program(text);
  } catch (const asl::ParseError& e) {
    throw ConfigError(origin + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                      e.message());
  }
}

struct Prepared {
  mission::Scenario scenario;
  sim::TrackMap map;
  std::string program_text;
  asl::Program program;
};

Prepared prepare(const RunConfig& config) {
  Prepared p;
  try {
    if (config.scenario) {
      p.scenario = *config.scenario;
    } else if (!config.scenario_path.empty()) {
      p.scenario = mission::Scenario::load(config.scenario_path);
    } else {
      p.scenario = mission::Scenario::delivery();
    }
    if (!config.map_path.empty()) p.scenario.map_path = config.map_path;
    p.map = p.scenario.load_map();
    p.scenario.validate(p.map);
    p.program_text = config.asl_path.empty() ? mission::assemble_program(p.scenario, p.map) : read_text(config.asl_path);
  } catch (const mission::ScenarioError& e) {
    throw ConfigError(e.what());
  } catch (const sim::MapError& e) {
    throw ConfigError(e.what());
  } catch (const mission::GenerationError& e) {
    throw ConfigError(e.what());
  }
  p.program = parse_or_throw(p.program_text, config.asl_path.empty() ? "assembled program" : config.asl_path);
  return p;
}

engine::EngineConfig engine_config(std::size_t stack_bound, int depth_limit,
                                   const std::shared_ptr<bus::VirtualClock>& clock) {
  engine::EngineConfig c;
  c.stack_bound = stack_bound;
  c.depth_limit = depth_limit;
  c.action_repertoire = translate::is_robot_action;
  c.clock = [clock] { return clock->now_ns(); };
  return c;
}

const asl::Term& goal_term() {
  static const asl::Term goal = asl::parse_literal("deliverMail");
  return goal;
}

}  // namespace

std::string mode_name(Mode mode) { return mode == Mode::kDeterministic ? "deterministic" : "realtime"; }

std::string outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::kDelivered: return "delivered";
    case Outcome::kDockedLowBattery: return "docked-low-battery";
    case Outcome::kTimeout: return "timeout";
    case Outcome::kFault: return "fault";
  }
  return "?";
}

void RunConfig::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "map") {
        map_path = value.get<std::string>();
      } else if (key == "scenario") {
        scenario_path = value.get<std::string>();
      } else if (key == "asl") {
        asl_path = value.get<std::string>();
      } else if (key == "mode") {
        const std::string m = value.get<std::string>();
        if (m == "deterministic") {
          mode = Mode::kDeterministic;
        } else if (m == "realtime") {
          mode = Mode::kRealtime;
        } else {
          throw ConfigError("unknown mode '" + m + "'");
        }
      } else if (key == "duration") {
        duration = value.get<double>();
      } else if (key == "seed") {
        seed = value.get<std::uint64_t>();
      } else if (key == "bridge_port") {
        bridge_port = value.get<std::uint16_t>();
      } else if (key == "record") {
        record_path = value.get<std::string>();
      } else if (key == "metrics") {
        metrics_path = value.get<std::string>();
      } else if (key == "cycle_log") {
        cycle_log_path = value.get<std::string>();
      } else if (key == "pacing") {
        pacing = value.get<double>();
      } else if (key == "stop_on_outcome") {
        stop_on_outcome = value.get<bool>();
      } else if (key == "sensors") {
        sensors.line_rate = value.value("line_rate", sensors.line_rate);
        sensors.camera_rate = value.value("camera_rate", sensors.camera_rate);
        sensors.battery_rate = value.value("battery_rate", sensors.battery_rate);
        sensors.drift_sigma = value.value("drift_sigma", sensors.drift_sigma);
        sensors.camera_radius = value.value("camera_radius", sensors.camera_radius);
        sensors.junction_radius = value.value("junction_radius", sensors.junction_radius);
        sensors.dock_radius = value.value("dock_radius", sensors.dock_radius);
      } else if (key == "translator") {
        translator.forward_speed = value.value("forward_speed", translator.forward_speed);
        translator.low_battery_threshold = value.value("low_battery_threshold", translator.low_battery_threshold);
      } else if (key == "engine") {
        stack_bound = value.value("stack_bound", stack_bound);
        depth_limit = value.value("depth_limit", depth_limit);
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

void RunConfig::validate() const {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be a non-negative number");
  if (mode == Mode::kRealtime && !(pacing > 0.0)) throw ConfigError("realtime mode needs a positive pacing factor");
  if (!(translator.forward_speed > 0.0)) throw ConfigError("forward speed must be positive");
  if (translator.low_battery_threshold < 0.0 || translator.low_battery_threshold > 1.0) {
    throw ConfigError("low battery threshold must lie in [0,1]");
  }
  if (stack_bound == 0 || depth_limit <= 0) throw ConfigError("engine bounds must be positive");
  try {
    sensors.validate(1.0 / kTickSeconds);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json SessionReport::to_json() const {
  nlohmann::json j = {
      {"outcome", outcome_name(outcome)},
      {"sim_seconds", sim_seconds},
      {"wall_seconds", wall_seconds},
      {"cycles", cycles},
      {"actions", actions},
      {"percepts", percepts},
      {"max_queue_depth", max_queue_depth},
      {"unfinished_intentions", unfinished_intentions},
  };
  if (!fault.empty()) j["fault"] = fault;
  if (delivered_at) j["delivered_at"] = *delivered_at;
  if (docked_at) j["docked_at"] = *docked_at;
  if (bridge_port) j["bridge_port"] = *bridge_port;
  return j;
}

SessionReport run_session(const RunConfig& config) {
  config.validate();
  Prepared prepared = prepare(config);
  const mission::Scenario& scenario = prepared.scenario;
  const auto wall_start = std::chrono::steady_clock::now();
  auto log = get_logger("runner");

  auto clock = std::make_shared<bus::VirtualClock>();
  bus::Broker broker(clock);
  Recorder recorder(broker);
  const std::int64_t total_ticks = to_ticks(config.duration);
  const std::int64_t start_tick = to_ticks(scenario.start_at);
  const nlohmann::json header = {{"program", prepared.program_text},
                                 {"start_mode", mission::start_mode_name(scenario.start_mode)},
                                 {"start_at_ms", start_tick},
                                 {"duration_ms", total_ticks},
                                 {"stack_bound", config.stack_bound},
                                 {"depth_limit", config.depth_limit}};
  recorder.add({kSessionTopic, 1, 0, header.dump()});

  sim::SensorConfig sensors = config.sensors;
  sensors.seed = config.seed;
  sim::World world(prepared.map, scenario.start, scenario.battery_start, sensors, scenario.battery);
  sim::SensorPump pump(world, broker);
  sim::CommandSink sink(broker);
  translate::PerceptionTranslator perception_translator(broker, config.translator);
  translate::ActionTranslator action_translator(broker, config.translator);
  auto percept_sub = broker.subscribe(translate::kPerceptionsTopic, 1024);

  engine::StateSync sync;
  engine::Engine engine(prepared.program, sync, engine_config(config.stack_bound, config.depth_limit, clock));

  std::unique_ptr<bus::Bridge> bridge;
  SessionReport report;
  if (config.bridge_port) {
    bus::BridgeConfig bc;
    bc.port = *config.bridge_port;
    bc.meta["meta/map"] = prepared.map.to_json().dump();
    bc.meta["meta/scenario"] = scenario.to_json().dump();
    bridge = std::make_unique<bus::Bridge>(broker, bc);
    bridge->start();
    report.bridge_port = bridge->port();
    log->info("bridge listening on {}:{}", bc.host, bridge->port());
    if (config.on_bridge_ready) config.on_bridge_ready(bridge->port());
  }

  std::vector<std::pair<std::int64_t, std::string>> script;
  if (scenario.start_mode == mission::StartMode::kRequest) {
    script.push_back({start_tick, "request(" + scenario.sender + "," + scenario.receiver + ")"});
  }
  for (const mission::ScriptedPercept& p : scenario.perceptions) script.push_back({to_ticks(p.t), p.payload});
  std::stable_sort(script.begin(), script.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::ofstream cycle_log;
  if (!config.cycle_log_path.empty()) {
    cycle_log.open(config.cycle_log_path, std::ios::trunc);
    if (!cycle_log) throw ConfigError("cannot write cycle log '" + config.cycle_log_path + "'");
  }

  const asl::Term have_mail = asl::parse_literal("haveMail");
  const asl::Term battery_low = asl::parse_literal("batteryLow");
  bool saw_have_mail = false;
  bool saw_battery_low = false;
  std::size_t next_script = 0;
  std::int64_t t = 0;
  for (; t < total_ticks; ++t) {
    if (config.stop && config.stop->load()) break;
    clock->set_ns(t * kTickNs);
    for (; next_script < script.size() && script[next_script].first <= t; ++next_script) {
      broker.publish(translate::kPerceptionsTopic, script[next_script].second);
    }
    if (scenario.start_mode == mission::StartMode::kBeliefs && t == start_tick) engine.post_goal(goal_term());
    sink.apply_pending(world);
    pump.on_tick(t);
    perception_translator.pump();
    for (bus::BusMessage& m : percept_sub->drain()) sync.perceptions.push(std::move(m.payload));

    const engine::CycleReport cycle = engine.step();
    report.percepts += cycle.percepts_consumed;
    report.max_queue_depth = std::max(report.max_queue_depth, cycle.perception_queue_depth);
    if (cycle_log.is_open() && (cycle.event_selected || !cycle.actions_emitted.empty())) {
      cycle_log << cycle.to_json().dump() << '\n';
    }
    for (std::string& a : sync.actions.drain()) {
      broker.publish(translate::kActionsTopic, std::move(a));
      ++report.actions;
    }
    sync.outbox.drain();
    action_translator.pump();
    world.tick(kTickSeconds);

    const double now_s = static_cast<double>(t + 1) * kTickSeconds;
    const bool has_mail = engine.beliefs().contains(have_mail);
    saw_have_mail = saw_have_mail || has_mail;
    saw_battery_low = saw_battery_low || engine.beliefs().contains(battery_low);
    if (config.observer) config.observer(now_s, world, engine);
    if (!report.delivered_at && saw_have_mail && !has_mail && world.robot().speed == 0.0 &&
        world.camera_last_seen() == scenario.receiver) {
      report.delivered_at = now_s;
      log->info("delivered at {:.3f} s", now_s);
    }
    if (!report.docked_at && saw_battery_low && world.robot().docked) {
      report.docked_at = now_s;
      log->info("docked on low battery at {:.3f} s", now_s);
    }
    if (world.fault()) {
      ++t;
      break;
    }
    if (config.stop_on_outcome && (report.delivered_at || report.docked_at)) {
      ++t;
      break;
    }
    if (config.mode == Mode::kRealtime) {
      const auto due = wall_start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                        std::chrono::duration<double>((t + 1) * kTickSeconds * config.pacing));
      std::this_thread::sleep_until(due);
    }
  }
  if (bridge) bridge->stop();

  report.sim_seconds = static_cast<double>(t) * kTickSeconds;
  report.cycles = engine.cycle_count();
  report.unfinished_intentions = engine.unfinished_intentions();
  if (world.fault()) {
    report.outcome = Outcome::kFault;
    report.fault = world.fault_reason();
  } else if (report.delivered_at) {
    report.outcome = Outcome::kDelivered;
  } else if (report.docked_at) {
    report.outcome = Outcome::kDockedLowBattery;
  } else {
    report.outcome = Outcome::kTimeout;
  }
  report.record = recorder.entries();
  report.stats = compute_period_stats(report.record);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  if (!config.record_path.empty()) write_record(config.record_path, report.record);
  if (!config.metrics_path.empty()) {
    std::ofstream out(config.metrics_path, std::ios::trunc);
    if (!out) throw ConfigError("cannot write metrics '" + config.metrics_path + "'");
    out << nlohmann::json{{"report", report.to_json()}, {"periods", report.stats.to_json()}}.dump(2) << '\n';
  }
  return report;
}

ReplayResult replay(const std::vector<RecordEntry>& record) {
  ReplayResult result;
  if (record.empty()) return result;
  if (record.front().topic != kSessionTopic) throw RecordError(1, "record does not start with a session header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(record.front().payload);
  } catch (const nlohmann::json::exception& e) {
    throw RecordError(1, std::string("bad session header: ") + e.what());
  }
  const asl::Program program = parse_or_throw(header.value("program", ""), "recorded program");
  const bool beliefs_mode = header.value("start_mode", "request") == "beliefs";
  const std::int64_t start_tick = header.value("start_at_ms", std::int64_t{0});
  const std::int64_t total_ticks = header.value("duration_ms", std::int64_t{0});

  std::map<std::int64_t, std::vector<std::string>> by_tick;
  std::vector<RecordEntry> rebuilt = {record.front()};
  for (const RecordEntry& e : record) {
    if (e.topic != translate::kPerceptionsTopic) continue;
    by_tick[e.ts / kTickNs].push_back(e.payload);
    rebuilt.push_back(e);
  }

  auto clock = std::make_shared<bus::VirtualClock>();
  engine::StateSync sync;
  engine::Engine engine(program, sync,
                        engine_config(header.value("stack_bound", std::size_t{64}), header.value("depth_limit", 256),
                                      clock));
  std::uint64_t seq = 0;
  for (std::int64_t t = 0; t < total_ticks; ++t) {
    clock->set_ns(t * kTickNs);
    if (beliefs_mode && t == start_tick) engine.post_goal(goal_term());
    if (const auto it = by_tick.find(t); it != by_tick.end()) {
      for (const std::string& p : it->second) sync.perceptions.push(p);
    }
    engine.step();
    for (std::string& a : sync.actions.drain()) {
      rebuilt.push_back({translate::kActionsTopic, ++seq, t * kTickNs, a});
      result.actions.push_back(std::move(a));
    }
  }
  std::stable_sort(rebuilt.begin() + 1, rebuilt.end(),
                   [](const RecordEntry& a, const RecordEntry& b) { return a.ts < b.ts; });
  result.stats = compute_period_stats(rebuilt);
  return result;
}

std::vector<std::string> payloads(const std::vector<RecordEntry>& record, const std::string& topic) {
  std::vector<std::string> out;
  for (const RecordEntry& e : record) {
    if (e.topic == topic) out.push_back(e.payload);
  }
  return out;
}

}  // namespace tunnelmail::runner
