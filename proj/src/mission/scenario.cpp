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

#include "tunnelmail/mission/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <set>

namespace tunnelmail::mission {

std::string start_mode_name(StartMode mode) { return mode == StartMode::kRequest ? "request" : "beliefs"; }

void Scenario::validate(const sim::TrackMap& map) const {
  for (const auto& [role, id] : {std::pair{"sender", sender}, {"receiver", receiver}, {"dock", dock}}) {
    if (!map.has_node(id)) throw ScenarioError(std::string(role) + " '" + id + "' is not a map node");
  }
  if (std::set<std::string>{sender, receiver, dock}.size() != 3) {
    throw ScenarioError("sender, receiver and dock must be distinct nodes");
  }
  if (!map.is_dock(dock)) throw ScenarioError("'" + dock + "' is not marked as a dock in the map");
  const auto len = map.length(start.node, start.toward);
  if (!len) throw ScenarioError("no start edge from " + start.node + " to " + start.toward);
  if (start.offset < 0.0 || start.offset > *len) throw ScenarioError("start offset lies outside the start edge");
  if (battery_start < 0.0 || battery_start > 1.0) throw ScenarioError("battery start must lie in [0,1]");
  if (start_at < 0.0) throw ScenarioError("start_at must be non-negative");
  for (const ScriptedPercept& p : perceptions) {
    if (p.t < 0.0) throw ScenarioError("scripted perception at negative time");
  }
}

sim::TrackMap Scenario::load_map() const {
  if (map_path.empty()) return sim::TrackMap::default_map();
  return sim::TrackMap::load(map_path);
}

Scenario Scenario::from_json(const nlohmann::json& j, const std::string& base_dir) {
  try {
    Scenario s;
    s.name = j.value("name", s.name);
    if (j.contains("map")) {
      std::filesystem::path p = j.at("map").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      s.map_path = p.lexically_normal().string();
    }
    s.sender = j.at("sender").get<std::string>();
    s.receiver = j.at("receiver").get<std::string>();
    s.dock = j.at("dock").get<std::string>();
    const auto& start = j.at("start");
    s.start.node = start.at("node").get<std::string>();
    s.start.toward = start.at("toward").get<std::string>();
    s.start.offset = start.value("offset", s.start.offset);
    if (j.contains("battery")) {
      const auto& b = j.at("battery");
      s.battery_start = b.value("start", s.battery_start);
      s.battery.drain_moving = b.value("drain_moving", s.battery.drain_moving);
      s.battery.drain_idle = b.value("drain_idle", s.battery.drain_idle);
      s.battery.charge_rate = b.value("charge_rate", s.battery.charge_rate);
    }
    const std::string mode = j.value("start_mode", std::string("request"));
    if (mode == "request") {
      s.start_mode = StartMode::kRequest;
    } else if (mode == "beliefs") {
      s.start_mode = StartMode::kBeliefs;
    } else {
      throw ScenarioError("unknown start_mode '" + mode + "'");
    }
    s.start_at = j.value("start_at", s.start_at);
    for (const auto& p : j.value("perceptions", nlohmann::json::array())) {
      s.perceptions.push_back({p.at("t").get<double>(), p.at("payload").get<std::string>()});
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError(std::string("malformed scenario json: ") + e.what());
  }
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ScenarioError("scenario file '" + path + "': " + e.what());
  }
  return from_json(j, std::filesystem::path(path).parent_path().string());
}

nlohmann::json Scenario::to_json() const {
  nlohmann::json j = {
      {"name", name},
      {"sender", sender},
      {"receiver", receiver},
      {"dock", dock},
      {"start", {{"node", start.node}, {"toward", start.toward}, {"offset", start.offset}}},
      {"battery",
       {{"start", battery_start},
        {"drain_moving", battery.drain_moving},
        {"drain_idle", battery.drain_idle},
        {"charge_rate", battery.charge_rate}}},
      {"start_mode", start_mode_name(start_mode)},
      {"start_at", start_at},
      {"perceptions", nlohmann::json::array()},
  };
  if (!map_path.empty()) j["map"] = map_path;
  for (const ScriptedPercept& p : perceptions) j["perceptions"].push_back({{"t", p.t}, {"payload", p.payload}});
  return j;
}

Scenario Scenario::delivery() {
  Scenario s;
  s.name = "delivery";
  s.sender = "post1";
  s.receiver = "post4";
  s.dock = "post5";
  s.start = {"post5", "post3", 0.1};
  return s;
}

Scenario Scenario::battery_abort() {
  Scenario s = delivery();
  s.name = "battery_abort";
  s.battery_start = 0.27;
  s.battery.drain_moving = 0.00027;
  return s;
}

}  // namespace tunnelmail::mission
