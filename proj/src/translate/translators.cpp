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

#include "tunnelmail/translate/translators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "tunnelmail/asl/parser.hpp"
#include "tunnelmail/common/log.hpp"
#include "tunnelmail/sim/io.hpp"

namespace tunnelmail::translate {
namespace {

std::string format_speed(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return "v=" + std::string(buf, ptr);
}

}  // namespace

std::string translate_battery(double ratio, double threshold) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::out_of_range("battery ratio outside [0,1]");
  return ratio > threshold ? "batteryOK" : "batteryLow";
}

std::string translate_line(const sim::LineReading& r) {
  if (r.left && r.right) return "line(across)";
  if (r.left) return "line(left)";
  if (r.right) return "line(right)";
  if (r.center) return "line(center)";
  return "line(lost)";
}

std::optional<std::string> translate_qr(std::string_view raw) {
  const auto comma = raw.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  const std::string_view current = raw.substr(0, comma);
  const std::string_view previous = raw.substr(comma + 1);
  if (!asl::is_atom_name(current) || !asl::is_atom_name(previous)) return std::nullopt;
  return "postPoint(" + std::string(current) + "," + std::string(previous) + ")";
}

std::optional<sim::LineReading> parse_line_payload(std::string_view p) {
  if (p.size() != 5 || p[1] != ',' || p[3] != ',') return std::nullopt;
  auto bit = [](char c) -> std::optional<bool> {
    if (c == '0') return false;
    if (c == '1') return true;
    return std::nullopt;
  };
  const auto l = bit(p[0]);
  const auto c = bit(p[2]);
  const auto r = bit(p[4]);
  if (!l || !c || !r) return std::nullopt;
  return sim::LineReading{*l, *c, *r};
}

std::optional<double> parse_ratio(std::string_view payload) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(payload.data(), payload.data() + payload.size(), v);
  if (payload.empty() || ec != std::errc() || ptr != payload.data() + payload.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

bool is_robot_action(const asl::Term& a) {
  if (a.is_atom()) return a.name() == "dock_bot" || a.name() == "undock_bot";
  if (!a.is_structure() || a.arity() != 1 || !a.arg(0).is_atom()) return false;
  const std::string& d = a.arg(0).name();
  if (a.name() == "drive") return d == "forward" || d == "stop" || d == "left" || d == "right";
  if (a.name() == "turn") return d == "left" || d == "right" || d == "behind";
  return false;
}

std::vector<ActuatorCommand> translate_action(std::string_view action, const TranslatorConfig& config) {
  asl::Term term;
  try {
    term = asl::parse_literal(action);
  } catch (const asl::ParseError& e) {
    get_logger("translate")->warn("unparsable action '{}': {}", action, e.what());
    return {};
  }
  if (!is_robot_action(term)) {
    get_logger("translate")->warn("unknown action '{}'", action);
    return {};
  }
  if (term.is_atom()) {
    return {{term.name() == "dock_bot" ? "cmd/dock" : "cmd/undock", ""}};
  }
  const std::string& d = term.arg(0).name();
  if (term.name() == "turn") return {{"cmd/turn", d}, {"cmd/velocity", format_speed(config.forward_speed)}};
  if (d == "forward") return {{"cmd/velocity", format_speed(config.forward_speed)}};
  if (d == "stop") return {{"cmd/halt", ""}};
  return {{"cmd/steer", d}};
}

PerceptionTranslator::PerceptionTranslator(bus::Broker& broker, TranslatorConfig config)
    : broker_(broker), config_(config) {
  for (const char* topic : {sim::kBatteryTopic, sim::kLineTopic, sim::kQrTopic}) {
    subs_.push_back(broker_.subscribe(topic));
  }
}

PerceptionTranslator::~PerceptionTranslator() {
  for (const auto& s : subs_) broker_.unsubscribe(s);
}

std::size_t PerceptionTranslator::pump() {
  std::vector<bus::BusMessage> pending;
  for (const auto& s : subs_) {
    for (bus::BusMessage& m : s->drain()) pending.push_back(std::move(m));
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [](const bus::BusMessage& a, const bus::BusMessage& b) { return a.ts < b.ts; });
  std::size_t published = 0;
  for (const bus::BusMessage& m : pending) {
    std::optional<std::string> percept;
    if (m.topic == sim::kLineTopic) {
      if (const auto reading = parse_line_payload(m.payload)) percept = translate_line(*reading);
    } else if (m.topic == sim::kQrTopic) {
      percept = translate_qr(m.payload);
    } else if (const auto ratio = parse_ratio(m.payload); ratio && *ratio >= 0.0 && *ratio <= 1.0) {
      percept = translate_battery(*ratio, config_.low_battery_threshold);
    }
    if (!percept) {
      get_logger("translate")->warn("dropping malformed {} payload '{}'", m.topic, m.payload);
      continue;
    }
    broker_.publish(kPerceptionsTopic, *percept);
    ++published;
  }
  return published;
}

ActionTranslator::ActionTranslator(bus::Broker& broker, TranslatorConfig config)
    : broker_(broker), config_(config), sub_(broker.subscribe(kActionsTopic)) {}

ActionTranslator::~ActionTranslator() { broker_.unsubscribe(sub_); }

std::size_t ActionTranslator::pump() {
  std::size_t published = 0;
  for (const bus::BusMessage& m : sub_->drain()) {
    for (const ActuatorCommand& c : translate_action(m.payload, config_)) {
      broker_.publish(c.topic, c.payload);
      ++published;
    }
  }
  return published;
}

}  // namespace tunnelmail::translate
