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

#ifndef TUNNELMAIL_TRANSLATE_TRANSLATORS_HPP_
#define TUNNELMAIL_TRANSLATE_TRANSLATORS_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelmail/asl/term.hpp"
#include "tunnelmail/bus/broker.hpp"
#include "tunnelmail/sim/world.hpp"

namespace tunnelmail::translate {

inline constexpr const char* kPerceptionsTopic = "perceptions";
inline constexpr const char* kActionsTopic = "actions";

struct TranslatorConfig {
  double forward_speed = 0.3;
  /// Ratios at or below this read as batteryLow.
  double low_battery_threshold = 0.25;
};

/// "batteryOK" above the threshold, "batteryLow" at or below it. Throws
/// std::out_of_range outside [0,1].
std::string translate_battery(double ratio, double threshold = 0.25);

std::string translate_line(const sim::LineReading& reading);

/// "C,P" -> "postPoint(C,P)"; nullopt unless both fields are atoms.
std::optional<std::string> translate_qr(std::string_view raw);

/// Decodes an "L,C,R" bit triple.
std::optional<sim::LineReading> parse_line_payload(std::string_view payload);

/// Decodes a decimal charge ratio.
std::optional<double> parse_ratio(std::string_view payload);

struct ActuatorCommand {
  std::string topic;
  std::string payload;
  friend bool operator==(const ActuatorCommand&, const ActuatorCommand&) = default;
};

/// Maps one action string to actuator commands. Unknown or unparsable
/// actions yield no commands.
std::vector<ActuatorCommand> translate_action(std::string_view action, const TranslatorConfig& config = {});

/// True for the six actions the robot hardware understands.
bool is_robot_action(const asl::Term& action);

/// Raw sensor topics in, `perceptions` out. Messages drained in one pump
/// are forwarded in timestamp order.
class PerceptionTranslator {
 public:
  PerceptionTranslator(bus::Broker& broker, TranslatorConfig config = {});
  ~PerceptionTranslator();
  PerceptionTranslator(const PerceptionTranslator&) = delete;
  PerceptionTranslator& operator=(const PerceptionTranslator&) = delete;

  /// Returns the number of perceptions published.
  std::size_t pump();

 private:
  bus::Broker& broker_;
  TranslatorConfig config_;
  std::vector<std::shared_ptr<bus::Subscription>> subs_;
};

/// `actions` in, `cmd/*` out.
class ActionTranslator {
 public:
  ActionTranslator(bus::Broker& broker, TranslatorConfig config = {});
  ~ActionTranslator();
  ActionTranslator(const ActionTranslator&) = delete;
  ActionTranslator& operator=(const ActionTranslator&) = delete;

  /// Returns the number of actuator commands published.
  std::size_t pump();

 private:
  bus::Broker& broker_;
  TranslatorConfig config_;
  std::shared_ptr<bus::Subscription> sub_;
};

}  // namespace tunnelmail::translate

#endif  // TUNNELMAIL_TRANSLATE_TRANSLATORS_HPP_
