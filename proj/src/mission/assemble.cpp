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

#include "tunnelmail/mission/assemble.hpp"

#include "tunnelmail/mission/nav_rules.hpp"

namespace tunnelmail::mission {

namespace detail {
extern const char* const kPlanLibraryText;
}  // namespace detail

std::string_view plan_library() { return detail::kPlanLibraryText; }

std::string assemble_program(const Scenario& scenario, const sim::TrackMap& map) {
  scenario.validate(map);
  const NavRuleSet rules = generate_nav_rules(map);
  std::string out = "// Scenario " + scenario.name + "\n";
  if (scenario.start_mode == StartMode::kBeliefs) {
    out += "senderLocation(" + scenario.sender + ").\n";
    out += "receiverLocation(" + scenario.receiver + ").\n";
  }
  out += "dockStation(" + scenario.dock + ").\n\n";
  out += "// Navigation rules for this map\n";
  out += rules.to_asl();
  out += "\n";
  out += plan_library();
  return out;
}

}  // namespace tunnelmail::mission
