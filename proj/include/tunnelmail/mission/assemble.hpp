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

#ifndef TUNNELMAIL_MISSION_ASSEMBLE_HPP_
#define TUNNELMAIL_MISSION_ASSEMBLE_HPP_

#include <string>
#include <string_view>

#include "tunnelmail/mission/scenario.hpp"
#include "tunnelmail/sim/track_map.hpp"

namespace tunnelmail::mission {

/// The shipped plan library, byte-identical to docs/plan_library.asl.
std::string_view plan_library();

/// Scenario beliefs, generated navigation rules and the plan library, in
/// that order. In request mode the sender and receiver beliefs are left to
/// the request plan. Throws ScenarioError or GenerationError.
std::string assemble_program(const Scenario& scenario, const sim::TrackMap& map);

}  // namespace tunnelmail::mission

#endif  // TUNNELMAIL_MISSION_ASSEMBLE_HPP_
