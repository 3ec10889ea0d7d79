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

#ifndef TUNNELMAIL_MISSION_NAV_RULES_HPP_
#define TUNNELMAIL_MISSION_NAV_RULES_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelmail/sim/track_map.hpp"

namespace tunnelmail::mission {

inline constexpr const char* kAtDestinationRule =
    "atDestination :- destination(DESTINATION) & postPoint(DESTINATION,_).";

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "destinationAhead", "destinationLeft", ...
std::string direction_rule_name(sim::TurnDir dir);

/// At `current` having come from `previous`, heading for `destination`,
/// leave in direction `dir`.
struct NavRule {
  std::string current;
  std::string previous;
  std::string destination;
  sim::TurnDir dir = sim::TurnDir::kAhead;

  std::string to_asl() const;
  friend bool operator==(const NavRule&, const NavRule&) = default;
};

struct NavRuleSet {
  std::vector<NavRule> rules;

  /// The atDestination rule followed by one line per direction rule.
  std::string to_asl() const;
  std::optional<sim::TurnDir> lookup(std::string_view current, std::string_view previous,
                                     std::string_view destination) const;
};

/// One direction rule for every (current, previous, destination) with
/// destination != current. `previous` ranges over the arrival neighbours of
/// `current` plus `current` itself (first camera detection), which always
/// maps to ahead. Otherwise the rule follows the first edge of the shortest
/// path (by length, ties by node id) that avoids the edge just arrived on,
/// and reverses along it only when no such path exists. Throws
/// GenerationError when a destination cannot be reached at all.
NavRuleSet generate_nav_rules(const sim::TrackMap& map);

}  // namespace tunnelmail::mission

#endif  // TUNNELMAIL_MISSION_NAV_RULES_HPP_
