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

#ifndef TUNNELMAIL_TESTS_SUPPORT_NAV_ORACLE_HPP_
#define TUNNELMAIL_TESTS_SUPPORT_NAV_ORACLE_HPP_

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tunnelmail/asl/parser.hpp"
#include "tunnelmail/asl/solve.hpp"
#include "tunnelmail/mission/nav_rules.hpp"
#include "tunnelmail/sim/track_map.hpp"

namespace tunnelmail::testing {

/// Breadth-first hop count from `from` to `to`, ignoring turn labels.
inline std::optional<int> hop_distance(const sim::TrackMap& map, const std::string& from, const std::string& to) {
  std::map<std::string, int> seen = {{from, 0}};
  std::deque<std::string> queue = {from};
  while (!queue.empty()) {
    const std::string v = queue.front();
    queue.pop_front();
    if (v == to) return seen[v];
    for (const std::string& w : map.successors(v)) {
      if (seen.emplace(w, seen[v] + 1).second) queue.push_back(w);
    }
  }
  return std::nullopt;
}

/// Evaluates navigation rules through the solver for one robot situation.
class RuleNavigator {
 public:
  explicit RuleNavigator(const std::vector<asl::Rule>& rules) : rules_(rules) {}

  /// Every direction atom (and atDestination) that holds at (current,
  /// previous) heading for `destination`.
  std::vector<std::string> holding(const std::string& current, const std::string& previous,
                                   const std::string& destination) const {
    asl::FactList facts;
    facts.add(asl::parse_literal("destination(" + destination + ")"));
    facts.add(asl::parse_literal("postPoint(" + current + "," + previous + ")"));
    std::vector<std::string> out;
    for (const char* name : {"atDestination", "destinationAhead", "destinationLeft", "destinationRight",
                             "destinationBehind"}) {
      if (asl::solve_first(asl::parse_formula(name), facts, rules_)) out.push_back(name);
    }
    return out;
  }

  struct Outcome {
    bool reached = false;
    int decisions = 0;
    std::string failure;
  };

  /// Drives greedily from (current, previous) by the rule that holds at each
  /// node, up to `max_decisions` departures.
  Outcome drive(const sim::TrackMap& map, std::string current, std::string previous,
                const std::string& destination, int max_decisions) const {
    Outcome o;
    for (;;) {
      const auto h = holding(current, previous, destination);
      if (h.size() != 1) {
        o.failure = std::to_string(h.size()) + " rules hold at " + current + " from " + previous;
        return o;
      }
      if (h[0] == "atDestination") {
        o.reached = true;
        return o;
      }
      if (o.decisions == max_decisions) {
        o.failure = "decision budget exhausted";
        return o;
      }
      static const std::map<std::string, sim::TurnDir> kDir = {{"destinationAhead", sim::TurnDir::kAhead},
                                                               {"destinationLeft", sim::TurnDir::kLeft},
                                                               {"destinationRight", sim::TurnDir::kRight},
                                                               {"destinationBehind", sim::TurnDir::kBehind}};
      const auto next = map.departure(current, previous, kDir.at(h[0]));
      if (!next) {
        o.failure = h[0] + " names no departure at " + current;
        return o;
      }
      ++o.decisions;
      previous = current;
      current = *next;
    }
  }

 private:
  asl::RuleBase rules_;
};

}  // namespace tunnelmail::testing

#endif  // TUNNELMAIL_TESTS_SUPPORT_NAV_ORACLE_HPP_
