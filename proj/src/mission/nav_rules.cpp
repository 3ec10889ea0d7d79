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

#include "tunnelmail/mission/nav_rules.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace tunnelmail::mission {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Distance from every node to `target`, over the map without the
/// undirected edge {cut_a, cut_b}.
std::map<std::string, double> distances_to(const sim::TrackMap& map, const std::string& target,
                                           const std::string& cut_a, const std::string& cut_b) {
  std::map<std::string, double> dist;
  for (const sim::MapNode& n : map.nodes()) dist[n.id] = kInf;
  using Item = std::pair<double, std::string>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[target] = 0.0;
  queue.push({0.0, target});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const std::string& u : map.predecessors(v)) {
      if ((u == cut_a && v == cut_b) || (u == cut_b && v == cut_a)) continue;
      const double nd = d + *map.length(u, v);
      if (nd < dist[u]) {
        dist[u] = nd;
        queue.push({nd, u});
      }
    }
  }
  return dist;
}

}  // namespace

std::string direction_rule_name(sim::TurnDir dir) {
  switch (dir) {
    case sim::TurnDir::kAhead: return "destinationAhead";
    case sim::TurnDir::kLeft: return "destinationLeft";
    case sim::TurnDir::kRight: return "destinationRight";
    case sim::TurnDir::kBehind: return "destinationBehind";
  }
  return "";
}

std::string NavRule::to_asl() const {
  return direction_rule_name(dir) +
         " :- destination(DESTINATION) & postPoint(CURRENT,PAST) & CURRENT = " + current +
         " & PAST = " + previous + " & DESTINATION = " + destination + ".";
}

std::string NavRuleSet::to_asl() const {
  std::string out = std::string(kAtDestinationRule) + "\n";
  for (const NavRule& r : rules) out += r.to_asl() + "\n";
  return out;
}

std::optional<sim::TurnDir> NavRuleSet::lookup(std::string_view current, std::string_view previous,
                                               std::string_view destination) const {
  for (const NavRule& r : rules) {
    if (r.current == current && r.previous == previous && r.destination == destination) return r.dir;
  }
  return std::nullopt;
}

NavRuleSet generate_nav_rules(const sim::TrackMap& map) {
  std::vector<std::string> ids;
  for (const sim::MapNode& n : map.nodes()) ids.push_back(n.id);
  std::sort(ids.begin(), ids.end());

  for (const std::string& d : ids) {
    const auto dist = distances_to(map, d, "", "");
    for (const std::string& v : ids) {
      if (dist.at(v) == kInf) throw GenerationError("destination " + d + " is unreachable from " + v);
    }
  }

  NavRuleSet set;
  for (const std::string& v : ids) {
    std::vector<std::string> arrivals = map.predecessors(v);
    arrivals.push_back(v);
    std::sort(arrivals.begin(), arrivals.end());
    for (const std::string& u : arrivals) {
      for (const std::string& d : ids) {
        if (d == v) continue;
        if (u == v) {
          set.rules.push_back({v, u, d, sim::TurnDir::kAhead});
          continue;
        }
        const auto dist = distances_to(map, d, v, u);
        std::optional<std::string> best;
        double best_cost = kInf;
        for (const std::string& w : map.successors(v)) {
          if (w == u) continue;
          const double cost = *map.length(v, w) + dist.at(w);
          if (cost < best_cost) {
            best_cost = cost;
            best = w;
          }
        }
        if (!best) {
          if (!map.length(v, u)) {
            throw GenerationError("destination " + d + " is unreachable from " + v + " arriving from " + u);
          }
          best = u;
        }
        const auto dir = map.turn(v, u, *best);
        if (!dir) throw GenerationError("no turn label at " + v + " from " + u + " to " + *best);
        set.rules.push_back({v, u, d, *dir});
      }
    }
  }
  return set;
}

}  // namespace tunnelmail::mission
