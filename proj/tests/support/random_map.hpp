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

#ifndef TUNNELMAIL_TESTS_SUPPORT_RANDOM_MAP_HPP_
#define TUNNELMAIL_TESTS_SUPPORT_RANDOM_MAP_HPP_

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "tunnelmail/sim/track_map.hpp"

namespace tunnelmail::testing {

/// Random connected planar-ish track: a random spanning tree plus extra
/// edges, every node of degree at most four. Each neighbour occupies one of
/// four compass slots around a node and turn labels follow the slot
/// geometry; dead ends turn around with `ahead`. Node p0 is the dock.
inline sim::TrackMap random_map(std::mt19937_64& rng, int max_nodes) {
  using sim::TurnDir;
  const int n = std::uniform_int_distribution<int>(2, std::max(2, max_nodes))(rng);
  auto id = [](int i) { return "p" + std::to_string(i); };
  std::vector<std::vector<int>> adj(n);
  std::vector<sim::MapEdge> edges;
  std::uniform_int_distribution<int> half_metres(2, 20);
  auto connect = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    edges.push_back({id(a), id(b), half_metres(rng) * 0.5, true});
  };
  for (int v = 1; v < n; ++v) {
    std::vector<int> open;
    for (int u = 0; u < v; ++u) {
      if (adj[u].size() < 4) open.push_back(u);
    }
    connect(v, open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)]);
  }
  const int extra = std::uniform_int_distribution<int>(0, n)(rng);
  for (int k = 0; k < extra; ++k) {
    const int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (a == b || adj[a].size() >= 4 || adj[b].size() >= 4) continue;
    if (std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) continue;
    connect(a, b);
  }
  std::map<std::tuple<std::string, std::string, std::string>, TurnDir> turns;
  for (int v = 0; v < n; ++v) {
    if (adj[v].size() == 1) {
      turns[{id(v), id(adj[v][0]), id(adj[v][0])}] = TurnDir::kAhead;
      continue;
    }
    std::vector<int> slots = {0, 1, 2, 3};
    std::shuffle(slots.begin(), slots.end(), rng);
    for (std::size_t i = 0; i < adj[v].size(); ++i) {
      for (std::size_t j = 0; j < adj[v].size(); ++j) {
        static constexpr TurnDir kRelative[] = {TurnDir::kBehind, TurnDir::kLeft, TurnDir::kAhead, TurnDir::kRight};
        turns[{id(v), id(adj[v][i]), id(adj[v][j])}] = kRelative[(slots[j] - slots[i] + 4) % 4];
      }
    }
  }
  std::vector<sim::MapNode> nodes;
  for (int v = 0; v < n; ++v) nodes.push_back({id(v), v == 0});
  return sim::TrackMap(std::move(nodes), std::move(edges), std::move(turns));
}

}  // namespace tunnelmail::testing

#endif  // TUNNELMAIL_TESTS_SUPPORT_RANDOM_MAP_HPP_
