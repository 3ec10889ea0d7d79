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

#ifndef TUNNELMAIL_SIM_TRACK_MAP_HPP_
#define TUNNELMAIL_SIM_TRACK_MAP_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

namespace tunnelmail::sim {

enum class TurnDir { kAhead, kLeft, kRight, kBehind };

std::string_view turn_name(TurnDir d);
std::optional<TurnDir> parse_turn(std::string_view s);

class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MapNode {
  std::string id;
  bool is_dock = false;
};

struct MapEdge {
  std::string a;
  std::string b;
  double length = 0.0;
  bool bidirectional = true;
};

/// Post-point graph with a turn table labelling every (arrival, departure)
/// pair at every node.
class TrackMap {
 public:
  TrackMap() = default;
  /// Builds and validates; throws MapError.
  TrackMap(std::vector<MapNode> nodes, std::vector<MapEdge> edges,
           std::map<std::tuple<std::string, std::string, std::string>, TurnDir> turns);

  static TrackMap from_json(const nlohmann::json& j);
  static TrackMap load(const std::string& path);
  nlohmann::json to_json() const;

  /// post1-post2-post3-post5 mainline, post4 branching right of post3 when
  /// arriving from post2, dock at post5, 5 m edges.
  static TrackMap default_map();

  const std::vector<MapNode>& nodes() const { return nodes_; }
  const std::vector<MapEdge>& edges() const { return edges_; }
  const std::map<std::tuple<std::string, std::string, std::string>, TurnDir>& turns() const {
    return turns_;
  }

  bool has_node(std::string_view id) const;
  bool is_dock(std::string_view id) const;
  /// Nodes reachable from `id` along one traversable edge, sorted.
  std::vector<std::string> successors(std::string_view id) const;
  /// Nodes from which `id` is entered along one traversable edge, sorted.
  std::vector<std::string> predecessors(std::string_view id) const;
  /// Length of the directed traversal from -> to, if that edge exists.
  std::optional<double> length(std::string_view from, std::string_view to) const;
  std::optional<TurnDir> turn(std::string_view at, std::string_view from, std::string_view to) const;
  /// Departure node reached by taking `dir` at `at` after arriving from `from`.
  std::optional<std::string> departure(std::string_view at, std::string_view from, TurnDir dir) const;

 private:
  void validate() const;

  std::vector<MapNode> nodes_;
  std::vector<MapEdge> edges_;
  std::map<std::tuple<std::string, std::string, std::string>, TurnDir> turns_;
};

}  // namespace tunnelmail::sim

#endif  // TUNNELMAIL_SIM_TRACK_MAP_HPP_
