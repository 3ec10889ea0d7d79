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

#include "tunnelmail/sim/track_map.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "tunnelmail/asl/term.hpp"

namespace tunnelmail::sim {

std::string_view turn_name(TurnDir d) {
  switch (d) {
    case TurnDir::kAhead: return "ahead";
    case TurnDir::kLeft: return "left";
    case TurnDir::kRight: return "right";
    case TurnDir::kBehind: return "behind";
  }
  return "?";
}

std::optional<TurnDir> parse_turn(std::string_view s) {
  if (s == "ahead") return TurnDir::kAhead;
  if (s == "left") return TurnDir::kLeft;
  if (s == "right") return TurnDir::kRight;
  if (s == "behind") return TurnDir::kBehind;
  return std::nullopt;
}

TrackMap::TrackMap(std::vector<MapNode> nodes, std::vector<MapEdge> edges,
                   std::map<std::tuple<std::string, std::string, std::string>, TurnDir> turns)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), turns_(std::move(turns)) {
  validate();
}

void TrackMap::validate() const {
  if (nodes_.empty()) throw MapError("map has no nodes");
  std::set<std::string> ids;
  for (const MapNode& n : nodes_) {
    if (!asl::is_atom_name(n.id)) throw MapError("node id '" + n.id + "' is not a lowercase atom");
    if (!ids.insert(n.id).second) throw MapError("duplicate node '" + n.id + "'");
  }
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const MapEdge& e : edges_) {
    if (!ids.count(e.a) || !ids.count(e.b)) throw MapError("edge " + e.a + "-" + e.b + " names an unknown node");
    if (e.a == e.b) throw MapError("self-loop edge at '" + e.a + "'");
    if (!(e.length > 0.0)) throw MapError("edge " + e.a + "-" + e.b + " needs a positive length");
    const auto key = std::minmax(e.a, e.b);
    if (!seen_edges.insert({key.first, key.second}).second) {
      throw MapError("duplicate edge " + e.a + "-" + e.b);
    }
  }
  // Connectivity over the undirected skeleton.
  std::set<std::string> reached = {nodes_.front().id};
  std::vector<std::string> frontier = {nodes_.front().id};
  while (!frontier.empty()) {
    const std::string v = frontier.back();
    frontier.pop_back();
    for (const MapEdge& e : edges_) {
      for (const auto& [x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        if (x == v && reached.insert(y).second) frontier.push_back(y);
      }
    }
  }
  if (reached.size() != ids.size()) throw MapError("map is not connected");

  for (const auto& [key, dir] : turns_) {
    const auto& [at, from, to] = key;
    if (!length(from, at) || !length(at, to)) {
      throw MapError("turn at " + at + " from " + from + " to " + to + " does not follow map edges");
    }
  }
  for (const MapNode& n : nodes_) {
    for (const std::string& from : predecessors(n.id)) {
      std::set<TurnDir> used;
      for (const std::string& to : successors(n.id)) {
        const auto d = turn(n.id, from, to);
        if (!d) throw MapError("missing turn label at " + n.id + " from " + from + " to " + to);
        if (!used.insert(*d).second) {
          throw MapError("turn label '" + std::string(turn_name(*d)) + "' used twice at " + n.id +
                         " arriving from " + from);
        }
      }
    }
  }
}

TrackMap TrackMap::from_json(const nlohmann::json& j) {
  try {
    std::vector<MapNode> nodes;
    for (const auto& n : j.at("nodes")) nodes.push_back({n.at("id").get<std::string>(), n.value("is_dock", false)});
    std::vector<MapEdge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(), e.at("length").get<double>(),
                       e.value("bidirectional", true)});
    }
    std::map<std::tuple<std::string, std::string, std::string>, TurnDir> turns;
    for (const auto& t : j.at("turns")) {
      const std::string dir_text = t.at("dir").get<std::string>();
      const auto dir = parse_turn(dir_text);
      if (!dir) throw MapError("unknown turn label '" + dir_text + "'");
      const auto key = std::make_tuple(t.at("at").get<std::string>(), t.at("from").get<std::string>(),
                                       t.at("to").get<std::string>());
      if (!turns.emplace(key, *dir).second) {
        throw MapError("turn at " + std::get<0>(key) + " from " + std::get<1>(key) + " to " + std::get<2>(key) +
                       " labelled twice");
      }
    }
    return TrackMap(std::move(nodes), std::move(edges), std::move(turns));
  } catch (const nlohmann::json::exception& e) {
    throw MapError(std::string("malformed map json: ") + e.what());
  }
}

TrackMap TrackMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MapError("cannot open map file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw MapError("map file '" + path + "': " + e.what());
  }
  return from_json(j);
}

nlohmann::json TrackMap::to_json() const {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const MapNode& n : nodes_) j["nodes"].push_back({{"id", n.id}, {"is_dock", n.is_dock}});
  j["edges"] = nlohmann::json::array();
  for (const MapEdge& e : edges_) {
    j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"length", e.length}, {"bidirectional", e.bidirectional}});
  }
  j["turns"] = nlohmann::json::array();
  for (const auto& [key, dir] : turns_) {
    j["turns"].push_back({{"at", std::get<0>(key)}, {"from", std::get<1>(key)}, {"to", std::get<2>(key)},
                          {"dir", std::string(turn_name(dir))}});
  }
  return j;
}

TrackMap TrackMap::default_map() {
  std::vector<MapNode> nodes = {{"post1", false}, {"post2", false}, {"post3", false}, {"post4", false}, {"post5", true}};
  std::vector<MapEdge> edges = {{"post1", "post2", 5.0, true},
                                {"post2", "post3", 5.0, true},
                                {"post3", "post5", 5.0, true},
                                {"post3", "post4", 5.0, true}};
  using D = TurnDir;
  std::map<std::tuple<std::string, std::string, std::string>, TurnDir> t = {
      {{"post1", "post2", "post2"}, D::kAhead},
      {{"post2", "post1", "post3"}, D::kAhead},
      {{"post2", "post1", "post1"}, D::kBehind},
      {{"post2", "post3", "post1"}, D::kAhead},
      {{"post2", "post3", "post3"}, D::kBehind},
      {{"post3", "post2", "post5"}, D::kAhead},
      {{"post3", "post2", "post4"}, D::kRight},
      {{"post3", "post2", "post2"}, D::kBehind},
      {{"post3", "post5", "post2"}, D::kAhead},
      {{"post3", "post5", "post4"}, D::kLeft},
      {{"post3", "post5", "post5"}, D::kBehind},
      {{"post3", "post4", "post2"}, D::kLeft},
      {{"post3", "post4", "post5"}, D::kRight},
      {{"post3", "post4", "post4"}, D::kBehind},
      {{"post4", "post3", "post3"}, D::kAhead},
      {{"post5", "post3", "post3"}, D::kAhead},
  };
  return TrackMap(std::move(nodes), std::move(edges), std::move(t));
}

bool TrackMap::has_node(std::string_view id) const {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const MapNode& n) { return n.id == id; });
}

bool TrackMap::is_dock(std::string_view id) const {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const MapNode& n) { return n.id == id && n.is_dock; });
}

std::vector<std::string> TrackMap::successors(std::string_view id) const {
  std::vector<std::string> out;
  for (const MapEdge& e : edges_) {
    if (e.a == id) out.push_back(e.b);
    if (e.bidirectional && e.b == id) out.push_back(e.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> TrackMap::predecessors(std::string_view id) const {
  std::vector<std::string> out;
  for (const MapEdge& e : edges_) {
    if (e.b == id) out.push_back(e.a);
    if (e.bidirectional && e.a == id) out.push_back(e.b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> TrackMap::length(std::string_view from, std::string_view to) const {
  for (const MapEdge& e : edges_) {
    if (e.a == from && e.b == to) return e.length;
    if (e.bidirectional && e.b == from && e.a == to) return e.length;
  }
  return std::nullopt;
}

std::optional<TurnDir> TrackMap::turn(std::string_view at, std::string_view from, std::string_view to) const {
  const auto it = turns_.find({std::string(at), std::string(from), std::string(to)});
  if (it == turns_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> TrackMap::departure(std::string_view at, std::string_view from, TurnDir dir) const {
  for (const std::string& to : successors(at)) {
    if (turn(at, from, to) == dir) return to;
  }
  return std::nullopt;
}

}  // namespace tunnelmail::sim
