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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "random_map.hpp"

namespace tunnelmail::sim {
namespace {

using nlohmann::json;

json default_json() { return TrackMap::default_map().to_json(); }

TEST(TrackMapTest, DefaultMapShape) {
  const TrackMap m = TrackMap::default_map();
  EXPECT_EQ(m.nodes().size(), 5u);
  EXPECT_EQ(m.edges().size(), 4u);
  EXPECT_TRUE(m.is_dock("post5"));
  EXPECT_FALSE(m.is_dock("post3"));
  EXPECT_EQ(m.successors("post3"), (std::vector<std::string>{"post2", "post4", "post5"}));
  EXPECT_EQ(m.turn("post3", "post2", "post4"), TurnDir::kRight);
  EXPECT_EQ(m.departure("post3", "post2", TurnDir::kRight), "post4");
  EXPECT_EQ(m.departure("post3", "post2", TurnDir::kAhead), "post5");
  EXPECT_EQ(m.departure("post3", "post2", TurnDir::kLeft), std::nullopt);
  EXPECT_EQ(m.departure("post1", "post2", TurnDir::kAhead), "post2");
  EXPECT_EQ(m.length("post5", "post3"), 5.0);
  EXPECT_EQ(m.length("post1", "post3"), std::nullopt);
}

TEST(TrackMapTest, JsonRoundTrip) {
  const TrackMap m = TrackMap::default_map();
  const TrackMap again = TrackMap::from_json(m.to_json());
  EXPECT_EQ(again.to_json(), m.to_json());
}

TEST(TrackMapTest, LoadsFromFile) {
  const std::string path = ::testing::TempDir() + "map_test.json";
  {
    std::ofstream out(path);
    out << default_json().dump(2);
  }
  EXPECT_EQ(TrackMap::load(path).to_json(), default_json());
  std::remove(path.c_str());
  EXPECT_THROW(TrackMap::load(path), MapError);
}

TEST(TrackMapTest, TurnNames) {
  for (TurnDir d : {TurnDir::kAhead, TurnDir::kLeft, TurnDir::kRight, TurnDir::kBehind}) {
    EXPECT_EQ(parse_turn(turn_name(d)), d);
  }
  EXPECT_EQ(parse_turn("sideways"), std::nullopt);
}

void expect_rejected(const json& j, const std::string& fragment) {
  try {
    TrackMap::from_json(j);
    ADD_FAILURE() << "accepted map expected to fail with: " << fragment;
  } catch (const MapError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(TrackMapTest, RejectsMissingTurnLabel) {
  json j = default_json();
  auto& turns = j["turns"];
  turns.erase(std::remove_if(turns.begin(), turns.end(),
                             [](const json& t) { return t["at"] == "post3" && t["to"] == "post4" && t["from"] == "post2"; }),
              turns.end());
  expect_rejected(j, "missing turn label at post3 from post2 to post4");
}

TEST(TrackMapTest, RejectsDuplicateLabelForOneArrival) {
  json j = default_json();
  for (auto& t : j["turns"]) {
    if (t["at"] == "post3" && t["from"] == "post2" && t["to"] == "post4") t["dir"] = "ahead";
  }
  expect_rejected(j, "used twice at post3");
}

TEST(TrackMapTest, RejectsTurnLabelledTwice) {
  json j = default_json();
  j["turns"].push_back({{"at", "post1"}, {"from", "post2"}, {"to", "post2"}, {"dir", "behind"}});
  expect_rejected(j, "labelled twice");
}

TEST(TrackMapTest, RejectsStructuralErrors) {
  json j = default_json();
  j["nodes"].push_back({{"id", "island"}});
  expect_rejected(j, "not connected");

  j = default_json();
  j["edges"].push_back({{"a", "post1"}, {"b", "nowhere"}, {"length", 1.0}});
  expect_rejected(j, "unknown node");

  j = default_json();
  j["edges"].push_back({{"a", "post2"}, {"b", "post1"}, {"length", 1.0}});
  expect_rejected(j, "duplicate edge");

  j = default_json();
  j["edges"][0]["length"] = 0.0;
  expect_rejected(j, "positive length");

  j = default_json();
  j["nodes"][0]["id"] = "Post1";
  expect_rejected(j, "lowercase atom");

  j = default_json();
  j["nodes"].push_back({{"id", "post1"}});
  expect_rejected(j, "duplicate node");

  j = default_json();
  j["turns"][0]["dir"] = "sideways";
  expect_rejected(j, "unknown turn label");

  j = default_json();
  j["turns"].push_back({{"at", "post1"}, {"from", "post3"}, {"to", "post2"}, {"dir", "left"}});
  expect_rejected(j, "does not follow map edges");

  expect_rejected(json{{"nodes", json::array()}}, "malformed map json");
  expect_rejected(json{{"nodes", json::array()}, {"edges", json::array()}, {"turns", json::array()}}, "no nodes");
}

TEST(TrackMapTest, OneWayEdgesRestrictTraversal) {
  const TrackMap m({{"a", false}, {"b", false}}, {{"a", "b", 2.0, false}}, {});
  EXPECT_EQ(m.length("a", "b"), 2.0);
  EXPECT_EQ(m.length("b", "a"), std::nullopt);
  EXPECT_TRUE(m.successors("b").empty());
  EXPECT_EQ(m.predecessors("b"), std::vector<std::string>{"a"});
}

TEST(TrackMapPropertyTest, RandomMapsValidateAndRoundTrip) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const TrackMap m = testing::random_map(rng, 8);
    ASSERT_LE(m.nodes().size(), 8u);
    const TrackMap again = TrackMap::from_json(m.to_json());
    ASSERT_EQ(again.to_json(), m.to_json()) << "seed " << seed;
    // Every arrival at every node has exactly one labelled departure per exit.
    for (const MapNode& n : m.nodes()) {
      for (const std::string& from : m.predecessors(n.id)) {
        for (const std::string& to : m.successors(n.id)) {
          const auto d = m.turn(n.id, from, to);
          ASSERT_TRUE(d.has_value());
          ASSERT_EQ(m.departure(n.id, from, *d), to);
        }
      }
    }
  }
}

}  // namespace
}  // namespace tunnelmail::sim
