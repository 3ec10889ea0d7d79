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

#ifndef TUNNELMAIL_TESTS_SUPPORT_RANDOM_ASL_HPP_
#define TUNNELMAIL_TESTS_SUPPORT_RANDOM_ASL_HPP_

#include <random>
#include <set>
#include <string>
#include <vector>

#include "tunnelmail/asl/parser.hpp"

namespace tunnelmail::testing {

/// Navigation rules in the lowercase form shipped with the mission program.
inline const char* right_turn_rules() {
  return "atDestination :- destination(DESTINATION) & postPoint(DESTINATION,_).\n"
         "destinationRight :- destination(DESTINATION) & postPoint(CURRENT,PAST) &\n"
         "CURRENT = post3 & PAST = post2 & DESTINATION = post4.\n";
}

/// The six constants random belief bases draw from.
inline std::vector<asl::Term> oracle_constants() {
  std::vector<asl::Term> out;
  for (const char* c : {"post1", "post2", "post3", "post4", "post5", "dock"}) {
    out.push_back(asl::Term::atom(c));
  }
  return out;
}

/// Up to `max_literals` distinct ground literals over the mission vocabulary.
inline std::vector<asl::Term> random_beliefs(std::mt19937& rng, std::size_t max_literals) {
  const auto consts = oracle_constants();
  auto c = [&] { return consts[rng() % consts.size()]; };
  std::set<asl::Term> seen;
  std::vector<asl::Term> out;
  const std::size_t n = rng() % (max_literals + 1);
  for (std::size_t i = 0; out.size() < n && i < 4 * max_literals; ++i) {
    asl::Term t;
    switch (rng() % 6) {
      case 0: t = asl::Term::structure("destination", {c()}); break;
      case 1:
      case 2: t = asl::Term::structure("postPoint", {c(), c()}); break;
      case 3: t = asl::Term::structure("dockStation", {c()}); break;
      case 4: t = asl::Term::atom("haveMail"); break;
      default: t = asl::Term::atom(rng() % 2 ? "batteryOK" : "batteryLow"); break;
    }
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

/// Random range-restricted conjunction: every `not` conjunct and every
/// equality right-hand variable is bound by an earlier positive literal.
inline std::string random_goal(std::mt19937& rng, const std::vector<std::string>& derived) {
  const auto consts = oracle_constants();
  const std::vector<std::string> pool = {"A", "B", "C"};
  std::set<std::string> bound;
  auto arg = [&](bool allow_new) -> std::string {
    const int r = static_cast<int>(rng() % 4);
    if (r == 0) return consts[rng() % consts.size()].name();
    if (r == 1 && allow_new) return "_";
    const std::string v = pool[rng() % pool.size()];
    if (!allow_new && !bound.count(v)) return consts[rng() % consts.size()].name();
    return v;
  };
  auto positive = [&](bool allow_new) -> std::string {
    switch (rng() % 5) {
      case 0: return "destination(" + arg(allow_new) + ")";
      case 1: return "postPoint(" + arg(allow_new) + "," + arg(allow_new) + ")";
      case 2: return "dockStation(" + arg(allow_new) + ")";
      case 3: return rng() % 2 ? "haveMail" : "batteryOK";
      default: return derived.empty() ? "batteryLow" : derived[rng() % derived.size()];
    }
  };
  auto note_vars = [&](const std::string& s) {
    for (const std::string& v : pool) {
      if (s.find("(" + v + ")") != std::string::npos || s.find("(" + v + ",") != std::string::npos ||
          s.find("," + v + ")") != std::string::npos) {
        bound.insert(v);
      }
    }
  };
  std::string out;
  const int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    std::string item;
    const int kind = i == 0 ? 0 : static_cast<int>(rng() % 4);
    if (kind == 2) {
      item = "not " + positive(false);
    } else if (kind == 3) {
      const std::string v = pool[rng() % pool.size()];
      item = v + " = " + arg(false);
      bound.insert(v);
    } else {
      item = positive(true);
      note_vars(item);
    }
    out += (i ? " & " : "") + item;
  }
  return out;
}

}  // namespace tunnelmail::testing

#endif  // TUNNELMAIL_TESTS_SUPPORT_RANDOM_ASL_HPP_
