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

#ifndef TUNNELMAIL_ENGINE_BELIEF_BASE_HPP_
#define TUNNELMAIL_ENGINE_BELIEF_BASE_HPP_

#include <map>
#include <string>
#include <vector>

#include "tunnelmail/asl/program.hpp"
#include "tunnelmail/asl/solve.hpp"

namespace tunnelmail::engine {

/// One belief addition or deletion produced by a belief-base update.
struct BeliefChange {
  asl::TriggerOp op = asl::TriggerOp::kAdd;
  asl::Term literal;

  std::string to_string() const;
  friend bool operator==(const BeliefChange&, const BeliefChange&) = default;
};

/// Percept beliefs hold the latest value per revision key; mental beliefs are
/// the initial beliefs plus plan-body additions, kept in insertion order.
class BeliefBase : public asl::FactSource {
 public:
  /// Revision key of a percept: `battery` for batteryOK/batteryLow so that one
  /// retracts the other, otherwise `functor/arity`.
  static std::string percept_key(const asl::Term& literal);

  /// Replaces the stored value under each percept's key. Returns the changes
  /// in order: deletion of the old value before addition of the new one;
  /// an identical re-observation yields nothing. Throws std::invalid_argument
  /// on a non-ground or non-callable percept (earlier percepts stay applied).
  std::vector<BeliefChange> revise(const std::vector<asl::Term>& percepts);

  /// Adds a ground mental belief. Returns false if it was already present.
  bool add_mental(const asl::Term& literal);

  /// Removes every mental belief unifying with `pattern`, returning them.
  std::vector<asl::Term> remove_mental(const asl::Term& pattern);

  bool contains(const asl::Term& literal) const;
  const std::map<std::string, asl::Term>& percepts() const { return percepts_; }
  const std::vector<asl::Term>& mental() const { return mental_; }
  /// Percepts in key order followed by mental beliefs.
  std::vector<asl::Term> all() const;

  void for_each_fact(const asl::Signature& sig,
                     const std::function<bool(const asl::Term&)>& visit) const override;

 private:
  std::map<std::string, asl::Term> percepts_;
  std::vector<asl::Term> mental_;
};

}  // namespace tunnelmail::engine

#endif  // TUNNELMAIL_ENGINE_BELIEF_BASE_HPP_
