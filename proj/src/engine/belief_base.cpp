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

#include "tunnelmail/engine/belief_base.hpp"

#include <algorithm>
#include <stdexcept>

#include "tunnelmail/asl/unify.hpp"

namespace tunnelmail::engine {

std::string BeliefChange::to_string() const {
  return (op == asl::TriggerOp::kAdd ? "+" : "-") + literal.to_string();
}

std::string BeliefBase::percept_key(const asl::Term& literal) {
  if (literal.is_atom() && (literal.name() == "batteryOK" || literal.name() == "batteryLow")) {
    return "battery";
  }
  return asl::signature_of(literal).to_string();
}

std::vector<BeliefChange> BeliefBase::revise(const std::vector<asl::Term>& percepts) {
  std::vector<BeliefChange> changes;
  for (const asl::Term& p : percepts) {
    if (!p.is_callable() || !p.is_ground()) {
      throw std::invalid_argument("percept '" + p.to_string() + "' is not a ground literal");
    }
    const std::string key = percept_key(p);
    auto it = percepts_.find(key);
    if (it != percepts_.end()) {
      if (it->second == p) continue;
      changes.push_back({asl::TriggerOp::kDelete, it->second});
      it->second = p;
    } else {
      percepts_.emplace(key, p);
    }
    changes.push_back({asl::TriggerOp::kAdd, p});
  }
  return changes;
}

bool BeliefBase::add_mental(const asl::Term& literal) {
  if (!literal.is_callable() || !literal.is_ground()) {
    throw std::invalid_argument("belief '" + literal.to_string() + "' is not a ground literal");
  }
  if (std::find(mental_.begin(), mental_.end(), literal) != mental_.end()) return false;
  mental_.push_back(literal);
  return true;
}

std::vector<asl::Term> BeliefBase::remove_mental(const asl::Term& pattern) {
  std::vector<asl::Term> removed;
  auto keep = std::remove_if(mental_.begin(), mental_.end(), [&](const asl::Term& b) {
    if (!asl::unify(pattern, b)) return false;
    removed.push_back(b);
    return true;
  });
  mental_.erase(keep, mental_.end());
  return removed;
}

bool BeliefBase::contains(const asl::Term& literal) const {
  for (const auto& [k, v] : percepts_) {
    if (v == literal) return true;
  }
  return std::find(mental_.begin(), mental_.end(), literal) != mental_.end();
}

std::vector<asl::Term> BeliefBase::all() const {
  std::vector<asl::Term> out;
  for (const auto& [k, v] : percepts_) out.push_back(v);
  out.insert(out.end(), mental_.begin(), mental_.end());
  return out;
}

void BeliefBase::for_each_fact(const asl::Signature& sig,
                               const std::function<bool(const asl::Term&)>& visit) const {
  auto matches = [&](const asl::Term& t) { return t.name() == sig.functor && t.arity() == sig.arity; };
  for (const auto& [k, v] : percepts_) {
    if (matches(v) && !visit(v)) return;
  }
  for (const asl::Term& t : mental_) {
    if (matches(t) && !visit(t)) return;
  }
}

}  // namespace tunnelmail::engine
