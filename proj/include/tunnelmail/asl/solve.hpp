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

#ifndef TUNNELMAIL_ASL_SOLVE_HPP_
#define TUNNELMAIL_ASL_SOLVE_HPP_

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tunnelmail/asl/program.hpp"
#include "tunnelmail/asl/unify.hpp"

namespace tunnelmail::asl {

/// Raised when a `not` conjunct still holds a named unbound variable at the
/// point it is evaluated.
class NonGroundNegation : public std::runtime_error {
 public:
  explicit NonGroundNegation(const Term& literal);
  const Term& literal() const { return literal_; }

 private:
  Term literal_;
};

/// Raised when rule expansion nests deeper than SolveOptions::depth_limit.
class DepthLimitExceeded : public std::runtime_error {
 public:
  explicit DepthLimitExceeded(int limit);
};

/// Read-only view of ground facts, enumerated in a stable order.
class FactSource {
 public:
  virtual ~FactSource() = default;
  /// Calls `visit` for each fact with the given signature until it returns false.
  virtual void for_each_fact(const Signature& sig,
                             const std::function<bool(const Term&)>& visit) const = 0;
};

/// Plain list of facts in insertion order.
class FactList : public FactSource {
 public:
  FactList() = default;
  explicit FactList(std::vector<Term> facts);

  void add(Term fact);
  const std::vector<Term>& facts() const { return facts_; }

  void for_each_fact(const Signature& sig,
                     const std::function<bool(const Term&)>& visit) const override;

 private:
  std::vector<Term> facts_;
};

/// Rules indexed by head signature, program order preserved within a key.
class RuleBase {
 public:
  RuleBase() = default;
  explicit RuleBase(const std::vector<Rule>& rules);

  void add(Rule rule);
  const std::vector<Rule>& rules_for(const Signature& sig) const;
  std::size_t size() const { return count_; }

 private:
  std::map<Signature, std::vector<Rule>> index_;
  std::size_t count_ = 0;
};

struct SolveOptions {
  int depth_limit = 256;
};

/// Receives each solution; return false to stop the enumeration.
using SolutionVisitor = std::function<bool(const Substitution&)>;

/// Depth-first SLD resolution of `goal` left to right. For each literal, rules
/// are tried in program order before facts. Solutions are projected onto the
/// named variables of `goal` and `initial`. Returns false if the visitor stopped early.
bool solve(const Formula& goal, const FactSource& facts, const RuleBase& rules,
           const SolutionVisitor& visit, const Substitution& initial = {},
           const SolveOptions& options = {});

std::optional<Substitution> solve_first(const Formula& goal, const FactSource& facts,
                                        const RuleBase& rules, const Substitution& initial = {},
                                        const SolveOptions& options = {});

std::vector<Substitution> solve_all(const Formula& goal, const FactSource& facts,
                                    const RuleBase& rules, const Substitution& initial = {},
                                    const SolveOptions& options = {});

}  // namespace tunnelmail::asl

#endif  // TUNNELMAIL_ASL_SOLVE_HPP_
