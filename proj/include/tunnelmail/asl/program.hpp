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

#ifndef TUNNELMAIL_ASL_PROGRAM_HPP_
#define TUNNELMAIL_ASL_PROGRAM_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tunnelmail/asl/term.hpp"

namespace tunnelmail::asl {

/// A positive or negation-as-failure literal over an atom or structure.
struct Literal {
  bool negated = false;
  Term term;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// `lhs = rhs`, solved by unification.
struct Equality {
  Term lhs;
  Term rhs;

  friend bool operator==(const Equality&, const Equality&) = default;
};

using Conjunct = std::variant<Literal, Equality>;

/// Syntax tree of a context or rule body. Kept alongside the flat conjunct
/// list so printing reproduces the source tokens, parentheses included.
struct FormulaNode {
  enum class Kind { kAtomic, kNot, kEquals, kParen, kAnd };

  Kind kind = Kind::kAtomic;
  Term term;  // kAtomic: the literal; kEquals: lhs
  Term rhs;   // kEquals only
  std::vector<FormulaNode> children;  // kNot/kParen: one child; kAnd: two or more

  friend bool operator==(const FormulaNode&, const FormulaNode&) = default;
};

/// Left-to-right conjunction of literals and equalities. Empty means `true`.
class Formula {
 public:
  Formula() = default;
  /// Builds the plain `a & b & c` syntax for the given conjuncts.
  explicit Formula(std::vector<Conjunct> conjuncts);
  /// Flattens a syntax tree; throws std::invalid_argument if `not` is applied
  /// to anything but a single literal.
  static Formula from_syntax(FormulaNode root);

  const std::vector<Conjunct>& conjuncts() const { return conjuncts_; }
  const std::optional<FormulaNode>& syntax() const { return syntax_; }
  bool empty() const { return conjuncts_.empty(); }

  void collect_variables(std::vector<VarKey>& out, bool include_anonymous = false) const;
  /// Copy with every variable moved to `scope`; the syntax tree is rebuilt plain.
  Formula with_scope(std::uint32_t scope) const;
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.conjuncts_ == b.conjuncts_;
  }

 private:
  std::vector<Conjunct> conjuncts_;
  std::optional<FormulaNode> syntax_;
};

struct Rule {
  Term head;
  Formula body;

  std::string to_string() const;
  friend bool operator==(const Rule&, const Rule&) = default;
};

enum class TriggerOp { kAdd, kDelete };
enum class TriggerKind { kBelief, kAchieve, kTest };

struct Trigger {
  TriggerOp op = TriggerOp::kAdd;
  TriggerKind kind = TriggerKind::kBelief;
  Term literal;

  std::string to_string() const;
  friend bool operator==(const Trigger&, const Trigger&) = default;
};

struct BodyStep {
  enum class Kind { kAction, kAddBelief, kDelBelief, kAchieve, kTest };

  Kind kind = Kind::kAction;
  Term literal;

  std::string to_string() const;
  friend bool operator==(const BodyStep&, const BodyStep&) = default;
};

struct Plan {
  enum class ContextForm { kAbsent, kTrueKeyword, kFormula };

  Trigger trigger;
  ContextForm context_form = ContextForm::kAbsent;
  Formula context;
  std::vector<BodyStep> body;
  int source_line = 0;

  std::string to_string() const;
  friend bool operator==(const Plan& a, const Plan& b) {
    return a.trigger == b.trigger && a.context_form == b.context_form &&
           a.context == b.context && a.body == b.body;
  }
};

/// Parsed agent program. Plan order is source order.
struct Program {
  enum class StatementKind { kBelief, kRule, kPlan };
  struct StatementRef {
    StatementKind kind;
    std::size_t index;
    friend bool operator==(const StatementRef&, const StatementRef&) = default;
  };

  std::vector<Term> beliefs;
  std::vector<Rule> rules;
  std::vector<Plan> plans;
  /// Interleaving of the three lists as written, for faithful printing.
  std::vector<StatementRef> order;

  void add_belief(Term t);
  void add_rule(Rule r);
  void add_plan(Plan p);
  /// Appends all statements of `other`, keeping its internal order.
  void append(const Program& other);

  /// One statement per line, in source order.
  std::string to_string() const;

  friend bool operator==(const Program& a, const Program& b) {
    return a.beliefs == b.beliefs && a.rules == b.rules && a.plans == b.plans;
  }
};

std::string to_string(const Conjunct& c);
std::string to_string(const FormulaNode& n);

}  // namespace tunnelmail::asl

#endif  // TUNNELMAIL_ASL_PROGRAM_HPP_
