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

#include "tunnelmail/asl/program.hpp"

#include <sstream>
#include <stdexcept>

namespace tunnelmail::asl {
namespace {

void flatten(const FormulaNode& n, std::vector<Conjunct>& out) {
  switch (n.kind) {
    case FormulaNode::Kind::kAtomic:
      out.emplace_back(Literal{false, n.term});
      return;
    case FormulaNode::Kind::kEquals:
      out.emplace_back(Equality{n.term, n.rhs});
      return;
    case FormulaNode::Kind::kParen:
      flatten(n.children.at(0), out);
      return;
    case FormulaNode::Kind::kAnd:
      for (const FormulaNode& c : n.children) flatten(c, out);
      return;
    case FormulaNode::Kind::kNot: {
      std::vector<Conjunct> inner;
      flatten(n.children.at(0), inner);
      if (inner.size() != 1 || !std::holds_alternative<Literal>(inner.front()) ||
          std::get<Literal>(inner.front()).negated) {
        throw std::invalid_argument("'not' applies to a single positive literal");
      }
      Literal lit = std::get<Literal>(inner.front());
      lit.negated = true;
      out.emplace_back(std::move(lit));
      return;
    }
  }
}

FormulaNode syntax_for(const Conjunct& c) {
  FormulaNode n;
  if (const auto* lit = std::get_if<Literal>(&c)) {
    FormulaNode atomic;
    atomic.kind = FormulaNode::Kind::kAtomic;
    atomic.term = lit->term;
    if (!lit->negated) return atomic;
    n.kind = FormulaNode::Kind::kNot;
    n.children.push_back(std::move(atomic));
    return n;
  }
  const auto& eq = std::get<Equality>(c);
  n.kind = FormulaNode::Kind::kEquals;
  n.term = eq.lhs;
  n.rhs = eq.rhs;
  return n;
}

void print(std::ostream& os, const FormulaNode& n) {
  switch (n.kind) {
    case FormulaNode::Kind::kAtomic: os << n.term; return;
    case FormulaNode::Kind::kEquals: os << n.term << " = " << n.rhs; return;
    case FormulaNode::Kind::kNot:
      os << "not ";
      print(os, n.children.at(0));
      return;
    case FormulaNode::Kind::kParen:
      os << '(';
      print(os, n.children.at(0));
      os << ')';
      return;
    case FormulaNode::Kind::kAnd:
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) os << " & ";
        print(os, n.children[i]);
      }
      return;
  }
}

void collect(const Conjunct& c, std::vector<VarKey>& out, bool anon) {
  if (const auto* lit = std::get_if<Literal>(&c)) {
    lit->term.collect_variables(out, anon);
  } else {
    const auto& eq = std::get<Equality>(c);
    eq.lhs.collect_variables(out, anon);
    eq.rhs.collect_variables(out, anon);
  }
}

}  // namespace

Formula::Formula(std::vector<Conjunct> conjuncts) : conjuncts_(std::move(conjuncts)) {
  if (conjuncts_.empty()) return;
  FormulaNode root;
  root.kind = FormulaNode::Kind::kAnd;
  for (const Conjunct& c : conjuncts_) root.children.push_back(syntax_for(c));
  if (root.children.size() == 1) {
    syntax_ = std::move(root.children.front());
  } else {
    syntax_ = std::move(root);
  }
}

Formula Formula::from_syntax(FormulaNode root) {
  Formula f;
  flatten(root, f.conjuncts_);
  f.syntax_ = std::move(root);
  return f;
}

void Formula::collect_variables(std::vector<VarKey>& out, bool include_anonymous) const {
  for (const Conjunct& c : conjuncts_) collect(c, out, include_anonymous);
}

Formula Formula::with_scope(std::uint32_t scope) const {
  std::vector<Conjunct> out;
  out.reserve(conjuncts_.size());
  for (const Conjunct& c : conjuncts_) {
    if (const auto* lit = std::get_if<Literal>(&c)) {
      out.emplace_back(Literal{lit->negated, lit->term.with_scope(scope)});
    } else {
      const auto& eq = std::get<Equality>(c);
      out.emplace_back(Equality{eq.lhs.with_scope(scope), eq.rhs.with_scope(scope)});
    }
  }
  return Formula(std::move(out));
}

std::string Formula::to_string() const {
  if (!syntax_) return "true";
  return asl::to_string(*syntax_);
}

std::string to_string(const FormulaNode& n) {
  std::ostringstream os;
  print(os, n);
  return os.str();
}

std::string to_string(const Conjunct& c) { return to_string(syntax_for(c)); }

std::string Rule::to_string() const {
  return head.to_string() + " :- " + body.to_string() + ".";
}

std::string Trigger::to_string() const {
  std::string s = op == TriggerOp::kAdd ? "+" : "-";
  if (kind == TriggerKind::kAchieve) s += "!";
  if (kind == TriggerKind::kTest) s += "?";
  return s + literal.to_string();
}

std::string BodyStep::to_string() const {
  switch (kind) {
    case Kind::kAction: return literal.to_string();
    case Kind::kAddBelief: return "+" + literal.to_string();
    case Kind::kDelBelief: return "-" + literal.to_string();
    case Kind::kAchieve: return "!" + literal.to_string();
    case Kind::kTest: return "?" + literal.to_string();
  }
  return {};
}

std::string Plan::to_string() const {
  std::string s = trigger.to_string();
  if (context_form == ContextForm::kTrueKeyword) s += " : true";
  if (context_form == ContextForm::kFormula) s += " : " + context.to_string();
  s += " <- ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) s += "; ";
    s += body[i].to_string();
  }
  return s + ".";
}

void Program::add_belief(Term t) {
  order.push_back({StatementKind::kBelief, beliefs.size()});
  beliefs.push_back(std::move(t));
}

void Program::add_rule(Rule r) {
  order.push_back({StatementKind::kRule, rules.size()});
  rules.push_back(std::move(r));
}

void Program::add_plan(Plan p) {
  order.push_back({StatementKind::kPlan, plans.size()});
  plans.push_back(std::move(p));
}

void Program::append(const Program& other) {
  for (const StatementRef& ref : other.order) {
    switch (ref.kind) {
      case StatementKind::kBelief: add_belief(other.beliefs[ref.index]); break;
      case StatementKind::kRule: add_rule(other.rules[ref.index]); break;
      case StatementKind::kPlan: add_plan(other.plans[ref.index]); break;
    }
  }
}

std::string Program::to_string() const {
  std::string out;
  for (const StatementRef& ref : order) {
    switch (ref.kind) {
      case StatementKind::kBelief: out += beliefs[ref.index].to_string() + "."; break;
      case StatementKind::kRule: out += rules[ref.index].to_string(); break;
      case StatementKind::kPlan: out += plans[ref.index].to_string(); break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace tunnelmail::asl
