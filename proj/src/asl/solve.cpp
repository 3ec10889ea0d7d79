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

#include "tunnelmail/asl/solve.hpp"

#include <algorithm>
#include <utility>

namespace tunnelmail::asl {
namespace {

// Renamed-apart rule copies live in scopes at or above this value so they
// never collide with caller variables.
constexpr std::uint32_t kRenameScopeBase = 0x80000000u;

Conjunct rescoped(const Conjunct& c, std::uint32_t scope) {
  if (const auto* lit = std::get_if<Literal>(&c)) {
    return Literal{lit->negated, lit->term.with_scope(scope)};
  }
  const auto& eq = std::get<Equality>(c);
  return Equality{eq.lhs.with_scope(scope), eq.rhs.with_scope(scope)};
}

class Solver {
 public:
  Solver(const FactSource& facts, const RuleBase& rules, const SolveOptions& options)
      : facts_(facts), rules_(rules), options_(options) {}

  // Solves `goals[i..]` under `s`, calling `done` for each full solution.
  // Returns false once `done` asks to stop.
  bool run(const std::vector<Conjunct>& goals, std::size_t i, const Substitution& s, int depth,
           const SolutionVisitor& done) {
    if (i == goals.size()) return done(s);
    const Conjunct& g = goals[i];
    if (const auto* eq = std::get_if<Equality>(&g)) {
      const auto u = unify(eq->lhs, eq->rhs, s);
      return u ? run(goals, i + 1, *u, depth, done) : true;
    }
    const auto& lit = std::get<Literal>(g);
    if (lit.negated) {
      const Term t = s.apply(lit.term);
      std::vector<VarKey> named;
      t.collect_variables(named, false);
      if (!named.empty()) throw NonGroundNegation(t);
      bool found = false;
      prove(t, s, depth, [&](const Substitution&) {
        found = true;
        return false;
      });
      return found ? true : run(goals, i + 1, s, depth, done);
    }
    return prove(s.apply(lit.term), s, depth, [&](const Substitution& s2) {
      return run(goals, i + 1, s2, depth, done);
    });
  }

 private:
  bool prove(const Term& t, const Substitution& s, int depth, const SolutionVisitor& next) {
    if (t.is_atom() && t.name() == "true") return next(s);
    if (!t.is_callable()) return true;
    const Signature sig = signature_of(t);
    for (const Rule& rule : rules_.rules_for(sig)) {
      if (depth + 1 > options_.depth_limit) throw DepthLimitExceeded(options_.depth_limit);
      const std::uint32_t scope = next_scope_++;
      const auto u = unify(t, rule.head.with_scope(scope), s);
      if (!u) continue;
      std::vector<Conjunct> body;
      body.reserve(rule.body.conjuncts().size());
      for (const Conjunct& c : rule.body.conjuncts()) body.push_back(rescoped(c, scope));
      if (!run(body, 0, *u, depth + 1, next)) return false;
    }
    bool keep_going = true;
    facts_.for_each_fact(sig, [&](const Term& fact) {
      const auto u = unify(t, fact, s);
      if (u && !next(*u)) keep_going = false;
      return keep_going;
    });
    return keep_going;
  }

  const FactSource& facts_;
  const RuleBase& rules_;
  const SolveOptions& options_;
  std::uint32_t next_scope_ = kRenameScopeBase;
};

}  // namespace

NonGroundNegation::NonGroundNegation(const Term& literal)
    : std::runtime_error("negated literal '" + literal.to_string() +
                         "' is not ground when evaluated"),
      literal_(literal) {}

DepthLimitExceeded::DepthLimitExceeded(int limit)
    : std::runtime_error("rule expansion exceeded depth limit " + std::to_string(limit)) {}

FactList::FactList(std::vector<Term> facts) : facts_(std::move(facts)) {}

void FactList::add(Term fact) { facts_.push_back(std::move(fact)); }

void FactList::for_each_fact(const Signature& sig,
                             const std::function<bool(const Term&)>& visit) const {
  for (const Term& f : facts_) {
    if (f.name() == sig.functor && f.arity() == sig.arity && !visit(f)) return;
  }
}

RuleBase::RuleBase(const std::vector<Rule>& rules) {
  for (const Rule& r : rules) add(r);
}

void RuleBase::add(Rule rule) {
  const Signature sig = signature_of(rule.head);
  index_[sig].push_back(std::move(rule));
  ++count_;
}

const std::vector<Rule>& RuleBase::rules_for(const Signature& sig) const {
  static const std::vector<Rule> kNone;
  const auto it = index_.find(sig);
  return it == index_.end() ? kNone : it->second;
}

bool solve(const Formula& goal, const FactSource& facts, const RuleBase& rules,
           const SolutionVisitor& visit, const Substitution& initial,
           const SolveOptions& options) {
  Solver solver(facts, rules, options);
  return solver.run(goal.conjuncts(), 0, initial, 0, [&](const Substitution& s) {
    return visit(s.restricted([](const VarKey& k) {
      return k.scope < kRenameScopeBase && !Term::variable(k.name).is_anonymous();
    }));
  });
}

std::optional<Substitution> solve_first(const Formula& goal, const FactSource& facts,
                                        const RuleBase& rules, const Substitution& initial,
                                        const SolveOptions& options) {
  std::optional<Substitution> out;
  solve(
      goal, facts, rules,
      [&](const Substitution& s) {
        out = s;
        return false;
      },
      initial, options);
  return out;
}

std::vector<Substitution> solve_all(const Formula& goal, const FactSource& facts,
                                    const RuleBase& rules, const Substitution& initial,
                                    const SolveOptions& options) {
  std::vector<Substitution> out;
  solve(
      goal, facts, rules,
      [&](const Substitution& s) {
        out.push_back(s);
        return true;
      },
      initial, options);
  return out;
}

}  // namespace tunnelmail::asl
