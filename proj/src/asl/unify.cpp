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

#include "tunnelmail/asl/unify.hpp"

#include <utility>

namespace tunnelmail::asl {
namespace {

Term replace_var(const Term& t, const VarKey& var, const Term& value) {
  if (t.is_variable()) return t.var_key() == var ? value : t;
  if (!t.is_structure() || !t.contains_variable(var)) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(replace_var(a, var, value));
  return Term::structure(t.name(), std::move(args));
}

bool unify_into(const Term& a0, const Term& b0, Substitution& s) {
  const Term a = s.apply(a0);
  const Term b = s.apply(b0);
  if (a.is_variable()) {
    if (b.is_variable() && a.var_key() == b.var_key()) return true;
    return s.bind(a.var_key(), b);
  }
  if (b.is_variable()) return s.bind(b.var_key(), a);
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::kAtom: return a.name() == b.name();
    case Term::Kind::kInteger: return a.value() == b.value();
    case Term::Kind::kStructure:
      if (a.name() != b.name() || a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!unify_into(a.arg(i), b.arg(i), s)) return false;
      }
      return true;
    case Term::Kind::kVariable: break;
  }
  return false;
}

}  // namespace

bool Substitution::bind(const VarKey& var, const Term& value) {
  const Term v = apply(value);
  if (v.is_variable() && v.var_key() == var) return true;
  if (v.contains_variable(var)) return false;
  for (auto& [k, t] : bindings_) t = replace_var(t, var, v);
  bindings_.insert_or_assign(var, v);
  return true;
}

const Term* Substitution::lookup(const VarKey& var) const {
  const auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  switch (t.kind()) {
    case Term::Kind::kVariable: {
      const Term* bound = lookup(t.var_key());
      return bound ? *bound : t;
    }
    case Term::Kind::kStructure: {
      if (t.is_ground()) return t;
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(apply(a));
      return Term::structure(t.name(), std::move(args));
    }
    default: return t;
  }
}

Literal Substitution::apply(const Literal& l) const { return Literal{l.negated, apply(l.term)}; }

Conjunct Substitution::apply(const Conjunct& c) const {
  if (const auto* lit = std::get_if<Literal>(&c)) return apply(*lit);
  const auto& eq = std::get<Equality>(c);
  return Equality{apply(eq.lhs), apply(eq.rhs)};
}

std::string Substitution::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : bindings_) {
    if (!first) out += ", ";
    first = false;
    out += k.name;
    if (k.scope != 0) out += "@" + std::to_string(k.scope);
    out += "=" + v.to_string();
  }
  return out + "}";
}

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s) {
  Substitution out = s;
  if (!unify_into(a, b, out)) return std::nullopt;
  return out;
}

}  // namespace tunnelmail::asl
