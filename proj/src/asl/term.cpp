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

#include "tunnelmail/asl/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tunnelmail::asl {
namespace {

// Internal anonymous names carry a '#', which the lexer never produces.
constexpr std::string_view kAnonPrefix = "_#";

const std::vector<Term>& empty_args() {
  static const std::vector<Term> kEmpty;
  return kEmpty;
}

int kind_rank(Term::Kind k) {
  switch (k) {
    case Term::Kind::kVariable: return 0;
    case Term::Kind::kInteger: return 1;
    case Term::Kind::kAtom: return 2;
    case Term::Kind::kStructure: return 3;
  }
  return 4;
}

}  // namespace

bool is_atom_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_variable_name(std::string_view s) {
  if (s.empty()) return false;
  const char c0 = s.front();
  if (!(std::isupper(static_cast<unsigned char>(c0)) || c0 == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Term Term::atom(std::string name) {
  Term t;
  t.kind_ = Kind::kAtom;
  t.name_ = std::move(name);
  return t;
}

Term Term::variable(std::string name, std::uint32_t scope) {
  Term t;
  t.kind_ = Kind::kVariable;
  t.name_ = std::move(name);
  t.scope_ = scope;
  return t;
}

Term Term::integer(std::int64_t value) {
  Term t;
  t.kind_ = Kind::kInteger;
  t.name_.clear();
  t.value_ = value;
  return t;
}

Term Term::structure(std::string functor, std::vector<Term> args) {
  if (args.empty()) {
    throw std::invalid_argument("structure '" + functor + "' needs arity >= 1");
  }
  Term t;
  t.kind_ = Kind::kStructure;
  t.name_ = std::move(functor);
  t.args_ = std::make_shared<const std::vector<Term>>(std::move(args));
  return t;
}

Term Term::anonymous(std::uint32_t serial) {
  return variable(std::string(kAnonPrefix) + std::to_string(serial));
}

bool Term::is_anonymous() const {
  return kind_ == Kind::kVariable && name_.starts_with(kAnonPrefix);
}

const std::vector<Term>& Term::args() const { return args_ ? *args_ : empty_args(); }

bool Term::is_ground() const {
  switch (kind_) {
    case Kind::kVariable: return false;
    case Kind::kStructure:
      return std::all_of(args_->begin(), args_->end(),
                         [](const Term& a) { return a.is_ground(); });
    default: return true;
  }
}

bool Term::contains_variable(const VarKey& key) const {
  switch (kind_) {
    case Kind::kVariable: return name_ == key.name && scope_ == key.scope;
    case Kind::kStructure:
      return std::any_of(args_->begin(), args_->end(),
                         [&](const Term& a) { return a.contains_variable(key); });
    default: return false;
  }
}

void Term::collect_variables(std::vector<VarKey>& out, bool include_anonymous) const {
  if (kind_ == Kind::kVariable) {
    if (!include_anonymous && is_anonymous()) return;
    VarKey k = var_key();
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(std::move(k));
  } else if (kind_ == Kind::kStructure) {
    for (const Term& a : *args_) a.collect_variables(out, include_anonymous);
  }
}

Term Term::with_scope(std::uint32_t scope) const {
  switch (kind_) {
    case Kind::kVariable: return variable(name_, scope);
    case Kind::kStructure: {
      std::vector<Term> args;
      args.reserve(args_->size());
      for (const Term& a : *args_) args.push_back(a.with_scope(scope));
      return structure(name_, std::move(args));
    }
    default: return *this;
  }
}

std::string Term::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Term::Kind::kInteger: return a.value_ == b.value_;
    case Term::Kind::kAtom: return a.name_ == b.name_;
    case Term::Kind::kVariable: return a.name_ == b.name_ && a.scope_ == b.scope_;
    case Term::Kind::kStructure:
      if (a.args_ == b.args_) return a.name_ == b.name_;
      return a.name_ == b.name_ && *a.args_ == *b.args_;
  }
  return false;
}

bool operator<(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return kind_rank(a.kind_) < kind_rank(b.kind_);
  switch (a.kind_) {
    case Term::Kind::kInteger: return a.value_ < b.value_;
    case Term::Kind::kAtom: return a.name_ < b.name_;
    case Term::Kind::kVariable:
      return std::tie(a.name_, a.scope_) < std::tie(b.name_, b.scope_);
    case Term::Kind::kStructure:
      if (a.arity() != b.arity()) return a.arity() < b.arity();
      if (a.name_ != b.name_) return a.name_ < b.name_;
      return std::lexicographical_compare(a.args_->begin(), a.args_->end(),
                                          b.args_->begin(), b.args_->end());
  }
  return false;
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kInteger: return os << t.value();
    case Term::Kind::kAtom: return os << t.name();
    case Term::Kind::kVariable: return os << (t.is_anonymous() ? std::string("_") : t.name());
    case Term::Kind::kStructure: {
      os << t.name() << '(';
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (i) os << ',';
        os << t.arg(i);
      }
      return os << ')';
    }
  }
  return os;
}

Signature signature_of(const Term& t) { return Signature{t.name(), t.arity()}; }

}  // namespace tunnelmail::asl
