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

#ifndef TUNNELMAIL_ASL_UNIFY_HPP_
#define TUNNELMAIL_ASL_UNIFY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tunnelmail/asl/program.hpp"
#include "tunnelmail/asl/term.hpp"

namespace tunnelmail::asl {

/// Idempotent variable bindings. Every stored value is already fully
/// dereferenced, so apply() is a single pass and applying twice equals
/// applying once.
class Substitution {
 public:
  Substitution() = default;

  /// Binds `var` to `value` after applying the current bindings to `value`.
  /// Returns false (leaving *this unchanged) if the occurs check fails.
  bool bind(const VarKey& var, const Term& value);

  const Term* lookup(const VarKey& var) const;
  Term apply(const Term& t) const;
  Literal apply(const Literal& l) const;
  Conjunct apply(const Conjunct& c) const;

  /// Keeps only the bindings whose key satisfies `keep`.
  template <typename Pred>
  Substitution restricted(Pred keep) const {
    Substitution out;
    for (const auto& [k, v] : bindings_) {
      if (keep(k)) out.bindings_.emplace(k, v);
    }
    return out;
  }

  const std::map<VarKey, Term>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  /// `{A=x, B=f(y)}` with keys in VarKey order; a non-zero scope prints as `A@3`.
  std::string to_string() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<VarKey, Term> bindings_;
};

/// Most general unifier of `a` and `b` extending `s`, or nullopt.
std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s = {});

}  // namespace tunnelmail::asl

#endif  // TUNNELMAIL_ASL_UNIFY_HPP_
