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

#ifndef TUNNELMAIL_ASL_TERM_HPP_
#define TUNNELMAIL_ASL_TERM_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tunnelmail::asl {

/// Identity of a logic variable. `scope` separates renamed-apart copies of the
/// same clause; two variables co-refer iff name and scope are equal.
struct VarKey {
  std::string name;
  std::uint32_t scope = 0;

  friend bool operator==(const VarKey&, const VarKey&) = default;
  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

/// Immutable first-order term: atom, variable, integer or structure.
///
/// Copies are cheap; structure arguments are shared. Anonymous variables
/// (`_` in source) are given unique internal names at parse time so two
/// occurrences never co-refer, but they still print as `_`.
class Term {
 public:
  enum class Kind : std::uint8_t { kAtom, kVariable, kInteger, kStructure };

  Term() = default;  // the atom `true`

  static Term atom(std::string name);
  static Term variable(std::string name, std::uint32_t scope = 0);
  static Term integer(std::int64_t value);
  static Term structure(std::string functor, std::vector<Term> args);
  /// Fresh anonymous variable; `serial` must be unique within its clause.
  static Term anonymous(std::uint32_t serial);

  Kind kind() const { return kind_; }
  bool is_atom() const { return kind_ == Kind::kAtom; }
  bool is_variable() const { return kind_ == Kind::kVariable; }
  bool is_integer() const { return kind_ == Kind::kInteger; }
  bool is_structure() const { return kind_ == Kind::kStructure; }
  /// Atoms and structures can stand as literals.
  bool is_callable() const { return is_atom() || is_structure(); }
  bool is_anonymous() const;

  /// Atom name, functor, or variable name.
  const std::string& name() const { return name_; }
  std::uint32_t scope() const { return scope_; }
  std::int64_t value() const { return value_; }
  std::size_t arity() const { return args_ ? args_->size() : 0; }
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }
  VarKey var_key() const { return VarKey{name_, scope_}; }

  bool is_ground() const;
  bool contains_variable(const VarKey& key) const;
  /// Named (non-anonymous) variables, in first-occurrence order.
  void collect_variables(std::vector<VarKey>& out, bool include_anonymous = false) const;

  /// Copy with every variable moved to `scope`.
  Term with_scope(std::uint32_t scope) const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  /// Standard order: variables < integers < atoms < structures.
  friend bool operator<(const Term& a, const Term& b);

 private:
  Kind kind_ = Kind::kAtom;
  std::uint32_t scope_ = 0;
  std::int64_t value_ = 0;
  std::string name_ = "true";
  std::shared_ptr<const std::vector<Term>> args_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

/// `[a-z][A-Za-z0-9_]*`
bool is_atom_name(std::string_view s);
/// `[A-Z_][A-Za-z0-9_]*`
bool is_variable_name(std::string_view s);

/// Functor/arity pair used to index beliefs, rules and percept keys.
struct Signature {
  std::string functor;
  std::size_t arity = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
  std::string to_string() const { return functor + "/" + std::to_string(arity); }
};

Signature signature_of(const Term& t);

}  // namespace tunnelmail::asl

#endif  // TUNNELMAIL_ASL_TERM_HPP_
