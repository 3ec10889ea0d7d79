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

#include <gtest/gtest.h>

namespace tunnelmail::asl {
namespace {

TEST(TermTest, AtomAndStructurePrint) {
  EXPECT_EQ(Term::atom("post1").to_string(), "post1");
  EXPECT_EQ(Term::structure("postPoint", {Term::atom("post1"), Term::atom("post2")}).to_string(),
            "postPoint(post1,post2)");
  EXPECT_EQ(Term::integer(42).to_string(), "42");
}

TEST(TermTest, StructureNeedsArguments) {
  EXPECT_THROW(Term::structure("f", {}), std::invalid_argument);
}

TEST(TermTest, AnonymousVariablesAreDistinctButPrintAsUnderscore) {
  const Term a = Term::anonymous(1);
  const Term b = Term::anonymous(2);
  EXPECT_TRUE(a.is_anonymous());
  EXPECT_NE(a, b);
  EXPECT_EQ(a.to_string(), "_");
}

TEST(TermTest, GroundnessAndVariableCollection) {
  const Term t = Term::structure("f", {Term::variable("X"), Term::anonymous(1), Term::variable("X")});
  EXPECT_FALSE(t.is_ground());
  std::vector<VarKey> named;
  t.collect_variables(named);
  ASSERT_EQ(named.size(), 1u);
  EXPECT_EQ(named[0].name, "X");
  std::vector<VarKey> all;
  t.collect_variables(all, true);
  EXPECT_EQ(all.size(), 2u);
}

TEST(TermTest, WithScopeMovesEveryVariable) {
  const Term t = Term::structure("f", {Term::variable("X"), Term::atom("a")});
  const Term moved = t.with_scope(7);
  EXPECT_TRUE(moved.contains_variable(VarKey{"X", 7}));
  EXPECT_FALSE(moved.contains_variable(VarKey{"X", 0}));
}

TEST(TermTest, NamePredicates) {
  EXPECT_TRUE(is_atom_name("postPoint"));
  EXPECT_FALSE(is_atom_name("DestinationRight"));
  EXPECT_TRUE(is_variable_name("DESTINATION"));
  EXPECT_TRUE(is_variable_name("_"));
  EXPECT_FALSE(is_variable_name("post1"));
}

TEST(TermTest, StandardOrder) {
  EXPECT_LT(Term::variable("X"), Term::integer(1));
  EXPECT_LT(Term::integer(1), Term::atom("a"));
  EXPECT_LT(Term::atom("z"), Term::structure("a", {Term::atom("a")}));
  EXPECT_EQ(signature_of(Term::structure("line", {Term::atom("left")})).to_string(), "line/1");
}

}  // namespace
}  // namespace tunnelmail::asl
