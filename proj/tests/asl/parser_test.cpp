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

#include "tunnelmail/asl/parser.hpp"

#include <gtest/gtest.h>

#include <random>

namespace tunnelmail::asl {
namespace {

constexpr const char* kMinimalProgram =
    "destination(post1).\n"
    "atDestination :- destination(DESTINATION) & postPoint(DESTINATION,_).\n"
    "+!goToLocation : atDestination <- drive(stop).\n";

ParseError parse_error_of(const std::string& text) {
  try {
    parse_program(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for: " << text;
  return ParseError(0, 0, "none");
}

TEST(TokenizeTest, SplitsOperatorsAndDropsComments) {
  const auto toks = tokenize("+!g : not a(X) & b = c <- x; ?y. // tail\n/* block */ r :- s.");
  std::vector<std::string> texts;
  for (const Token& t : toks) texts.push_back(t.text);
  const std::vector<std::string> expected = {"+", "!", "g", ":", "not", "a", "(", "X", ")", "&", "b",
                                             "=", "c", "<-", "x", ";", "?", "y", ".", "r", ":-", "s", "."};
  EXPECT_EQ(texts, expected);
  EXPECT_EQ(toks[4].kind, TokenKind::kNot);
  EXPECT_EQ(toks[13].kind, TokenKind::kArrow);
}

TEST(TokenizeTest, TracksPositions) {
  const auto toks = tokenize("a.\n  bc(D).");
  ASSERT_GE(toks.size(), 3u);
  EXPECT_EQ(toks[2].line, 2);
  EXPECT_EQ(toks[2].column, 3);
}

TEST(TokenizeTest, RejectsUnknownCharacter) {
  try {
    tokenize("a.\n b # c");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 4);
  }
  EXPECT_THROW(tokenize("/* open"), ParseError);
}

TEST(ParserTest, MinimalProgram) {
  const Program p = parse_program(kMinimalProgram);
  ASSERT_EQ(p.beliefs.size(), 1u);
  EXPECT_EQ(p.beliefs[0].to_string(), "destination(post1)");
  ASSERT_EQ(p.rules.size(), 1u);
  EXPECT_EQ(p.rules[0].head, Term::atom("atDestination"));
  ASSERT_EQ(p.plans.size(), 1u);
  EXPECT_EQ(p.plans[0].trigger.kind, TriggerKind::kAchieve);
  EXPECT_EQ(p.plans[0].trigger.literal, Term::atom("goToLocation"));
  EXPECT_EQ(p.to_string(), kMinimalProgram);
}

TEST(ParserTest, EmptyProgram) {
  const Program p = parse_program("");
  EXPECT_TRUE(p.beliefs.empty());
  EXPECT_TRUE(p.rules.empty());
  EXPECT_TRUE(p.plans.empty());
  EXPECT_TRUE(parse_program("// only a comment\n").order.empty());
}

TEST(ParserTest, EmptyContextIsPositionedError) {
  const ParseError e = parse_error_of("+!g : <- a.");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 7);
  EXPECT_TRUE(e.expected().count("atom"));
}

TEST(ParserTest, UppercaseFunctorRejected) {
  const ParseError e = parse_error_of(
      "DestinationRight :- destination(DESTINATION) & postPoint(CURRENT,PAST) &\n"
      "CURRENT = post3 & PAST = post2 & DESTINATION = post4.");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 1);
  EXPECT_THROW(parse_program("a :- Foo(x)."), ParseError);
}

TEST(ParserTest, NegatedHeadRejected) {
  const ParseError e = parse_error_of("b.\nnot a :- b.");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 1);
}

TEST(ParserTest, EmptyBodyRejected) {
  EXPECT_EQ(parse_error_of("+!g : c.").column(), 8);
  EXPECT_EQ(parse_error_of("+!g <- .").column(), 8);
  EXPECT_EQ(parse_error_of("+!g.").column(), 4);
}

TEST(ParserTest, MissingDotRejected) {
  const ParseError e = parse_error_of("a.\nb\n+!g <- x.");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 1);
  EXPECT_TRUE(e.expected().count("'.'"));
}

TEST(ParserTest, NonGroundBeliefAndUnsafeRuleRejected) {
  EXPECT_THROW(parse_program("destination(X)."), ParseError);
  EXPECT_THROW(parse_program("r(X) :- s."), ParseError);
  EXPECT_NO_THROW(parse_program("r(X) :- s(X)."));
  EXPECT_NO_THROW(parse_program("r(a) :- s."));
}

TEST(ParserTest, NotAppliesToOneLiteral) {
  EXPECT_THROW(parse_program("+!g : not (a & b) <- x."), ParseError);
  EXPECT_THROW(parse_program("+!g : not X = a <- x."), ParseError);
  const Program p = parse_program("+!g : ((not haveMail) & b) <- x.");
  const auto& cs = p.plans[0].context.conjuncts();
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_TRUE(std::get<Literal>(cs[0]).negated);
  EXPECT_EQ(p.plans[0].to_string(), "+!g : ((not haveMail) & b) <- x.");
}

TEST(ParserTest, TriggerAndStepKinds) {
  const Program p = parse_program(
      "+destination(D) : true <- +a(D); -b(_); !g; ?t(X); act(X).\n"
      "-destination(_) <- x.\n"
      "+?q <- y.\n"
      "-!q <- z.\n");
  ASSERT_EQ(p.plans.size(), 4u);
  EXPECT_EQ(p.plans[0].context_form, Plan::ContextForm::kTrueKeyword);
  EXPECT_EQ(p.plans[1].context_form, Plan::ContextForm::kAbsent);
  EXPECT_EQ(p.plans[1].trigger.op, TriggerOp::kDelete);
  EXPECT_EQ(p.plans[2].trigger.kind, TriggerKind::kTest);
  const auto& body = p.plans[0].body;
  ASSERT_EQ(body.size(), 5u);
  EXPECT_EQ(body[0].kind, BodyStep::Kind::kAddBelief);
  EXPECT_EQ(body[1].kind, BodyStep::Kind::kDelBelief);
  EXPECT_EQ(body[2].kind, BodyStep::Kind::kAchieve);
  EXPECT_EQ(body[3].kind, BodyStep::Kind::kTest);
  EXPECT_EQ(body[4].kind, BodyStep::Kind::kAction);
  EXPECT_EQ(p.plans[0].source_line, 1);
  EXPECT_EQ(p.plans[3].source_line, 4);
}

TEST(ParserTest, AnonymousOccurrencesAreFresh) {
  const Term t = parse_term("postPoint(_,_)");
  EXPECT_NE(t.arg(0), t.arg(1));
}

TEST(ParserTest, SingleLiteralEntryPoints) {
  EXPECT_EQ(parse_literal("line(center)").to_string(), "line(center)");
  EXPECT_THROW(parse_literal("line(X)"), ParseError);
  EXPECT_THROW(parse_literal("line(center)."), ParseError);
  EXPECT_THROW(parse_literal("X"), ParseError);
  EXPECT_EQ(parse_formula("not haveMail & batteryOK").conjuncts().size(), 2u);
}

// Random grammar-valid programs for the round-trip properties.
class ProgramGen {
 public:
  explicit ProgramGen(unsigned seed) : rng_(seed) {}

  std::string program() {
    std::string out;
    const int n = 1 + static_cast<int>(rng_() % 8);
    for (int i = 0; i < n; ++i) {
      switch (rng_() % 3) {
        case 0: out += atom() + "(" + ground_term(2) + ").\n"; break;
        case 1: {
          const std::string v = rng_() % 2 ? "X" : "Y";
          out += atom() + "(" + v + ") :- " + atom() + "(" + v + ")";
          if (rng_() % 2) out += " & " + formula_item();
          out += ".\n";
          break;
        }
        default: out += plan() + "\n"; break;
      }
    }
    return out;
  }

 private:
  std::string atom() { return std::vector<std::string>{"a", "post1", "line", "destination", "haveMail"}[rng_() % 5]; }
  std::string var() { return std::vector<std::string>{"X", "Y", "DIRECTION", "_"}[rng_() % 4]; }
  std::string ground_term(int depth) {
    if (depth == 0 || rng_() % 2) return rng_() % 5 ? atom() : std::to_string(rng_() % 100);
    std::string s = atom() + "(" + ground_term(depth - 1);
    if (rng_() % 2) s += "," + ground_term(depth - 1);
    return s + ")";
  }
  std::string term(int depth) {
    if (rng_() % 3 == 0) return var();
    if (depth == 0 || rng_() % 2) return atom();
    std::string s = atom() + "(" + term(depth - 1);
    if (rng_() % 2) s += "," + term(depth - 1);
    return s + ")";
  }
  std::string literal() {
    std::string s = atom();
    if (rng_() % 2) s += "(" + term(1) + ")";
    return s;
  }
  std::string formula_item() {
    switch (rng_() % 4) {
      case 0: return "not " + literal();
      case 1: return term(1) + " = " + term(1);
      case 2: return "(" + literal() + " & " + literal() + ")";
      default: return literal();
    }
  }
  std::string plan() {
    static const std::vector<std::string> kTrig = {"+!", "-!", "+?", "+", "-"};
    std::string s = kTrig[rng_() % kTrig.size()] + literal();
    switch (rng_() % 3) {
      case 0: break;
      case 1: s += " : true"; break;
      default: {
        s += " : " + formula_item();
        const int extra = static_cast<int>(rng_() % 3);
        for (int i = 0; i < extra; ++i) s += " & " + formula_item();
      }
    }
    s += " <- ";
    const int steps = 1 + static_cast<int>(rng_() % 4);
    static const std::vector<std::string> kStep = {"", "+", "-", "!", "?"};
    for (int i = 0; i < steps; ++i) {
      if (i) s += "; ";
      s += kStep[rng_() % kStep.size()] + literal();
    }
    return s + ".";
  }

  std::mt19937 rng_;
};

TEST(ParserProperty, PrintRoundTripIsTokenIdentical) {
  for (unsigned seed = 0; seed < 500; ++seed) {
    const std::string text = ProgramGen(seed).program();
    Program p;
    ASSERT_NO_THROW(p = parse_program(text)) << text;
    const std::string printed = p.to_string();
    EXPECT_EQ(tokenize(printed), tokenize(text)) << text;
    const Program again = parse_program(printed);
    EXPECT_EQ(again.to_string(), printed);
    EXPECT_TRUE(again == p) << text;
  }
}

}  // namespace
}  // namespace tunnelmail::asl
