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

#ifndef TUNNELMAIL_ASL_PARSER_HPP_
#define TUNNELMAIL_ASL_PARSER_HPP_

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tunnelmail/asl/program.hpp"

namespace tunnelmail::asl {

enum class TokenKind {
  kAtom,      // lowercase identifier
  kVariable,  // uppercase or `_` identifier
  kInteger,
  kNot,       // keyword `not`
  kTrue,      // keyword `true`
  kLParen,
  kRParen,
  kComma,
  kDot,
  kIf,        // `:-`
  kColon,
  kArrow,     // `<-`
  kAmp,
  kSemicolon,
  kPlus,
  kMinus,
  kBang,
  kQuestion,
  kEquals,
  kEnd,
};

std::string_view token_kind_name(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  int column = 1;

  /// Kind and text only; positions are ignored.
  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.text == b.text;
  }
};

/// Lexical or syntax error with the 1-based source position of the offending
/// token and the token kinds that would have been accepted there.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message, std::set<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::set<std::string> expected_;
};

/// Splits source text into tokens, dropping whitespace and `//` / `/* */`
/// comments. The trailing kEnd token is not included. Throws ParseError.
std::vector<Token> tokenize(std::string_view text);

/// Parses a complete agent program. Throws ParseError.
Program parse_program(std::string_view text);

/// Parses a single ground literal such as `line(center)` (no trailing dot).
/// Used for percepts and action strings. Throws ParseError.
Term parse_literal(std::string_view text);

/// Parses one term that may contain variables (no trailing dot).
Term parse_term(std::string_view text);

/// Parses a context-style formula such as `not haveMail & batteryOK`.
Formula parse_formula(std::string_view text);

}  // namespace tunnelmail::asl

#endif  // TUNNELMAIL_ASL_PARSER_HPP_
