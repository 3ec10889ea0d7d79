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

#include <algorithm>
#include <cctype>
#include <charconv>

namespace tunnelmail::asl {
namespace {

std::string format_error(int line, int column, const std::string& message,
                         const std::set<std::string>& expected) {
  std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  if (!expected.empty()) {
    s += " (expected ";
    bool first = true;
    for (const std::string& e : expected) {
      if (!first) s += ", ";
      s += e;
      first = false;
    }
    s += ")";
  }
  return s;
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    return out;
  }

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const int l = line_, col = column_;
        advance();
        advance();
        while (pos_ < text_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= text_.size()) throw ParseError(l, col, "unterminated block comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token next() {
    Token t;
    t.line = line_;
    t.column = column_;
    const char c = peek();
    auto single = [&](TokenKind k) {
      t.kind = k;
      t.text = std::string(1, c);
      advance();
      return t;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(peek())) advance();
      t.text = std::string(text_.substr(start, pos_ - start));
      if (t.text == "not") {
        t.kind = TokenKind::kNot;
      } else if (t.text == "true") {
        t.kind = TokenKind::kTrue;
      } else if (std::islower(static_cast<unsigned char>(c))) {
        t.kind = TokenKind::kAtom;
      } else {
        t.kind = TokenKind::kVariable;
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
      t.kind = TokenKind::kInteger;
      t.text = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    switch (c) {
      case '(': return single(TokenKind::kLParen);
      case ')': return single(TokenKind::kRParen);
      case ',': return single(TokenKind::kComma);
      case '.': return single(TokenKind::kDot);
      case '&': return single(TokenKind::kAmp);
      case ';': return single(TokenKind::kSemicolon);
      case '+': return single(TokenKind::kPlus);
      case '-': return single(TokenKind::kMinus);
      case '!': return single(TokenKind::kBang);
      case '?': return single(TokenKind::kQuestion);
      case '=': return single(TokenKind::kEquals);
      case ':':
        if (peek(1) == '-') {
          advance();
          advance();
          t.kind = TokenKind::kIf;
          t.text = ":-";
          return t;
        }
        return single(TokenKind::kColon);
      case '<':
        if (peek(1) == '-') {
          advance();
          advance();
          t.kind = TokenKind::kArrow;
          t.text = "<-";
          return t;
        }
        break;
      default: break;
    }
    std::string shown = static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f
                            ? "byte 0x" + [&] {
                                const char* hex = "0123456789abcdef";
                                const auto u = static_cast<unsigned char>(c);
                                return std::string{hex[u >> 4], hex[u & 0xf]};
                              }()
                            : std::string("'") + c + "'";
    throw ParseError(t.line, t.column, "unexpected character " + shown);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string quoted(TokenKind k) {
  switch (k) {
    case TokenKind::kAtom: return "atom";
    case TokenKind::kVariable: return "variable";
    case TokenKind::kInteger: return "integer";
    case TokenKind::kEnd: return "end of input";
    default: return "'" + std::string(token_kind_name(k)) + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    Lexer lexer(text);
    tokens_ = lexer.run();
    Token end;
    end.kind = TokenKind::kEnd;
    end.line = lexer.line();
    end.column = lexer.column();
    tokens_.push_back(end);
  }

  Program program() {
    Program p;
    while (!at(TokenKind::kEnd)) statement(p);
    return p;
  }

  Term single_term(bool require_ground) {
    anon_serial_ = 0;
    const Token& start = cur();
    Term t = term();
    expect_end();
    if (!t.is_callable()) {
      throw ParseError(start.line, start.column, "expected a literal", {"atom"});
    }
    if (require_ground && !t.is_ground()) {
      throw ParseError(start.line, start.column, "literal must be ground");
    }
    return t;
  }

  Term any_term() {
    anon_serial_ = 0;
    Term t = term();
    expect_end();
    return t;
  }

  Formula single_formula() {
    anon_serial_ = 0;
    Formula f = formula();
    expect_end();
    return f;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  bool at(TokenKind k) const { return cur().kind == k; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& message, std::set<TokenKind> expected = {}) const {
    std::set<std::string> names;
    for (TokenKind k : expected) names.insert(quoted(k));
    const Token& t = cur();
    std::string found = t.kind == TokenKind::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, message + ", found " + found, std::move(names));
  }

  const Token& expect(TokenKind k, const std::string& what) {
    if (!at(k)) fail("expected " + what, {k});
    return take();
  }

  void expect_end() {
    if (!at(TokenKind::kEnd)) fail("unexpected trailing input", {TokenKind::kEnd});
  }

  void statement(Program& p) {
    anon_serial_ = 0;
    switch (cur().kind) {
      case TokenKind::kPlus:
      case TokenKind::kMinus:
        p.add_plan(plan());
        return;
      case TokenKind::kAtom: {
        const Token& head_tok = cur();
        Term head = term();
        if (at(TokenKind::kIf)) {
          take();
          p.add_rule(rule_rest(std::move(head), head_tok));
          return;
        }
        if (at(TokenKind::kDot)) {
          take();
          if (!head.is_ground()) {
            throw ParseError(head_tok.line, head_tok.column, "initial belief must be ground");
          }
          p.add_belief(std::move(head));
          return;
        }
        fail("expected ':-' or '.' after '" + head.to_string() + "'",
             {TokenKind::kIf, TokenKind::kDot});
      }
      case TokenKind::kVariable:
        fail("functor '" + cur().text + "' must start with a lowercase letter",
             {TokenKind::kAtom, TokenKind::kPlus, TokenKind::kMinus});
      case TokenKind::kNot:
        fail("rule head cannot be negated", {TokenKind::kAtom});
      default:
        fail("expected a belief, rule or plan",
             {TokenKind::kAtom, TokenKind::kPlus, TokenKind::kMinus});
    }
  }

  Rule rule_rest(Term head, const Token& head_tok) {
    if (at(TokenKind::kDot)) fail("rule body is empty", {TokenKind::kAtom, TokenKind::kNot, TokenKind::kLParen});
    Formula body = formula();
    expect(TokenKind::kDot, "'.' to end the rule");
    std::vector<VarKey> head_vars, body_vars;
    head.collect_variables(head_vars, true);
    body.collect_variables(body_vars, true);
    for (const VarKey& v : head_vars) {
      if (std::find(body_vars.begin(), body_vars.end(), v) == body_vars.end()) {
        throw ParseError(head_tok.line, head_tok.column,
                         "head variable '" + Term::variable(v.name).to_string() +
                             "' does not occur in the rule body");
      }
    }
    return Rule{std::move(head), std::move(body)};
  }

  Plan plan() {
    Plan p;
    p.source_line = cur().line;
    p.trigger.op = take().kind == TokenKind::kPlus ? TriggerOp::kAdd : TriggerOp::kDelete;
    if (at(TokenKind::kBang)) {
      take();
      p.trigger.kind = TriggerKind::kAchieve;
    } else if (at(TokenKind::kQuestion)) {
      take();
      p.trigger.kind = TriggerKind::kTest;
    }
    p.trigger.literal = literal_term("triggering literal");

    if (at(TokenKind::kColon)) {
      take();
      if (at(TokenKind::kTrue)) {
        take();
        p.context_form = Plan::ContextForm::kTrueKeyword;
      } else {
        if (at(TokenKind::kArrow) || at(TokenKind::kDot)) {
          fail("plan context is empty",
               {TokenKind::kAtom, TokenKind::kNot, TokenKind::kLParen, TokenKind::kTrue,
                TokenKind::kVariable});
        }
        p.context_form = Plan::ContextForm::kFormula;
        p.context = formula();
      }
    }
    if (at(TokenKind::kDot)) fail("plan body is empty", {TokenKind::kArrow});
    expect(TokenKind::kArrow, "'<-' before the plan body");
    if (at(TokenKind::kDot)) {
      fail("plan body is empty",
           {TokenKind::kAtom, TokenKind::kBang, TokenKind::kQuestion, TokenKind::kPlus,
            TokenKind::kMinus});
    }
    p.body.push_back(body_step());
    while (at(TokenKind::kSemicolon)) {
      take();
      p.body.push_back(body_step());
    }
    expect(TokenKind::kDot, "';' or '.' after a body step");
    return p;
  }

  BodyStep body_step() {
    BodyStep s;
    switch (cur().kind) {
      case TokenKind::kBang: take(); s.kind = BodyStep::Kind::kAchieve; break;
      case TokenKind::kQuestion: take(); s.kind = BodyStep::Kind::kTest; break;
      case TokenKind::kPlus: take(); s.kind = BodyStep::Kind::kAddBelief; break;
      case TokenKind::kMinus: take(); s.kind = BodyStep::Kind::kDelBelief; break;
      case TokenKind::kAtom: s.kind = BodyStep::Kind::kAction; break;
      case TokenKind::kVariable:
        fail("functor '" + cur().text + "' must start with a lowercase letter",
             {TokenKind::kAtom});
      default:
        fail("expected a body step",
             {TokenKind::kAtom, TokenKind::kBang, TokenKind::kQuestion, TokenKind::kPlus,
              TokenKind::kMinus});
    }
    s.literal = literal_term("body literal");
    return s;
  }

  Term literal_term(const std::string& what) {
    if (at(TokenKind::kVariable)) {
      fail("functor '" + cur().text + "' must start with a lowercase letter", {TokenKind::kAtom});
    }
    if (!at(TokenKind::kAtom)) fail("expected " + what, {TokenKind::kAtom});
    return term();
  }

  Formula formula() {
    const Token& start = cur();
    FormulaNode root = formula_node();
    try {
      return Formula::from_syntax(std::move(root));
    } catch (const std::invalid_argument& e) {
      throw ParseError(start.line, start.column, e.what());
    }
  }

  FormulaNode formula_node() {
    FormulaNode first = unary();
    if (!at(TokenKind::kAmp)) return first;
    FormulaNode conj;
    conj.kind = FormulaNode::Kind::kAnd;
    conj.children.push_back(std::move(first));
    while (at(TokenKind::kAmp)) {
      take();
      conj.children.push_back(unary());
    }
    return conj;
  }

  FormulaNode unary() {
    FormulaNode n;
    if (at(TokenKind::kNot)) {
      take();
      n.kind = FormulaNode::Kind::kNot;
      if (at(TokenKind::kLParen)) {
        n.children.push_back(paren());
      } else {
        FormulaNode a;
        a.kind = FormulaNode::Kind::kAtomic;
        a.term = literal_term("literal after 'not'");
        n.children.push_back(std::move(a));
      }
      return n;
    }
    if (at(TokenKind::kLParen)) return paren();
    if (!(at(TokenKind::kAtom) || at(TokenKind::kVariable) || at(TokenKind::kInteger) ||
          at(TokenKind::kTrue))) {
      fail("expected a literal or equality",
           {TokenKind::kAtom, TokenKind::kVariable, TokenKind::kNot, TokenKind::kLParen});
    }
    const Token& start = cur();
    Term t = term();
    if (at(TokenKind::kEquals)) {
      take();
      n.kind = FormulaNode::Kind::kEquals;
      n.term = std::move(t);
      n.rhs = term();
      return n;
    }
    if (!t.is_callable()) {
      throw ParseError(start.line, start.column,
                       "'" + start.text + "' cannot stand alone as a literal", {"'='"});
    }
    n.kind = FormulaNode::Kind::kAtomic;
    n.term = std::move(t);
    return n;
  }

  FormulaNode paren() {
    expect(TokenKind::kLParen, "'('");
    FormulaNode n;
    n.kind = FormulaNode::Kind::kParen;
    n.children.push_back(formula_node());
    expect(TokenKind::kRParen, "')'");
    return n;
  }

  Term term() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::kAtom:
      case TokenKind::kTrue: {
        std::string name = take().text;
        if (!at(TokenKind::kLParen)) return Term::atom(std::move(name));
        take();
        std::vector<Term> args;
        args.push_back(term());
        while (at(TokenKind::kComma)) {
          take();
          args.push_back(term());
        }
        expect(TokenKind::kRParen, "',' or ')' in argument list");
        return Term::structure(std::move(name), std::move(args));
      }
      case TokenKind::kVariable: {
        std::string name = take().text;
        if (at(TokenKind::kLParen)) {
          throw ParseError(t.line, t.column,
                           "functor '" + name + "' must start with a lowercase letter",
                           {"atom"});
        }
        if (name == "_") return Term::anonymous(++anon_serial_);
        return Term::variable(std::move(name));
      }
      case TokenKind::kInteger: {
        const std::string& text = take().text;
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc()) throw ParseError(t.line, t.column, "integer out of range");
        return Term::integer(v);
      }
      default:
        fail("expected a term", {TokenKind::kAtom, TokenKind::kVariable, TokenKind::kInteger});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::uint32_t anon_serial_ = 0;
};

}  // namespace

std::string_view token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::kAtom: return "atom";
    case TokenKind::kVariable: return "variable";
    case TokenKind::kInteger: return "integer";
    case TokenKind::kNot: return "not";
    case TokenKind::kTrue: return "true";
    case TokenKind::kLParen: return "(";
    case TokenKind::kRParen: return ")";
    case TokenKind::kComma: return ",";
    case TokenKind::kDot: return ".";
    case TokenKind::kIf: return ":-";
    case TokenKind::kColon: return ":";
    case TokenKind::kArrow: return "<-";
    case TokenKind::kAmp: return "&";
    case TokenKind::kSemicolon: return ";";
    case TokenKind::kPlus: return "+";
    case TokenKind::kMinus: return "-";
    case TokenKind::kBang: return "!";
    case TokenKind::kQuestion: return "?";
    case TokenKind::kEquals: return "=";
    case TokenKind::kEnd: return "end of input";
  }
  return "?";
}

ParseError::ParseError(int line, int column, std::string message, std::set<std::string> expected)
    : std::runtime_error(format_error(line, column, message, expected)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

Program parse_program(std::string_view text) { return Parser(text).program(); }

Term parse_literal(std::string_view text) { return Parser(text).single_term(true); }

Term parse_term(std::string_view text) { return Parser(text).any_term(); }

Formula parse_formula(std::string_view text) { return Parser(text).single_formula(); }

}  // namespace tunnelmail::asl
