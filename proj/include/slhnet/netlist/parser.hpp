// Copyright 2026 The slhnet Authors
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

#pragma once

// Netlist grammar (one statement per line; brackets may span lines):
//
//   space NAME fock N | space NAME dim N | space NAME grid MIN MAX POINTS
//   param NAME = expr
//   component NAME { S=[[e,..],..] L=[e,..] H=e }
//   component NAME = cavity(SPACE, gamma, delta) | beamsplitter(alpha, beta)
//                  | passthrough(n) | phase(theta) | holevo(H00, H01, H10, H11)
//                  | classical_sde(GRIDSPACE, f(x), g(x), h(x))
//   connect A -> B [-> C ...]      endpoints may be groups: (C, N)
//   couple M=expr N=expr
//   state vacuum | fock(SPACE, n) | coherent(SPACE, re, im) | gaussian(SPACE, mean, std)
//         (factors joined with *)
//   run { dt=.. T=.. seed=.. runs=.. channel=.. tol=.. }
//
// Expressions: real and imaginary literals (2, 0.5i), i, pi, + - * /, postfix '
// (adjoint), parentheses, a(S) adag(S) n(S) id(S) pos(GRIDSPACE), and the scalar
// functions sqrt exp sin cos. Inside classical_sde() arguments x is the grid coordinate.

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slhnet/netlist/ast.hpp"
#include "slhnet/netlist/lexer.hpp"

namespace slhnet::netlist {

/// Argument requirement for builtin calls.
enum class ArgKind { expr, space, fock_space, grid_space, function_of_x };

struct BuiltinSignature {
  std::string_view name;
  std::vector<ArgKind> args;
};

inline const std::vector<BuiltinSignature>& component_builtins() {
  static const std::vector<BuiltinSignature> table = {
      {"cavity", {ArgKind::fock_space, ArgKind::expr, ArgKind::expr}},
      {"beamsplitter", {ArgKind::expr, ArgKind::expr}},
      {"passthrough", {ArgKind::expr}},
      {"phase", {ArgKind::expr}},
      {"holevo", {ArgKind::expr, ArgKind::expr, ArgKind::expr, ArgKind::expr}},
      {"classical_sde",
       {ArgKind::grid_space, ArgKind::function_of_x, ArgKind::function_of_x, ArgKind::function_of_x}},
  };
  return table;
}

inline const std::vector<BuiltinSignature>& expression_functions() {
  static const std::vector<BuiltinSignature> table = {
      {"a", {ArgKind::fock_space}},   {"adag", {ArgKind::fock_space}}, {"n", {ArgKind::fock_space}},
      {"id", {ArgKind::space}},       {"sqrt", {ArgKind::expr}},       {"exp", {ArgKind::expr}},
      {"sin", {ArgKind::expr}},       {"cos", {ArgKind::expr}},        {"pos", {ArgKind::grid_space}},
  };
  return table;
}

inline const std::vector<BuiltinSignature>& state_builtins() {
  static const std::vector<BuiltinSignature> table = {
      {"vacuum", {}},
      {"fock", {ArgKind::space, ArgKind::expr}},
      {"coherent", {ArgKind::fock_space, ArgKind::expr, ArgKind::expr}},
      {"gaussian", {ArgKind::grid_space, ArgKind::expr, ArgKind::expr}},
  };
  return table;
}

inline const std::vector<std::string_view>& run_keys() {
  static const std::vector<std::string_view> keys = {"dt", "T", "seed", "runs", "channel", "tol"};
  return keys;
}

inline const BuiltinSignature* find_builtin(const std::vector<BuiltinSignature>& table, std::string_view name) {
  for (const auto& b : table) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

inline bool is_reserved_name(std::string_view name) { return name == "i" || name == "pi" || name == "x"; }

/// Name resolution for expressions.
struct Scope {
  const NetlistDocument* doc = nullptr;
  bool allow_x = false;
};

namespace parser_detail {

inline std::string_view kind_noun(SpaceDecl::Kind k) {
  switch (k) {
    case SpaceDecl::Kind::fock:
      return "fock";
    case SpaceDecl::Kind::dim:
      return "generic";
    case SpaceDecl::Kind::grid:
      return "grid";
  }
  return "generic";
}

inline void check_space_arg(const Expr& arg, ArgKind want, const NetlistDocument& doc, std::string_view fn,
                            std::vector<Diagnostic>& diags) {
  if (arg.kind != Expr::Kind::name) {
    diags.push_back(Diagnostic::error(arg.pos, std::string(fn) + "() expects a space name here"));
    return;
  }
  const SpaceDecl* s = doc.find_space(arg.name);
  if (!s) {
    diags.push_back(Diagnostic::error(arg.pos, "unknown space '" + arg.name + "'"));
    return;
  }
  if (want == ArgKind::fock_space && s->kind != SpaceDecl::Kind::fock) {
    diags.push_back(Diagnostic::error(arg.pos, std::string(fn) + "() needs a fock space, '" + arg.name +
                                                   "' is " + std::string(kind_noun(s->kind))));
  }
  if (want == ArgKind::grid_space && s->kind != SpaceDecl::Kind::grid) {
    diags.push_back(Diagnostic::error(arg.pos, std::string(fn) + "() needs a grid space, '" + arg.name +
                                                   "' is " + std::string(kind_noun(s->kind))));
  }
}

}  // namespace parser_detail

/// Reports unknown names, bad builtin calls and misplaced `x` in an expression.
inline void check_expression(const Expr& e, const Scope& scope, std::vector<Diagnostic>& diags) {
  switch (e.kind) {
    case Expr::Kind::literal:
      return;
    case Expr::Kind::name: {
      if (e.name == "i" || e.name == "pi") return;
      if (e.name == "x") {
        if (!scope.allow_x) {
          diags.push_back(Diagnostic::error(e.pos, "'x' is only defined inside classical_sde() arguments"));
        }
        return;
      }
      for (const auto& p : scope.doc->params) {
        if (p.name == e.name) return;
      }
      std::string msg = "unknown name '" + e.name + "'";
      if (scope.doc->find_space(e.name)) msg += " (spaces are only valid as builtin arguments)";
      diags.push_back(Diagnostic::error(e.pos, msg));
      return;
    }
    case Expr::Kind::call: {
      const BuiltinSignature* sig = find_builtin(expression_functions(), e.name);
      if (!sig) {
        diags.push_back(Diagnostic::error(e.pos, "unknown function '" + e.name + "'"));
        return;
      }
      if (e.args.size() != sig->args.size()) {
        diags.push_back(Diagnostic::error(e.pos, e.name + "() takes " + std::to_string(sig->args.size()) +
                                                     " argument(s), got " + std::to_string(e.args.size())));
        return;
      }
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        if (sig->args[k] == ArgKind::expr) {
          check_expression(*e.args[k], scope, diags);
        } else {
          parser_detail::check_space_arg(*e.args[k], sig->args[k], *scope.doc, e.name, diags);
        }
      }
      return;
    }
    default:
      for (const auto& a : e.args) check_expression(*a, scope, diags);
  }
}

class Parser {
 public:
  static constexpr int kMaxDepth = 200;
  static constexpr int kMaxNodes = 4096;

  Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags) : toks_(std::move(tokens)), diags_(diags) {}

  NetlistDocument parse_document() {
    while (!at(TokenKind::end)) {
      if (at(TokenKind::newline) || at(TokenKind::semicolon)) {
        ++idx_;
        continue;
      }
      const std::size_t before = diags_.size();
      try {
        statement();
      } catch (const Failure& f) {
        diags_.push_back(Diagnostic::error(f.pos, f.message));
      }
      if (diags_.size() != before) synchronize();
    }
    return std::move(doc_);
  }

  /// A single expression followed only by end of input.
  ExprPtr parse_standalone_expression() {
    try {
      nodes_ = 0;
      skip_newlines();
      ExprPtr e = expression();
      skip_newlines();
      if (!at(TokenKind::end)) fail(cur().pos, "unexpected " + token_text(cur()) + " after expression");
      return e;
    } catch (const Failure& f) {
      diags_.push_back(Diagnostic::error(f.pos, f.message));
      return nullptr;
    }
  }

  const NetlistDocument& document() const { return doc_; }
  void set_document(NetlistDocument doc) { doc_ = std::move(doc); }

 private:
  struct Failure {
    SourcePos pos;
    std::string message;
  };

  [[noreturn]] static void fail(SourcePos pos, std::string msg) { throw Failure{pos, std::move(msg)}; }

  const Token& cur() const { return toks_[std::min(idx_, toks_.size() - 1)]; }
  bool at(TokenKind k) const { return cur().kind == k; }
  bool at_word(std::string_view w) const { return at(TokenKind::identifier) && cur().text == w; }

  static std::string token_text(const Token& t) {
    if (t.kind == TokenKind::identifier || t.kind == TokenKind::number) return "'" + t.text + "'";
    if (t.kind == TokenKind::imaginary) return "'" + t.text + "i'";
    return std::string(describe(t.kind));
  }

  const Token& expect(TokenKind k, std::string_view what) {
    if (!at(k)) fail(cur().pos, "expected " + std::string(what) + ", found " + token_text(cur()));
    return toks_[idx_++];
  }

  bool accept(TokenKind k) {
    if (!at(k)) return false;
    ++idx_;
    return true;
  }

  void skip_newlines() {
    while (at(TokenKind::newline)) ++idx_;
  }

  void synchronize() {
    while (!at(TokenKind::end) && !at(TokenKind::newline)) ++idx_;
  }

  void end_of_statement() {
    if (!at(TokenKind::newline) && !at(TokenKind::semicolon) && !at(TokenKind::end)) {
      fail(cur().pos, "unexpected " + token_text(cur()) + " at end of statement");
    }
  }

  void statement() {
    nodes_ = 0;
    const Token& kw = expect(TokenKind::identifier, "a statement keyword");
    if (kw.text == "space") {
      space_statement(kw.pos);
    } else if (kw.text == "param") {
      param_statement(kw.pos);
    } else if (kw.text == "component") {
      component_statement(kw.pos);
    } else if (kw.text == "connect") {
      connect_statement(kw.pos);
    } else if (kw.text == "couple") {
      couple_statement(kw.pos);
    } else if (kw.text == "state") {
      state_statement(kw.pos);
    } else if (kw.text == "run") {
      run_statement(kw.pos);
    } else {
      fail(kw.pos, "unknown statement '" + kw.text +
                       "' (expected space, param, component, connect, couple, state or run)");
    }
    end_of_statement();
  }

  // ---- statements -------------------------------------------------------

  std::size_t positive_integer(std::string_view what, std::size_t minimum) {
    const Token& t = expect(TokenKind::number, what);
    if (t.value != std::floor(t.value) || t.value < static_cast<double>(minimum) || t.value > 1e6) {
      fail(t.pos, std::string(what) + " must be an integer >= " + std::to_string(minimum) + ", got '" + t.text +
                      "'");
    }
    return static_cast<std::size_t>(t.value);
  }

  double signed_number(std::string_view what) {
    const bool neg = accept(TokenKind::minus);
    if (!neg) accept(TokenKind::plus);
    const Token& t = expect(TokenKind::number, what);
    return neg ? -t.value : t.value;
  }

  void space_statement(SourcePos pos) {
    const Token& name = expect(TokenKind::identifier, "space name");
    if (doc_.find_space(name.text)) fail(name.pos, "duplicate space '" + name.text + "'");
    if (is_reserved_name(name.text)) fail(name.pos, "'" + name.text + "' is a reserved name");
    SpaceDecl decl;
    decl.name = name.text;
    decl.pos = pos;
    const Token& kind = expect(TokenKind::identifier, "space kind (fock, dim or grid)");
    if (kind.text == "fock") {
      decl.kind = SpaceDecl::Kind::fock;
      decl.dim = positive_integer("fock cutoff", 1);
    } else if (kind.text == "dim") {
      decl.kind = SpaceDecl::Kind::dim;
      decl.dim = positive_integer("dimension", 1);
    } else if (kind.text == "grid") {
      decl.kind = SpaceDecl::Kind::grid;
      const SourcePos at_min = cur().pos;
      decl.min = signed_number("grid minimum");
      decl.max = signed_number("grid maximum");
      if (!(decl.max > decl.min)) fail(at_min, "grid maximum must exceed the minimum");
      decl.dim = positive_integer("grid point count", 3);
    } else {
      fail(kind.pos, "unknown space kind '" + kind.text + "' (expected fock, dim or grid)");
    }
    doc_.spaces.push_back(decl);
  }

  void param_statement(SourcePos pos) {
    const Token& name = expect(TokenKind::identifier, "parameter name");
    if (is_reserved_name(name.text)) fail(name.pos, "'" + name.text + "' is a reserved name");
    for (const auto& p : doc_.params) {
      if (p.name == name.text) fail(name.pos, "duplicate parameter '" + name.text + "'");
    }
    expect(TokenKind::equals, "'='");
    ExprPtr value = expression();
    check(*value, false);
    doc_.params.push_back({name.text, value, pos});
  }

  void component_statement(SourcePos pos) {
    const Token& name = expect(TokenKind::identifier, "component name");
    if (doc_.find_component(name.text)) fail(name.pos, "duplicate component '" + name.text + "'");
    ComponentDecl decl;
    decl.name = name.text;
    decl.pos = pos;
    if (accept(TokenKind::equals)) {
      const Token& fn = expect(TokenKind::identifier, "builtin component name");
      const BuiltinSignature* sig = find_builtin(component_builtins(), fn.text);
      if (!sig) {
        fail(fn.pos, "unknown builtin component '" + fn.text +
                         "' (expected cavity, beamsplitter, passthrough, phase, holevo or classical_sde)");
      }
      decl.builtin = fn.text;
      decl.builtin_pos = fn.pos;
      decl.builtin_args = call_arguments();
      check_call(*sig, decl.builtin_args, fn.pos);
    } else {
      expect(TokenKind::lbrace, "'{' or '='");
      while (!accept(TokenKind::rbrace)) {
        if (accept(TokenKind::comma) || accept(TokenKind::semicolon)) continue;
        const Token& field = expect(TokenKind::identifier, "S, L, H or '}'");
        expect(TokenKind::equals, "'='");
        if (field.text == "S") {
          if (decl.S) fail(field.pos, "S given twice");
          decl.S = matrix_literal();
          for (const auto& row : *decl.S) {
            for (const auto& e : row) check(*e, false);
          }
        } else if (field.text == "L") {
          if (decl.L) fail(field.pos, "L given twice");
          decl.L = vector_literal();
          for (const auto& e : *decl.L) check(*e, false);
        } else if (field.text == "H") {
          if (decl.H) fail(field.pos, "H given twice");
          decl.H = expression();
          check(*decl.H, false);
        } else {
          fail(field.pos, "unknown component field '" + field.text + "' (expected S, L or H)");
        }
      }
    }
    doc_.components.push_back(std::move(decl));
  }

  Endpoint endpoint() {
    Endpoint ep;
    ep.pos = cur().pos;
    auto member = [&] {
      const Token& t = expect(TokenKind::identifier, "component name");
      if (!doc_.find_component(t.text)) fail(t.pos, "unknown component '" + t.text + "'");
      if (std::find(ep.members.begin(), ep.members.end(), t.text) != ep.members.end()) {
        fail(t.pos, "component '" + t.text + "' appears twice in one group");
      }
      ep.members.push_back(t.text);
      ep.member_pos.push_back(t.pos);
    };
    if (accept(TokenKind::lparen)) {
      member();
      while (accept(TokenKind::comma)) member();
      expect(TokenKind::rparen, "')'");
    } else {
      member();
    }
    return ep;
  }

  void connect_statement(SourcePos pos) {
    ConnectDecl decl;
    decl.pos = pos;
    decl.path.push_back(endpoint());
    expect(TokenKind::arrow, "'->'");
    decl.path.push_back(endpoint());
    while (accept(TokenKind::arrow)) decl.path.push_back(endpoint());
    doc_.connections.push_back(std::move(decl));
  }

  void couple_statement(SourcePos pos) {
    CoupleDecl decl;
    decl.pos = pos;
    for (const char* which : {"M", "N"}) {
      const Token& t = expect(TokenKind::identifier, which);
      if (t.text != which) fail(t.pos, std::string("expected '") + which + "=', found '" + t.text + "'");
      expect(TokenKind::equals, "'='");
      ExprPtr e = expression();
      check(*e, false);
      (which[0] == 'M' ? decl.M : decl.N) = e;
      accept(TokenKind::comma);
    }
    doc_.couplings.push_back(std::move(decl));
  }

  void state_statement(SourcePos pos) {
    if (!doc_.states.empty()) fail(pos, "only one state declaration is allowed");
    StateDecl decl;
    decl.pos = pos;
    do {
      const Token& t = expect(TokenKind::identifier, "state factor");
      const BuiltinSignature* sig = find_builtin(state_builtins(), t.text);
      if (!sig) fail(t.pos, "unknown state '" + t.text + "' (expected vacuum, fock, coherent or gaussian)");
      StateFactor f{t.text, {}, t.pos};
      if (at(TokenKind::lparen)) f.args = call_arguments();
      check_call(*sig, f.args, t.pos);
      decl.factors.push_back(std::move(f));
    } while (accept(TokenKind::star));
    doc_.states.push_back(std::move(decl));
  }

  void run_statement(SourcePos pos) {
    RunDecl decl;
    decl.pos = pos;
    expect(TokenKind::lbrace, "'{'");
    while (!accept(TokenKind::rbrace)) {
      if (accept(TokenKind::comma) || accept(TokenKind::semicolon)) continue;
      const Token& key = expect(TokenKind::identifier, "run parameter name or '}'");
      expect(TokenKind::equals, "'='");
      ExprPtr value = expression();
      check(*value, false);
      const auto& keys = run_keys();
      if (std::find(keys.begin(), keys.end(), key.text) == keys.end()) {
        diags_.push_back(Diagnostic::warning(key.pos, "unknown run parameter '" + key.text + "' ignored"));
      }
      for (const auto& e : decl.entries) {
        if (e.key == key.text) fail(key.pos, "run parameter '" + key.text + "' given twice");
      }
      decl.entries.push_back({key.text, value, key.pos});
    }
    doc_.runs.push_back(std::move(decl));
  }

  // ---- literals ---------------------------------------------------------

  std::vector<ExprPtr> vector_literal() {
    expect(TokenKind::lbracket, "'['");
    std::vector<ExprPtr> out;
    if (accept(TokenKind::rbracket)) return out;
    out.push_back(expression());
    while (accept(TokenKind::comma)) out.push_back(expression());
    expect(TokenKind::rbracket, "',' or ']'");
    return out;
  }

  std::vector<std::vector<ExprPtr>> matrix_literal() {
    const SourcePos pos = cur().pos;
    expect(TokenKind::lbracket, "'['");
    std::vector<std::vector<ExprPtr>> rows;
    if (accept(TokenKind::rbracket)) return rows;
    rows.push_back(vector_literal());
    while (accept(TokenKind::comma)) rows.push_back(vector_literal());
    expect(TokenKind::rbracket, "',' or ']'");
    for (const auto& r : rows) {
      if (r.size() != rows.size()) fail(pos, "S must be square");
    }
    return rows;
  }

  std::vector<ExprPtr> call_arguments() {
    expect(TokenKind::lparen, "'('");
    std::vector<ExprPtr> args;
    if (accept(TokenKind::rparen)) return args;
    args.push_back(expression());
    while (accept(TokenKind::comma)) args.push_back(expression());
    expect(TokenKind::rparen, "',' or ')'");
    return args;
  }

  void check(const Expr& e, bool allow_x) { check_expression(e, Scope{&doc_, allow_x}, diags_); }

  void check_call(const BuiltinSignature& sig, const std::vector<ExprPtr>& args, SourcePos pos) {
    if (args.size() != sig.args.size()) {
      fail(pos, std::string(sig.name) + "() takes " + std::to_string(sig.args.size()) + " argument(s), got " +
                    std::to_string(args.size()));
    }
    for (std::size_t k = 0; k < args.size(); ++k) {
      switch (sig.args[k]) {
        case ArgKind::expr:
          check(*args[k], false);
          break;
        case ArgKind::function_of_x:
          check(*args[k], true);
          break;
        default:
          parser_detail::check_space_arg(*args[k], sig.args[k], doc_, sig.name, diags_);
      }
    }
  }

  // ---- expressions ------------------------------------------------------

  // Bounds tree depth for the recursive passes that walk it later.
  void count_node(SourcePos pos) {
    if (++nodes_ > kMaxNodes) fail(pos, "expression too large");
  }

  struct DepthGuard {
    int& depth;
    DepthGuard(int& d, SourcePos pos) : depth(d) {
      if (++depth > kMaxDepth) {
        --depth;
        fail(pos, "expression nested too deeply");
      }
    }
    ~DepthGuard() { --depth; }
  };

  ExprPtr node(Expr::Kind kind, SourcePos pos, std::vector<ExprPtr> args) {
    count_node(pos);
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = pos;
    e->args = std::move(args);
    return e;
  }

  ExprPtr expression() {
    DepthGuard guard(depth_, cur().pos);
    ExprPtr lhs = term();
    while (at(TokenKind::plus) || at(TokenKind::minus)) {
      const Token& op = toks_[idx_++];
      ExprPtr rhs = term();
      lhs = node(op.kind == TokenKind::plus ? Expr::Kind::add : Expr::Kind::subtract, op.pos, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (at(TokenKind::star) || at(TokenKind::slash)) {
      const Token& op = toks_[idx_++];
      ExprPtr rhs = unary();
      lhs = node(op.kind == TokenKind::star ? Expr::Kind::multiply : Expr::Kind::divide, op.pos, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr unary() {
    DepthGuard guard(depth_, cur().pos);
    if (at(TokenKind::minus)) {
      const SourcePos pos = toks_[idx_++].pos;
      return node(Expr::Kind::negate, pos, {unary()});
    }
    if (accept(TokenKind::plus)) return unary();
    ExprPtr e = primary();
    while (at(TokenKind::quote)) e = node(Expr::Kind::adjoint, toks_[idx_++].pos, {e});
    return e;
  }

  ExprPtr primary() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::number:
      case TokenKind::imaginary: {
        ++idx_;
        count_node(t.pos);
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::literal;
        e->pos = t.pos;
        e->value = t.kind == TokenKind::number ? std::complex<double>(t.value, 0.0)
                                               : std::complex<double>(0.0, t.value);
        return e;
      }
      case TokenKind::identifier: {
        ++idx_;
        count_node(t.pos);
        auto e = std::make_shared<Expr>();
        e->pos = t.pos;
        e->name = t.text;
        if (at(TokenKind::lparen)) {
          e->kind = Expr::Kind::call;
          e->args = call_arguments();
        } else {
          e->kind = Expr::Kind::name;
        }
        return e;
      }
      case TokenKind::lparen: {
        ++idx_;
        ExprPtr e = expression();
        expect(TokenKind::rparen, "')'");
        return e;
      }
      default:
        fail(t.pos, "expected an expression, found " + token_text(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
  int depth_ = 0;
  int nodes_ = 0;
  NetlistDocument doc_;
  std::vector<Diagnostic>& diags_;
};

struct ParseResult {
  NetlistDocument document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

inline ParseResult parse_netlist(std::string_view text) {
  ParseResult out;
  Lexer lexer(text);
  std::vector<Token> tokens = lexer.run(out.diagnostics);
  Parser parser(std::move(tokens), out.diagnostics);
  out.document = parser.parse_document();
  std::stable_sort(out.diagnostics.begin(), out.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::pair(a.line, a.column) < std::pair(b.line, b.column);
  });
  return out;
}

struct ExpressionResult {
  ExprPtr expr;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return expr && !has_errors(diagnostics); }
};

/// Parses a command-line expression and resolves its names against `doc`.
inline ExpressionResult parse_expression(std::string_view text, const NetlistDocument& doc) {
  ExpressionResult out;
  Lexer lexer(text);
  std::vector<Token> tokens = lexer.run(out.diagnostics);
  Parser parser(std::move(tokens), out.diagnostics);
  out.expr = parser.parse_standalone_expression();
  if (out.expr) check_expression(*out.expr, Scope{&doc, false}, out.diagnostics);
  return out;
}

}  // namespace slhnet::netlist
