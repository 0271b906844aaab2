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

#include <cerrno>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace slhnet::netlist {

/// 1-based line and column of a byte in the source.
struct SourcePos {
  int line = 1;
  int column = 1;
};

enum class Severity { error, warning, note };

inline std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::error:
      return "error";
    case Severity::warning:
      return "warning";
    case Severity::note:
      return "note";
  }
  return "error";
}

struct Diagnostic {
  Severity severity = Severity::error;
  std::string message;
  int line = 1;
  int column = 1;

  static Diagnostic error(SourcePos pos, std::string msg) {
    return {Severity::error, std::move(msg), pos.line, pos.column};
  }
  static Diagnostic warning(SourcePos pos, std::string msg) {
    return {Severity::warning, std::move(msg), pos.line, pos.column};
  }

  /// Not tied to a source location (command-line and run-time problems).
  static Diagnostic general(Severity s, std::string msg) { return {s, std::move(msg), 0, 0}; }

  /// "FILE:LINE:COL: severity: message", or "FILE: severity: message" without a location.
  std::string format(std::string_view file = "<input>") const {
    std::string where(file);
    if (line > 0) where += ":" + std::to_string(line) + ":" + std::to_string(column);
    return where + ": " + std::string(to_string(severity)) + ": " + message;
  }
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::error) return true;
  }
  return false;
}

enum class TokenKind {
  identifier,
  number,     // real literal
  imaginary,  // literal with an `i` suffix, e.g. 2i
  lparen,
  rparen,
  lbracket,
  rbracket,
  lbrace,
  rbrace,
  comma,
  semicolon,
  equals,
  plus,
  minus,
  star,
  slash,
  quote,
  arrow,
  newline,
  end,
};

inline std::string_view describe(TokenKind k) {
  switch (k) {
    case TokenKind::identifier:
      return "identifier";
    case TokenKind::number:
      return "number";
    case TokenKind::imaginary:
      return "imaginary number";
    case TokenKind::lparen:
      return "'('";
    case TokenKind::rparen:
      return "')'";
    case TokenKind::lbracket:
      return "'['";
    case TokenKind::rbracket:
      return "']'";
    case TokenKind::lbrace:
      return "'{'";
    case TokenKind::rbrace:
      return "'}'";
    case TokenKind::comma:
      return "','";
    case TokenKind::semicolon:
      return "';'";
    case TokenKind::equals:
      return "'='";
    case TokenKind::plus:
      return "'+'";
    case TokenKind::minus:
      return "'-'";
    case TokenKind::star:
      return "'*'";
    case TokenKind::slash:
      return "'/'";
    case TokenKind::quote:
      return "'''";
    case TokenKind::arrow:
      return "'->'";
    case TokenKind::newline:
      return "end of line";
    case TokenKind::end:
      return "end of input";
  }
  return "token";
}

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  double value = 0.0;
  SourcePos pos;
};

/// Splits source text into tokens. Newlines inside (), [] or {} are dropped
/// so statements may continue across lines within brackets. `#` starts a
/// comment that runs to the end of the line.
class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    while (idx_ < src_.size()) {
      const char c = src_[idx_];
      const SourcePos start{line_, col_};
      if (c == '\n') {
        advance();
        if (depth_ == 0) out.push_back({TokenKind::newline, "\n", 0.0, start});
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '#') {
        while (idx_ < src_.size() && src_[idx_] != '\n') advance();
      } else if (is_ident_start(c)) {
        std::size_t begin = idx_;
        while (idx_ < src_.size() && is_ident_char(src_[idx_])) advance();
        out.push_back({TokenKind::identifier, std::string(src_.substr(begin, idx_ - begin)), 0.0, start});
      } else if (is_digit(c) || (c == '.' && idx_ + 1 < src_.size() && is_digit(src_[idx_ + 1]))) {
        lex_number(out, diags, start);
      } else {
        lex_punct(out, diags, start);
      }
    }
    if (out.empty() || out.back().kind != TokenKind::newline) {
      out.push_back({TokenKind::newline, "\n", 0.0, {line_, col_}});
    }
    out.push_back({TokenKind::end, "", 0.0, {line_, col_}});
    return out;
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

  void advance() {
    if (src_[idx_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++idx_;
  }

  char peek(std::size_t ahead = 0) const { return idx_ + ahead < src_.size() ? src_[idx_ + ahead] : '\0'; }

  void lex_number(std::vector<Token>& out, std::vector<Diagnostic>& diags, SourcePos start) {
    const std::size_t begin = idx_;
    while (is_digit(peek())) advance();
    if (peek() == '.') {
      advance();
      while (is_digit(peek())) advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      advance();
      if (peek() == '+' || peek() == '-') advance();
      while (is_digit(peek())) advance();
    }
    const std::string text(src_.substr(begin, idx_ - begin));
    errno = 0;
    const double v = std::strtod(text.c_str(), nullptr);
    if (errno == ERANGE) diags.push_back(Diagnostic::error(start, "numeric literal '" + text + "' out of range"));
    TokenKind kind = TokenKind::number;
    if (peek() == 'i' && !is_ident_char(peek(1))) {
      advance();
      kind = TokenKind::imaginary;
    }
    if (is_ident_char(peek())) {
      diags.push_back(Diagnostic::error({line_, col_}, "unexpected character after numeric literal '" + text + "'"));
      while (is_ident_char(peek())) advance();
    }
    out.push_back({kind, text, v, start});
  }

  void lex_punct(std::vector<Token>& out, std::vector<Diagnostic>& diags, SourcePos start) {
    const char c = src_[idx_];
    auto emit = [&](TokenKind k, std::size_t len) {
      const std::string text(src_.substr(idx_, len));
      for (std::size_t j = 0; j < len; ++j) advance();
      out.push_back({k, text, 0.0, start});
    };
    switch (c) {
      case '(':
      case '[':
      case '{':
        ++depth_;
        emit(c == '(' ? TokenKind::lparen : c == '[' ? TokenKind::lbracket : TokenKind::lbrace, 1);
        return;
      case ')':
      case ']':
      case '}':
        if (depth_ > 0) --depth_;
        emit(c == ')' ? TokenKind::rparen : c == ']' ? TokenKind::rbracket : TokenKind::rbrace, 1);
        return;
      case ',':
        emit(TokenKind::comma, 1);
        return;
      case ';':
        emit(TokenKind::semicolon, 1);
        return;
      case '=':
        emit(TokenKind::equals, 1);
        return;
      case '+':
        emit(TokenKind::plus, 1);
        return;
      case '-':
        if (peek(1) == '>') {
          emit(TokenKind::arrow, 2);
        } else {
          emit(TokenKind::minus, 1);
        }
        return;
      case '*':
        emit(TokenKind::star, 1);
        return;
      case '/':
        emit(TokenKind::slash, 1);
        return;
      case '\'':
        emit(TokenKind::quote, 1);
        return;
      default:
        break;
    }
    const auto byte = static_cast<unsigned char>(c);
    std::string shown;
    if (byte >= 0x20 && byte < 0x7f) {
      shown = std::string("'") + c + "'";
    } else {
      static const char* hex = "0123456789abcdef";
      shown = std::string("byte 0x") + hex[byte >> 4] + hex[byte & 15];
    }
    diags.push_back(Diagnostic::error(start, "unexpected " + shown));
    advance();
  }

  std::string_view src_;
  std::size_t idx_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
};

}  // namespace slhnet::netlist
