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

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "slhnet/netlist/lexer.hpp"

namespace slhnet::netlist {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { literal, name, call, negate, add, subtract, multiply, divide, adjoint };

  Kind kind = Kind::literal;
  SourcePos pos;
  std::complex<double> value;  // literal
  std::string name;            // name, call
  std::vector<ExprPtr> args;   // call arguments or operands
};

struct SpaceDecl {
  enum class Kind { fock, dim, grid };
  std::string name;
  Kind kind = Kind::fock;
  std::size_t dim = 1;
  double min = 0.0;  // grid only
  double max = 0.0;
  SourcePos pos;
};

struct ComponentDecl {
  std::string name;
  SourcePos pos;
  // Builtin form: `component NAME = builtin(args)`.
  std::optional<std::string> builtin;
  std::vector<ExprPtr> builtin_args;
  SourcePos builtin_pos;
  // Literal form: `component NAME { S=... L=... H=... }`.
  std::optional<std::vector<std::vector<ExprPtr>>> S;
  std::optional<std::vector<ExprPtr>> L;
  ExprPtr H;
};

struct ParamDecl {
  std::string name;
  ExprPtr value;
  SourcePos pos;
};

/// One side of a connection: a single component or a parenthesized group
/// whose members are concatenated in order.
struct Endpoint {
  std::vector<std::string> members;
  std::vector<SourcePos> member_pos;
  SourcePos pos;

  std::string label() const {
    std::string out;
    for (std::size_t k = 0; k < members.size(); ++k) out += (k ? "+" : "") + members[k];
    return out;
  }
};

/// `connect A -> B -> ...`; each arrow is one series connection.
struct ConnectDecl {
  std::vector<Endpoint> path;
  SourcePos pos;
};

struct CoupleDecl {
  ExprPtr M;
  ExprPtr N;
  SourcePos pos;
};

struct StateFactor {
  std::string kind;  // vacuum, fock, coherent, gaussian
  std::vector<ExprPtr> args;
  SourcePos pos;
};

struct StateDecl {
  std::vector<StateFactor> factors;
  SourcePos pos;
};

struct RunEntry {
  std::string key;
  ExprPtr value;
  SourcePos pos;
};

struct RunDecl {
  std::vector<RunEntry> entries;
  SourcePos pos;
};

struct NetlistDocument {
  std::vector<SpaceDecl> spaces;
  std::vector<ParamDecl> params;
  std::vector<ComponentDecl> components;
  std::vector<ConnectDecl> connections;
  std::vector<CoupleDecl> couplings;
  std::vector<StateDecl> states;
  std::vector<RunDecl> runs;

  /// Number of series connections (arrows).
  std::size_t connection_count() const {
    std::size_t n = 0;
    for (const auto& c : connections) n += c.path.size() - 1;
    return n;
  }

  const SpaceDecl* find_space(const std::string& name) const {
    for (const auto& s : spaces) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }

  const ComponentDecl* find_component(const std::string& name) const {
    for (const auto& c : components) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

}  // namespace slhnet::netlist
