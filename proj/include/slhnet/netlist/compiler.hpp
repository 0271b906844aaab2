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

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slhnet/classical.hpp"
#include "slhnet/components.hpp"
#include "slhnet/dynamics.hpp"
#include "slhnet/holevo.hpp"
#include "slhnet/network.hpp"
#include "slhnet/netlist/parser.hpp"

namespace slhnet::netlist {

struct CompiledSpace {
  SpaceFactor factor;
  std::optional<Grid> grid;
};

/// Run parameters from a `run {}` block; each may be overridden on the command line.
struct RunParams {
  std::optional<double> dt;
  std::optional<double> T;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> channel;  // 1-based
  std::optional<double> tol;
};

struct CompiledComponent {
  std::string name;
  SlhTriple triple;
  SourcePos pos;
};

struct CompiledNetlist {
  std::shared_ptr<SpaceRegistry> registry;
  std::map<std::string, CompiledSpace> spaces;
  std::vector<std::string> space_order;
  std::map<std::string, Operator> params;
  std::vector<CompiledComponent> components;  // declaration order, as written
  NetworkSpec network;                          // groups folded in
  std::optional<Operator> state;                // on the full signature when present
  RunParams run;
  NetlistDocument document;

  Signature full_signature() const {
    Signature sig;
    for (const auto& name : space_order) sig.push_back(spaces.at(name).factor);
    return sig;
  }
};

struct CompileResult {
  std::optional<CompiledNetlist> netlist;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return netlist.has_value() && !has_errors(diagnostics); }
};

/// Evaluates expressions to operators; scalars are operators on the empty signature.
class Evaluator {
 public:
  struct Failure {
    SourcePos pos;
    std::string message;
  };

  explicit Evaluator(const CompiledNetlist& net) : net_(net) {}

  Operator eval(const Expr& e, std::optional<double> x = std::nullopt) const {
    switch (e.kind) {
      case Expr::Kind::literal:
        return Operator::scalar(e.value);
      case Expr::Kind::name:
        return name(e, x);
      case Expr::Kind::call:
        return call(e, x);
      case Expr::Kind::negate:
        return -eval(*e.args[0], x);
      case Expr::Kind::add:
        return guarded(e, [&] { return eval(*e.args[0], x) + eval(*e.args[1], x); });
      case Expr::Kind::subtract:
        return guarded(e, [&] { return eval(*e.args[0], x) - eval(*e.args[1], x); });
      case Expr::Kind::multiply:
        return guarded(e, [&] { return eval(*e.args[0], x) * eval(*e.args[1], x); });
      case Expr::Kind::divide: {
        const Operator num = eval(*e.args[0], x);
        const Operator den = eval(*e.args[1], x);
        if (!den.is_scalar()) throw Failure{e.pos, "division is only defined by scalars"};
        const Complex d = den.matrix()(0, 0);
        if (d == Complex(0.0)) throw Failure{e.pos, "division by zero"};
        return num * (1.0 / d);
      }
      case Expr::Kind::adjoint:
        return eval(*e.args[0], x).adjoint();
    }
    throw Failure{e.pos, "malformed expression"};
  }

  Complex scalar(const Expr& e, std::optional<double> x = std::nullopt) const {
    const Operator v = eval(e, x);
    if (!v.is_scalar()) throw Failure{e.pos, "expected a scalar, got an operator on " + signature_string(v.signature())};
    const Complex z = v.matrix()(0, 0);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Failure{e.pos, "value is not finite"};
    return z;
  }

  double real(const Expr& e, std::optional<double> x = std::nullopt) const {
    const Complex z = scalar(e, x);
    if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z.real()))) {
      throw Failure{e.pos, "expected a real value, got imaginary part " + std::to_string(z.imag())};
    }
    return z.real();
  }

  std::uint64_t integer(const Expr& e, std::uint64_t minimum = 0) const {
    const double v = real(e);
    if (v != std::floor(v) || v < static_cast<double>(minimum) || v > 9.0e15) {
      throw Failure{e.pos, "expected an integer >= " + std::to_string(minimum)};
    }
    return static_cast<std::uint64_t>(v);
  }

  const CompiledSpace& space(const Expr& e) const {
    auto it = net_.spaces.find(e.name);
    if (e.kind != Expr::Kind::name || it == net_.spaces.end()) throw Failure{e.pos, "unknown space '" + e.name + "'"};
    return it->second;
  }

 private:
  template <typename F>
  static Operator guarded(const Expr& e, F&& f) {
    try {
      return f();
    } catch (const Error& err) {
      throw Failure{e.pos, err.what()};
    }
  }

  Operator name(const Expr& e, std::optional<double> x) const {
    if (e.name == "i") return Operator::scalar(kI);
    if (e.name == "pi") return Operator::scalar(M_PI);
    if (e.name == "x") {
      if (!x) throw Failure{e.pos, "'x' is only defined inside classical_sde() arguments"};
      return Operator::scalar(*x);
    }
    auto it = net_.params.find(e.name);
    if (it == net_.params.end()) throw Failure{e.pos, "unknown name '" + e.name + "'"};
    return it->second;
  }

  Operator call(const Expr& e, std::optional<double> x) const {
    if (e.args.size() != 1) throw Failure{e.pos, e.name + "() takes 1 argument"};
    const Expr& arg = *e.args[0];
    if (e.name == "a" || e.name == "adag" || e.name == "n" || e.name == "id") {
      const CompiledSpace& s = space(arg);
      if (e.name == "id") return identity(s.factor);
      if (s.factor.kind != SpaceKind::fock) throw Failure{arg.pos, e.name + "() needs a fock space"};
      if (e.name == "a") return annihilation(s.factor);
      if (e.name == "adag") return creation(s.factor);
      return number(s.factor);
    }
    if (e.name == "pos") {
      const CompiledSpace& s = space(arg);
      if (!s.grid) throw Failure{arg.pos, "pos() needs a grid space"};
      return grid_function(s.factor, s.grid->nodes());
    }
    const Complex z = scalar(arg, x);
    if (e.name == "sqrt") return Operator::scalar(std::sqrt(z));
    if (e.name == "exp") return Operator::scalar(std::exp(z));
    if (e.name == "sin") return Operator::scalar(std::sin(z));
    if (e.name == "cos") return Operator::scalar(std::cos(z));
    throw Failure{e.pos, "unknown function '" + e.name + "'"};
  }

  const CompiledNetlist& net_;
};

namespace compiler_detail {

using Failure = Evaluator::Failure;

inline SlhTriple literal_component(const ComponentDecl& d, const Evaluator& ev) {
  std::size_t n = 0;
  if (d.S) n = d.S->size();
  if (d.L) {
    if (d.S && d.L->size() != n) {
      throw Failure{d.pos, "S is " + std::to_string(n) + "x" + std::to_string(n) + " but L has " +
                               std::to_string(d.L->size()) + " entries"};
    }
    n = d.L->size();
  }
  Signature sig;
  std::vector<Operator> s_entries;
  std::vector<Operator> l_entries;
  Operator h = d.H ? ev.eval(*d.H) : Operator::scalar(0.0);
  sig = unify(sig, h.signature());
  if (d.S) {
    for (const auto& row : *d.S) {
      for (const auto& e : row) {
        s_entries.push_back(ev.eval(*e));
        sig = unify(sig, s_entries.back().signature());
      }
    }
  }
  if (d.L) {
    for (const auto& e : *d.L) {
      l_entries.push_back(ev.eval(*e));
      sig = unify(sig, l_entries.back().signature());
    }
  }
  const OperatorMatrix S = d.S ? OperatorMatrix::from_entries(n, n, s_entries).embedded(sig)
                               : OperatorMatrix::identity(sig, n);
  const OperatorMatrix L = d.L ? OperatorMatrix::from_entries(n, 1, l_entries).embedded(sig) : OperatorMatrix(sig, n, 1);
  return SlhTriple(S, L, embed(h, sig));
}

inline SlhTriple builtin_component(const ComponentDecl& d, const Evaluator& ev) {
  const auto& name = *d.builtin;
  const auto& args = d.builtin_args;
  if (name == "cavity") {
    const double gamma = ev.real(*args[1]);
    if (gamma < 0.0) throw Failure{args[1]->pos, "cavity decay rate must be non-negative"};
    return cavity(ev.space(*args[0]).factor, gamma, ev.real(*args[2]));
  }
  if (name == "beamsplitter") return beamsplitter(ev.scalar(*args[0]), ev.scalar(*args[1]));
  if (name == "passthrough") return passthrough(ev.integer(*args[0]));
  if (name == "phase") return phase_shift(ev.real(*args[0]));
  if (name == "holevo") return holevo_to_slh({ev.eval(*args[0]), ev.eval(*args[1]), ev.eval(*args[2]), ev.eval(*args[3])});
  if (name == "classical_sde") {
    const CompiledSpace& s = ev.space(*args[0]);
    if (!s.grid) throw Failure{args[0]->pos, "classical_sde() needs a grid space"};
    auto fn = [&ev](const ExprPtr& e) { return [&ev, e](double x) { return ev.real(*e, x); }; };
    return embed_sde_grid(s.factor, *s.grid, fn(args[1]), fn(args[2]), fn(args[3])).triple();
  }
  throw Failure{d.builtin_pos, "unknown builtin component '" + name + "'"};
}

inline Operator state_factor(const StateFactor& f, const Evaluator& ev) {
  if (f.kind == "vacuum") return Operator::scalar(1.0);
  const CompiledSpace& s = ev.space(*f.args[0]);
  if (f.kind == "fock") {
    const auto level = ev.integer(*f.args[1]);
    if (level >= s.factor.dim) {
      throw Failure{f.args[1]->pos, "level " + std::to_string(level) + " outside space '" + s.factor.label +
                                        "' of dimension " + std::to_string(s.factor.dim)};
    }
    return fock_state(s.factor, level);
  }
  if (f.kind == "coherent") {
    return coherent_state(s.factor, Complex(ev.real(*f.args[1]), ev.real(*f.args[2])));
  }
  if (f.kind == "gaussian") {
    const double mean = ev.real(*f.args[1]);
    const double sd = ev.real(*f.args[2]);
    if (!(sd > 0.0)) throw Failure{f.args[2]->pos, "gaussian width must be positive"};
    // Amplitude psi with |psi|^2 a normal density of the given mean and width.
    const Eigen::VectorXd x = s.grid->nodes();
    Eigen::VectorXcd psi(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double z = (x(k) - mean) / sd;
      psi(k) = std::exp(-0.25 * z * z);
    }
    return pure_state({s.factor}, psi);
  }
  throw Failure{f.pos, "unknown state '" + f.kind + "'"};
}

}  // namespace compiler_detail

/// Largest product of declared space dimensions a netlist may use.
inline constexpr std::size_t kMaxTotalDimension = 2048;

/// Builds operators, components, the network and the initial state from a parsed document.
inline CompileResult compile(const NetlistDocument& doc, std::shared_ptr<SpaceRegistry> registry = nullptr) {
  using compiler_detail::Failure;
  CompileResult out;
  CompiledNetlist net;
  net.registry = registry ? std::move(registry) : std::make_shared<SpaceRegistry>();
  net.document = doc;
  const Evaluator ev(net);
  auto& diags = out.diagnostics;

  auto attempt = [&](SourcePos pos, auto&& f) {
    try {
      f();
      return true;
    } catch (const Failure& fail) {
      diags.push_back(Diagnostic::error(fail.pos, fail.message));
    } catch (const Error& err) {
      diags.push_back(Diagnostic::error(pos, err.what()));
    }
    return false;
  };

  std::size_t total_dim = 1;
  for (const auto& s : doc.spaces) {
    attempt(s.pos, [&] {
      if (s.dim > kMaxTotalDimension / total_dim) {
        throw Failure{s.pos, "space '" + s.name + "' takes the total Hilbert space dimension past " +
                                 std::to_string(kMaxTotalDimension) + " (dense operators would not fit in memory)"};
      }
      total_dim *= s.dim;
      const SpaceKind kind = s.kind == SpaceDecl::Kind::fock ? SpaceKind::fock : SpaceKind::generic;
      CompiledSpace cs{net.registry->register_space(s.name, kind, s.dim), std::nullopt};
      if (s.kind == SpaceDecl::Kind::grid) cs.grid = Grid{s.min, s.max, s.dim};
      net.spaces.emplace(s.name, cs);
      net.space_order.push_back(s.name);
    });
  }
  for (const auto& p : doc.params) {
    attempt(p.pos, [&] { net.params.insert_or_assign(p.name, ev.eval(*p.value)); });
  }
  if (has_errors(diags)) return out;

  std::map<std::string, std::size_t> component_index;
  for (const auto& c : doc.components) {
    attempt(c.pos, [&] {
      SlhTriple g = c.builtin ? compiler_detail::builtin_component(c, ev) : compiler_detail::literal_component(c, ev);
      component_index[c.name] = net.components.size();
      net.components.push_back({c.name, std::move(g), c.pos});
    });
  }

  // Groups: every multi-member endpoint becomes one derived component.
  std::map<std::string, std::string> group_of;  // member -> group label
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& conn : doc.connections) {
    for (const auto& ep : conn.path) {
      if (ep.members.size() < 2) continue;
      const std::string label = ep.label();
      for (std::size_t k = 0; k < ep.members.size(); ++k) {
        auto it = group_of.find(ep.members[k]);
        if (it != group_of.end() && it->second != label) {
          diags.push_back(Diagnostic::error(ep.member_pos[k], "component '" + ep.members[k] +
                                                                  "' already belongs to group (" + it->second + ")"));
        }
        group_of.emplace(ep.members[k], label);
      }
      groups.emplace(label, ep.members);
    }
  }
  for (const auto& conn : doc.connections) {
    for (const auto& ep : conn.path) {
      if (ep.members.size() == 1 && group_of.count(ep.members[0])) {
        diags.push_back(Diagnostic::error(ep.pos, "component '" + ep.members[0] + "' is used inside group (" +
                                                      group_of.at(ep.members[0]) + ") and cannot be connected alone"));
      }
    }
  }
  if (has_errors(diags)) return out;

  for (const auto& c : net.components) {
    auto it = group_of.find(c.name);
    if (it == group_of.end()) {
      net.network.add_component(c.name, c.triple);
      continue;
    }
    if (net.network.index_of(it->second)) continue;
    SlhTriple g;
    for (const auto& m : groups.at(it->second)) g = concatenate(g, net.components[component_index.at(m)].triple);
    net.network.add_component(it->second, g);
  }
  for (const auto& conn : doc.connections) {
    for (std::size_t k = 0; k + 1 < conn.path.size(); ++k) {
      attempt(conn.path[k + 1].pos, [&] {
        try {
          net.network.add_connection(conn.path[k].label(), conn.path[k + 1].label());
        } catch (const NetworkError& e) {
          throw Failure{conn.path[k + 1].pos, e.what()};
        }
      });
    }
  }
  for (const auto& cp : doc.couplings) {
    attempt(cp.pos, [&] { net.network.add_direct_coupling(ev.eval(*cp.M), ev.eval(*cp.N)); });
  }

  if (!doc.states.empty()) {
    const auto& st = doc.states.front();
    attempt(st.pos, [&] {
      std::vector<Operator> parts;
      Signature covered;
      for (const auto& f : st.factors) {
        parts.push_back(compiler_detail::state_factor(f, ev));
        for (const auto& factor : parts.back().signature()) {
          if (signature_contains(covered, {factor})) {
            throw Failure{f.pos, "space '" + factor.label + "' appears in more than one state factor"};
          }
        }
        covered = unify(covered, parts.back().signature());
      }
      // Remaining spaces start in level 0.
      Signature rest;
      for (const auto& factor : net.full_signature()) {
        if (!signature_contains(covered, {factor})) rest.push_back(factor);
      }
      if (!rest.empty()) parts.push_back(ground_state(rest));
      net.state = embed(product_state(parts), net.full_signature());
    });
  }

  for (const auto& run : doc.runs) {
    for (const auto& entry : run.entries) {
      attempt(entry.pos, [&] {
        const Expr& v = *entry.value;
        if (entry.key == "dt") {
          net.run.dt = ev.real(v);
        } else if (entry.key == "T") {
          net.run.T = ev.real(v);
        } else if (entry.key == "seed") {
          net.run.seed = ev.integer(v);
        } else if (entry.key == "runs") {
          net.run.runs = ev.integer(v, 1);
        } else if (entry.key == "channel") {
          net.run.channel = ev.integer(v, 1);
        } else if (entry.key == "tol") {
          net.run.tol = ev.real(v);
        }
      });
    }
  }

  if (!has_errors(diags)) out.netlist = std::move(net);
  return out;
}

/// Parse followed by compile, with diagnostics from both stages.
inline CompileResult compile_source(std::string_view text, std::shared_ptr<SpaceRegistry> registry = nullptr) {
  ParseResult parsed = parse_netlist(text);
  if (!parsed.ok()) return {std::nullopt, std::move(parsed.diagnostics)};
  CompileResult out = compile(parsed.document, std::move(registry));
  out.diagnostics.insert(out.diagnostics.begin(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  return out;
}

}  // namespace slhnet::netlist
