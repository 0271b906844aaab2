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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slhnet/slh.hpp"

namespace slhnet {

struct NamedComponent {
  std::string name;
  SlhTriple triple;
};

/// Components plus field connections and direct couplings of a reducible network.
///
/// A connection (src, dst) feeds every output channel of src into the matching
/// input of dst. Each component has at most one outgoing and one incoming
/// connection and the connection graph stays acyclic.
class NetworkSpec {
 public:
  void add_component(std::string name, SlhTriple triple) {
    if (name.empty()) throw NetworkError("component name must be non-empty");
    if (index_of(name)) throw NetworkError("duplicate component name '" + name + "'");
    components_.push_back({std::move(name), std::move(triple)});
    downstream_.emplace_back();
    upstream_.emplace_back();
  }

  void add_connection(const std::string& src, const std::string& dst) {
    const auto s = require(src);
    const auto d = require(dst);
    if (s == d) {
      throw NetworkError("connection " + src + " -> " + dst +
                         " closes a loop; networks with algebraic loops are not reducible");
    }
    const auto& gs = components_[s].triple;
    const auto& gd = components_[d].triple;
    if (gs.channels() != gd.channels()) {
      throw NetworkError("connection " + src + " -> " + dst + ": channel counts differ (" +
                         std::to_string(gs.channels()) + " vs " + std::to_string(gd.channels()) + ")");
    }
    if (downstream_[s]) {
      throw NetworkError("output of '" + src + "' is already connected to '" +
                         components_[*downstream_[s]].name + "'");
    }
    if (upstream_[d]) {
      throw NetworkError("input of '" + dst + "' is already fed by '" +
                         components_[*upstream_[d]].name + "'");
    }
    for (auto k = std::optional<std::size_t>(d); k; k = downstream_[*k]) {
      if (*k == s) {
        throw NetworkError("connection " + src + " -> " + dst +
                           " closes a loop; networks with algebraic loops are not reducible");
      }
    }
    downstream_[s] = d;
    upstream_[d] = s;
    connections_.emplace_back(s, d);
  }

  void add_direct_coupling(Operator m, Operator n) { couplings_.emplace_back(std::move(m), std::move(n)); }

  const std::vector<NamedComponent>& components() const { return components_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& connections() const { return connections_; }
  const std::vector<std::pair<Operator, Operator>>& couplings() const { return couplings_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t k = 0; k < components_.size(); ++k) {
      if (components_[k].name == name) return k;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> downstream(std::size_t k) const { return downstream_.at(k); }
  std::optional<std::size_t> upstream(std::size_t k) const { return upstream_.at(k); }

  /// K = i sum_k (N_k^dagger M_k - M_k^dagger N_k).
  Operator direct_hamiltonian() const {
    Operator k = Operator::scalar(0.0);
    for (const auto& [m, n] : couplings_) {
      const Operator x = n.adjoint() * m - m.adjoint() * n;
      k = k + kI * x;
    }
    return k;
  }

 private:
  std::size_t require(const std::string& name) const {
    auto k = index_of(name);
    if (!k) throw NetworkError("unknown component '" + name + "'");
    return *k;
  }

  std::vector<NamedComponent> components_;
  std::vector<std::optional<std::size_t>> downstream_;
  std::vector<std::optional<std::size_t>> upstream_;
  std::vector<std::pair<std::size_t, std::size_t>> connections_;
  std::vector<std::pair<Operator, Operator>> couplings_;
};

/// One concatenated block of the reduced network.
struct NetworkBlock {
  std::vector<std::string> members;  // upstream first; one entry for an unconnected component
  std::size_t first_channel = 0;
  std::size_t channels = 0;
};

/// How the reduced triple was assembled. Concatenation order: unconnected
/// components in registration order, then maximal chains ordered by the
/// registration index of their most upstream member.
struct ChainReport {
  std::vector<std::string> unconnected;
  std::vector<std::vector<std::string>> chains;
  std::vector<NetworkBlock> blocks;
  std::size_t direct_couplings = 0;
};

struct ReducedNetwork {
  SlhTriple triple;
  ChainReport chain_report;
};

inline ReducedNetwork reduce(const NetworkSpec& spec) {
  const auto& comps = spec.components();
  ChainReport report;
  report.direct_couplings = spec.couplings().size();

  std::vector<std::pair<std::vector<std::string>, SlhTriple>> parts;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (!spec.upstream(k) && !spec.downstream(k)) {
      report.unconnected.push_back(comps[k].name);
      parts.push_back({{comps[k].name}, comps[k].triple});
    }
  }
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (spec.upstream(k) || !spec.downstream(k)) continue;  // chain heads only
    std::vector<std::string> names;
    std::vector<SlhTriple> chain;
    for (auto j = std::optional<std::size_t>(k); j; j = spec.downstream(*j)) {
      names.push_back(comps[*j].name);
      chain.push_back(comps[*j].triple);
    }
    report.chains.push_back(names);
    parts.push_back({std::move(names), series_chain(chain)});
  }

  SlhTriple total = SlhTriple::hamiltonian(spec.direct_hamiltonian());
  SlhTriple acc;
  std::size_t offset = 0;
  for (auto& [names, triple] : parts) {
    report.blocks.push_back({names, offset, triple.channels()});
    offset += triple.channels();
    acc = concatenate(acc, triple);
  }
  return {concatenate(acc, total), std::move(report)};
}

}  // namespace slhnet
