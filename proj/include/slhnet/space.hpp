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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slhnet/errors.hpp"

namespace slhnet {

enum class SpaceKind { fock, generic };

inline std::string_view to_string(SpaceKind kind) {
  return kind == SpaceKind::fock ? "fock" : "generic";
}

/// One tensor factor of the initial Hilbert space.
///
/// `order` is the registration index inside the owning registry; all
/// embeddings lay factors out in increasing `order`. For a fock factor,
/// `dim` is the cutoff and the basis is |0>, ..., |cutoff-1>.
struct SpaceFactor {
  std::string label;
  std::size_t dim = 1;
  SpaceKind kind = SpaceKind::generic;
  std::size_t order = 0;
  std::uint64_t registry = 0;

  friend bool operator==(const SpaceFactor& a, const SpaceFactor& b) {
    return a.registry == b.registry && a.order == b.order && a.label == b.label &&
           a.dim == b.dim && a.kind == b.kind;
  }
};

/// Ordered list of factors; always sorted by `order`, no repeats.
using Signature = std::vector<SpaceFactor>;

inline std::size_t signature_dim(const Signature& sig) {
  std::size_t d = 1;
  for (const auto& f : sig) d *= f.dim;
  return d;
}

inline std::string signature_string(const Signature& sig) {
  std::string out = "{";
  for (std::size_t k = 0; k < sig.size(); ++k) {
    if (k) out += ",";
    out += sig[k].label;
  }
  return out + "}";
}

/// True when every factor of `sub` appears in `super`.
inline bool signature_contains(const Signature& super, const Signature& sub) {
  std::size_t j = 0;
  for (const auto& f : sub) {
    while (j < super.size() && super[j].order < f.order) ++j;
    if (j == super.size() || !(super[j] == f)) return false;
  }
  return true;
}

/// Smallest signature containing both arguments.
inline Signature unify(const Signature& a, const Signature& b) {
  if (!a.empty() && !b.empty() && a.front().registry != b.front().registry) {
    throw SignatureError("operators come from different space registries: " +
                         signature_string(a) + " vs " + signature_string(b));
  }
  Signature out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].order < b[j].order)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].order < a[i].order) {
      out.push_back(b[j++]);
    } else {
      if (!(a[i] == b[j])) {
        throw SignatureError("conflicting factor definitions for '" + a[i].label + "'");
      }
      out.push_back(a[i++]);
      ++j;
    }
  }
  return out;
}

/// Append-only registry of tensor factors.
///
/// Registration is serialized by a mutex; the factors handed out are values
/// and stay valid regardless of later registrations.
class SpaceRegistry {
 public:
  SpaceRegistry() : id_(next_id()) {}
  SpaceRegistry(const SpaceRegistry&) = delete;
  SpaceRegistry& operator=(const SpaceRegistry&) = delete;

  SpaceFactor register_space(std::string label, SpaceKind kind, std::size_t dim) {
    if (label.empty()) throw InvalidArgument("space label must be non-empty");
    if (dim < 1) throw InvalidArgument("space '" + label + "' must have dim >= 1");
    std::lock_guard lock(mutex_);
    for (const auto& f : factors_) {
      if (f.label == label) throw InvalidArgument("duplicate space label '" + label + "'");
    }
    factors_.push_back(SpaceFactor{std::move(label), dim, kind, factors_.size(), id_});
    return factors_.back();
  }

  std::optional<SpaceFactor> find(std::string_view label) const {
    std::lock_guard lock(mutex_);
    for (const auto& f : factors_) {
      if (f.label == label) return f;
    }
    return std::nullopt;
  }

  std::vector<SpaceFactor> factors() const {
    std::lock_guard lock(mutex_);
    return factors_;
  }

  std::uint64_t id() const { return id_; }

  /// Process-wide registry for callers that do not manage their own.
  static SpaceRegistry& global() {
    static SpaceRegistry instance;
    return instance;
  }

 private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
  }

  mutable std::mutex mutex_;
  std::uint64_t id_;
  std::vector<SpaceFactor> factors_;
};

}  // namespace slhnet
