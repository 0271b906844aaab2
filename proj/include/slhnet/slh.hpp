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

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "slhnet/operator_matrix.hpp"

namespace slhnet {

/// Result of checking the (S, L, H) invariants.
struct InvariantReport {
  double unitarity_error = 0.0;
  double hermiticity_error = 0.0;
  bool ok(double tol = kDefaultTol) const {
    return unitarity_error <= tol && hermiticity_error <= tol;
  }
};

/// Open system parameters (S, L, H) with n field channels.
///
/// S is n x n, L is n x 1 and H a single operator, all on one signature.
/// n = 0 is the channel-free triple (_, _, H). The constructor checks shapes
/// only; `checked` additionally enforces S unitary and H self-adjoint.
class SlhTriple {
 public:
  SlhTriple() : S_(Signature{}, 0, 0), L_(Signature{}, 0, 1) {}

  SlhTriple(OperatorMatrix S, OperatorMatrix L, Operator H) {
    if (S.rows() != S.cols()) throw InvalidArgument("scattering matrix must be square, got " + S.shape());
    if (L.cols() != 1 || L.rows() != S.rows()) {
      throw InvalidArgument("coupling vector must be " + std::to_string(S.rows()) + "x1, got " +
                            L.shape());
    }
    const Signature sig = unify(unify(S.signature(), L.signature()), H.signature());
    S_ = S.embedded(sig);
    L_ = L.embedded(sig);
    H_ = embed(H, sig);
  }

  static SlhTriple checked(OperatorMatrix S, OperatorMatrix L, Operator H, double tol = kDefaultTol) {
    SlhTriple g(std::move(S), std::move(L), std::move(H));
    const auto report = g.check();
    if (report.unitarity_error > tol) {
      throw InvalidArgument("scattering matrix is not unitary (error " +
                            std::to_string(report.unitarity_error) + ")");
    }
    if (report.hermiticity_error > tol) {
      throw InvalidArgument("Hamiltonian is not self-adjoint (error " +
                            std::to_string(report.hermiticity_error) + ")");
    }
    return g;
  }

  /// Convenience form with per-entry operators.
  static SlhTriple from_entries(const std::vector<std::vector<Operator>>& S,
                                const std::vector<Operator>& L, const Operator& H) {
    std::vector<Operator> flat;
    for (const auto& row : S) {
      if (row.size() != S.size()) throw InvalidArgument("scattering matrix must be square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return SlhTriple(OperatorMatrix::from_entries(S.size(), S.size(), flat),
                     OperatorMatrix::from_entries(L.size(), 1, L), H);
  }

  /// (_, _, H)
  static SlhTriple hamiltonian(const Operator& H) {
    return SlhTriple(OperatorMatrix(H.signature(), 0, 0), OperatorMatrix(H.signature(), 0, 1), H);
  }

  /// (I_n, 0, 0)
  static SlhTriple trivial(std::size_t n, const Signature& sig = {}) {
    return SlhTriple(OperatorMatrix::identity(sig, n), OperatorMatrix(sig, n, 1), Operator::zero(sig));
  }

  std::size_t channels() const { return S_.rows(); }
  const OperatorMatrix& S() const { return S_; }
  const OperatorMatrix& L() const { return L_; }
  const Operator& H() const { return H_; }
  const Signature& signature() const { return H_.signature(); }

  Operator L(std::size_t j) const { return L_.at(j, 0); }

  SlhTriple embedded(const Signature& target) const {
    return SlhTriple(S_.embedded(target), L_.embedded(target), embed(H_, target));
  }

  InvariantReport check() const {
    return {channels() ? unitarity_error(S_) : 0.0, hermiticity_error(H_)};
  }

 private:
  OperatorMatrix S_;
  OperatorMatrix L_;
  Operator H_;
};

/// Both triples embedded into their common signature.
inline std::pair<SlhTriple, SlhTriple> unified(const SlhTriple& a, const SlhTriple& b) {
  const Signature sig = unify(a.signature(), b.signature());
  return {a.embedded(sig), b.embedded(sig)};
}

/// Max entry distance over S, L and H; channel counts must agree.
inline double distance(const SlhTriple& a, const SlhTriple& b) {
  if (a.channels() != b.channels()) {
    throw ChannelMismatch("cannot compare triples with " + std::to_string(a.channels()) + " and " +
                          std::to_string(b.channels()) + " channels");
  }
  auto [x, y] = unified(a, b);
  return std::max({distance(x.S(), y.S()), distance(x.L(), y.L()), distance(x.H(), y.H())});
}

/// G1 [+] G2 = (diag(S1, S2), [L1; L2], H1 + H2).
inline SlhTriple concatenate(const SlhTriple& g1, const SlhTriple& g2) {
  auto [a, b] = unified(g1, g2);
  return SlhTriple(block_diagonal(a.S(), b.S()), stack(a.L(), b.L()), a.H() + b.H());
}

namespace detail {

inline void require_same_channels(const SlhTriple& a, const SlhTriple& b, const char* what) {
  if (a.channels() != b.channels()) {
    throw ChannelMismatch(std::string(what) + ": channel counts differ (" +
                          std::to_string(a.channels()) + " vs " + std::to_string(b.channels()) +
                          "); pad or permute explicitly");
  }
}

}  // namespace detail

/// Series product G2 <| G1: the output of G1 feeds the input of G2.
///
/// (S2 S1, L2 + S2 L1, H1 + H2 + Im{L2^dagger S2 L1})
inline SlhTriple series(const SlhTriple& g2_in, const SlhTriple& g1_in) {
  detail::require_same_channels(g2_in, g1_in, "series product");
  auto [g2, g1] = unified(g2_in, g1_in);
  const OperatorMatrix s2_l1 = g2.S() * g1.L();
  const Operator cross = (g2.L().dagger() * s2_l1).as_operator();
  return SlhTriple(g2.S() * g1.S(), g2.L() + s2_l1, g1.H() + g2.H() + im_part(cross));
}

/// Folds a chain given upstream first: chain[k] <| ... <| chain[0].
inline SlhTriple series_chain(const std::vector<SlhTriple>& chain) {
  if (chain.empty()) throw InvalidArgument("empty series chain");
  SlhTriple acc = chain.front();
  for (std::size_t k = 1; k < chain.size(); ++k) acc = series(chain[k], acc);
  return acc;
}

/// G2' such that G2 <| G1 = G1 <| G2'.
inline SlhTriple exchange_right(const SlhTriple& g1_in, const SlhTriple& g2_in) {
  detail::require_same_channels(g1_in, g2_in, "exchange");
  auto [g1, g2] = unified(g1_in, g2_in);
  const auto n = g1.channels();
  const OperatorMatrix id = OperatorMatrix::identity(g1.signature(), n);
  const OperatorMatrix s1_dag = g1.S().dagger();
  const OperatorMatrix s2p = s1_dag * g2.S() * g1.S();
  const OperatorMatrix l2p = s1_dag * (g2.S() - id) * g1.L() + s1_dag * g2.L();
  const Operator x = (g2.L().dagger() * (g2.S() + id) * g1.L()).as_operator() -
                     (g1.L().dagger() * g2.S() * g1.L()).as_operator();
  return SlhTriple(s2p, l2p, g2.H() + im_part(x));
}

/// Splits G into (S, 0, 0) <| (I, S^dagger L, H).
inline std::pair<SlhTriple, SlhTriple> move_scattering(const SlhTriple& g) {
  const auto& sig = g.signature();
  const auto n = g.channels();
  SlhTriple head(g.S(), OperatorMatrix(sig, n, 1), Operator::zero(sig));
  SlhTriple tail(OperatorMatrix::identity(sig, n), g.S().dagger() * g.L(), g.H());
  return {std::move(head), std::move(tail)};
}

/// G [+] (I_k, 0, 0).
inline SlhTriple pad(const SlhTriple& g, std::size_t k) {
  if (k == 0) return g;
  return concatenate(g, SlhTriple::trivial(k, g.signature()));
}

/// 0/1 matrix with P(i, perm[i]) = 1: output channel i carries input channel perm[i].
inline Matrix permutation_matrix(const std::vector<std::size_t>& perm) {
  const auto n = perm.size();
  std::vector<bool> seen(n, false);
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || seen[perm[i]]) throw InvalidArgument("invalid channel permutation");
    seen[perm[i]] = true;
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i])) = 1.0;
  }
  return p;
}

/// (P, 0, 0) <| G: rows of S and L reordered, H unchanged.
inline SlhTriple permute_channels(const SlhTriple& g, const std::vector<std::size_t>& perm) {
  if (perm.size() != g.channels()) {
    throw InvalidArgument("permutation has " + std::to_string(perm.size()) + " entries for " +
                          std::to_string(g.channels()) + " channels");
  }
  const OperatorMatrix p = OperatorMatrix::scalars(permutation_matrix(perm), g.signature());
  return SlhTriple(p * g.S(), p * g.L(), g.H());
}

}  // namespace slhnet
