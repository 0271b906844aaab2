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

// Coefficients of the unitary QSDE dV = (G00 dt + G01 dA + G10 dA^dagger + tr[G11 dLambda]) V.
// Composing two generators with the Ito table gives an evaluation route for
// the series product that never touches the closed-form (S, L, H) formula.

#include <string>

#include "slhnet/slh.hpp"

namespace slhnet {

struct ItoCoefficients {
  Operator g00;        // -iH - L^dagger L / 2
  OperatorMatrix g10;  // L, n x 1
  OperatorMatrix g01;  // -L^dagger S, 1 x n
  OperatorMatrix g11;  // S - I, n x n

  std::size_t channels() const { return g11.rows(); }
};

inline ItoCoefficients ito_coefficients(const SlhTriple& g) {
  const auto& sig = g.signature();
  const auto n = g.channels();
  const OperatorMatrix l_dag = g.L().dagger();
  const Operator l_dag_l = (l_dag * g.L()).as_operator();
  return ItoCoefficients{
      Operator(sig, -kI * g.H().matrix() - 0.5 * l_dag_l.matrix()),
      g.L(),
      Complex(-1.0) * (l_dag * g.S()),
      g.S() - OperatorMatrix::identity(sig, n),
  };
}

/// Inverse block map; rejects blocks that do not come from a valid triple.
inline SlhTriple coefficients_to_slh(const ItoCoefficients& c, double tol = kDefaultTol) {
  const auto n = c.channels();
  if (c.g11.cols() != n || c.g10.rows() != n || c.g10.cols() != 1 || c.g01.rows() != 1 ||
      c.g01.cols() != n) {
    throw InvalidArgument("inconsistent Ito coefficient block shapes");
  }
  const Signature sig = unify(unify(unify(c.g00.signature(), c.g10.signature()), c.g01.signature()),
                              c.g11.signature());
  const OperatorMatrix S = c.g11.embedded(sig) + OperatorMatrix::identity(sig, n);
  const OperatorMatrix L = c.g10.embedded(sig);
  const Operator l_dag_l = (L.dagger() * L).as_operator();
  const Operator H(sig, kI * (embed(c.g00, sig).matrix() + 0.5 * l_dag_l.matrix()));

  if (n > 0 && unitarity_error(S) > tol) {
    throw InvalidArgument("G11 + I is not unitary (error " + std::to_string(unitarity_error(S)) + ")");
  }
  if (hermiticity_error(H) > tol) {
    throw InvalidArgument("recovered Hamiltonian is not self-adjoint (error " +
                          std::to_string(hermiticity_error(H)) + ")");
  }
  const double g01_err = distance(c.g01, Complex(-1.0) * (L.dagger() * S));
  if (g01_err > tol) {
    throw InvalidArgument("G01 is inconsistent with -L^dagger S (error " + std::to_string(g01_err) + ")");
  }
  return SlhTriple(S, L, H);
}

/// Ito product rule: G^{ab} = G2^{ab} + G1^{ab} + sum_k G2^{ak} G1^{kb}.
inline ItoCoefficients ito_compose(const ItoCoefficients& c2, const ItoCoefficients& c1) {
  if (c2.channels() != c1.channels()) {
    throw ChannelMismatch("Ito composition: channel counts differ (" + std::to_string(c2.channels()) +
                          " vs " + std::to_string(c1.channels()) + ")");
  }
  return ItoCoefficients{
      c2.g00 + c1.g00 + (c2.g01 * c1.g10).as_operator(),
      c2.g10 + c1.g10 + c2.g11 * c1.g10,
      c2.g01 + c1.g01 + c2.g01 * c1.g11,
      c2.g11 + c1.g11 + c2.g11 * c1.g11,
  };
}

}  // namespace slhnet
