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
#include <complex>

#include "slhnet/slh.hpp"

namespace slhnet {

/// Damped cavity mode (1, sqrt(gamma) a, detuning a^dagger a).
inline SlhTriple cavity(const SpaceFactor& space, double gamma, double detuning) {
  if (gamma < 0.0) throw InvalidArgument("cavity decay rate must be non-negative");
  const Operator a = annihilation(space);
  return SlhTriple(OperatorMatrix::identity({space}, 1), OperatorMatrix::column({std::sqrt(gamma) * a}),
                   detuning * (a.adjoint() * a));
}

/// Static beamsplitter ([[beta, -alpha], [alpha, beta]], 0, 0).
///
/// Requires |alpha|^2 + |beta|^2 = 1 and conj(alpha) beta = alpha conj(beta).
inline SlhTriple beamsplitter(Complex alpha, Complex beta, double tol = kDefaultTol) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol ||
      std::abs(std::conj(alpha) * beta - alpha * std::conj(beta)) > tol) {
    throw InvalidArgument("beamsplitter coefficients do not form a unitary matrix");
  }
  Matrix s(2, 2);
  s << beta, -alpha, alpha, beta;
  return SlhTriple(OperatorMatrix::scalars(s), OperatorMatrix(Signature{}, 2, 1), Operator::scalar(0.0));
}

/// n-channel pass-through (I_n, 0, 0).
inline SlhTriple passthrough(std::size_t n) { return SlhTriple::trivial(n); }

/// Single-channel phase shifter (e^{i theta}, 0, 0).
inline SlhTriple phase_shift(double theta) {
  return SlhTriple(OperatorMatrix::scalars(Matrix::Constant(1, 1, std::exp(kI * theta))),
                   OperatorMatrix(Signature{}, 1, 1), Operator::scalar(0.0));
}

}  // namespace slhnet
