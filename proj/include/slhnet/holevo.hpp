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

// Single-channel Holevo generators K(t) = H00 t + H01 A(t) + H10 A*(t) + H11 Lambda(t)
// and their (S, L, H) equivalents. Only the Holevo (time-ordered exponential)
// convention is provided; it agrees with the Stratonovich form only when H11 = 0.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "slhnet/slh.hpp"

namespace slhnet {

struct HolevoGenerator {
  Operator h00;
  Operator h01;
  Operator h10;
  Operator h11;
};

namespace holevo_detail {

/// (e^{-ix} - 1) / x, continuous at 0 with value -i.
inline Complex phi1(double x) {
  if (std::abs(x) < 1e-4) {
    return -kI - x / 2.0 + kI * x * x / 6.0 + x * x * x / 24.0;
  }
  return (std::exp(-kI * x) - 1.0) / x;
}

/// (x - sin x) / x^2, continuous at 0 with value 0.
inline double phi2(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return x / 6.0 - x * x2 / 120.0 + x * x2 * x2 / 5040.0;
  }
  return (x - std::sin(x)) / (x * x);
}

template <typename F>
Matrix spectral(const Eigen::SelfAdjointEigenSolver<Matrix>& eig, F&& f) {
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd values(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) values(k) = f(lambda(k));
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace holevo_detail

/// Max deviation from H_ab^dagger = H_ba.
inline double holevo_structure_error(const HolevoGenerator& k) {
  return std::max({hermiticity_error(k.h00), hermiticity_error(k.h11),
                   distance(k.h01, k.h10.adjoint())});
}

/// S = exp(-i H11), L = phi1(H11) H10, H = H00 - H01 phi2(H11) H10.
inline SlhTriple holevo_to_slh(const HolevoGenerator& k, double tol = kDefaultTol) {
  const double err = holevo_structure_error(k);
  if (err > tol) {
    throw InvalidArgument("Holevo generator violates H_ab^dagger = H_ba (error " + std::to_string(err) + ")");
  }
  const Signature sig = unify(unify(k.h00.signature(), k.h01.signature()),
                              unify(k.h10.signature(), k.h11.signature()));
  const Matrix h11 = embed(k.h11, sig).matrix();
  const Matrix h10 = embed(k.h10, sig).matrix();
  const Matrix h01 = embed(k.h01, sig).matrix();
  // Spectral calculus on the exactly Hermitian part.
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (h11 + h11.adjoint()));

  const Matrix s = holevo_detail::spectral(eig, [](double x) { return std::exp(-kI * x); });
  const Matrix phi1 = holevo_detail::spectral(eig, holevo_detail::phi1);
  const Matrix phi2 = holevo_detail::spectral(eig, [](double x) { return Complex(holevo_detail::phi2(x)); });

  Matrix h = embed(k.h00, sig).matrix() - h01 * phi2 * h10;
  h = 0.5 * (h + h.adjoint());
  return SlhTriple(OperatorMatrix(sig, 1, 1, s), OperatorMatrix(sig, 1, 1, phi1 * h10), Operator(sig, h));
}

namespace holevo_detail {

inline void require_self_adjoint(const Operator& f, const char* what) {
  if (!is_self_adjoint(f)) {
    throw InvalidArgument(std::string(what) + ": feedback operator F must be self-adjoint");
  }
}

}  // namespace holevo_detail

/// Photon-counting feedback, K = F Lambda: (e^{-iF}, 0, 0).
inline SlhTriple photon_feedback(const Operator& f) {
  holevo_detail::require_self_adjoint(f, "photon_feedback");
  const Operator zero = Operator::zero(f.signature());
  return holevo_to_slh({zero, zero, zero, f});
}

/// Quadrature (homodyne) feedback, K = F (A + A*): (1, -iF, 0).
inline SlhTriple quadrature_feedback(const Operator& f) {
  holevo_detail::require_self_adjoint(f, "quadrature_feedback");
  const Operator zero = Operator::zero(f.signature());
  return holevo_to_slh({zero, f, f, zero});
}

}  // namespace slhnet
