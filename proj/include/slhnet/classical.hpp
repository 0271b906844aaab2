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

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

#include "slhnet/dynamics.hpp"
#include "slhnet/slh.hpp"

namespace slhnet {

// ---------------------------------------------------------------------------
// Linear time-invariant systems  dx = Ax dt + Bu dt,  y = Cx + Du

struct ClassicalLinearSystem {
  Matrix A;
  Matrix B;
  Matrix C;
  Matrix D;

  ClassicalLinearSystem() = default;
  ClassicalLinearSystem(Matrix a, Matrix b, Matrix c, Matrix d)
      : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
    validate();
  }

  /// Static gain u -> Ku with no state.
  static ClassicalLinearSystem gain(const Matrix& k) {
    return ClassicalLinearSystem(Matrix(0, 0), Matrix(0, k.cols()), Matrix(k.rows(), 0), k);
  }

  Eigen::Index states() const { return A.rows(); }
  Eigen::Index inputs() const { return D.cols(); }
  Eigen::Index outputs() const { return D.rows(); }

  /// C (sI - A)^{-1} B + D.
  Matrix transfer(Complex s) const {
    if (states() == 0) return D;
    const Matrix resolvent = s * Matrix::Identity(states(), states()) - A;
    return C * resolvent.partialPivLu().solve(B) + D;
  }

 private:
  void validate() const {
    if (A.rows() != A.cols() || B.rows() != A.rows() || C.cols() != A.rows() || D.rows() != C.rows() ||
        D.cols() != B.cols()) {
      throw InvalidArgument("inconsistent state-space shapes: A " + std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()) + ", B " + std::to_string(B.rows()) + "x" +
                            std::to_string(B.cols()) + ", C " + std::to_string(C.rows()) + "x" +
                            std::to_string(C.cols()) + ", D " + std::to_string(D.rows()) + "x" +
                            std::to_string(D.cols()));
    }
  }
};

namespace classical_detail {

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace classical_detail

/// Side-by-side systems: every matrix block-diagonal.
inline ClassicalLinearSystem c_concatenate(const ClassicalLinearSystem& g1, const ClassicalLinearSystem& g2) {
  using classical_detail::block_diag;
  return {block_diag(g1.A, g2.A), block_diag(g1.B, g2.B), block_diag(g1.C, g2.C), block_diag(g1.D, g2.D)};
}

/// Output of g1 feeds the input of g2.
inline ClassicalLinearSystem c_series(const ClassicalLinearSystem& g2, const ClassicalLinearSystem& g1) {
  if (g2.inputs() != g1.outputs()) {
    throw ChannelMismatch("classical series: input dimension " + std::to_string(g2.inputs()) +
                          " differs from upstream output dimension " + std::to_string(g1.outputs()));
  }
  const auto n1 = g1.states();
  const auto n2 = g2.states();
  Matrix a = Matrix::Zero(n1 + n2, n1 + n2);
  a.topLeftCorner(n1, n1) = g1.A;
  a.bottomLeftCorner(n2, n1) = g2.B * g1.C;
  a.bottomRightCorner(n2, n2) = g2.A;
  Matrix b(n1 + n2, g1.inputs());
  b.topRows(n1) = g1.B;
  b.bottomRows(n2) = g2.B * g1.D;
  Matrix c(g2.outputs(), n1 + n2);
  c.leftCols(n1) = g2.D * g1.C;
  c.rightCols(n2) = g2.C;
  return {std::move(a), std::move(b), std::move(c), g2.D * g1.D};
}

// ---------------------------------------------------------------------------
// Grid embedding of a scalar diffusion  dx = f~(x) dt + g(x) dw,  dy = h(x) dt + dv

using ScalarFunction = std::function<double(double)>;

/// Uniform lattice of `points` nodes covering [min, max].
struct Grid {
  double min = -1.0;
  double max = 1.0;
  std::size_t points = 3;

  double spacing() const { return (max - min) / static_cast<double>(points - 1); }

  Eigen::VectorXd nodes() const {
    return Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(points), min, max);
  }

  Eigen::VectorXd sample(const ScalarFunction& f) const {
    Eigen::VectorXd x = nodes();
    return x.unaryExpr([&](double v) { return f(v); });
  }

  void validate() const {
    if (points < 3) throw InvalidArgument("grid needs at least 3 points, got " + std::to_string(points));
    if (!(max > min) || !std::isfinite(min) || !std::isfinite(max)) {
      throw InvalidArgument("grid bounds must be finite with min < max");
    }
  }
};

/// Central first difference; second-order one-sided stencils in the first and last rows.
inline Eigen::MatrixXd difference_matrix(const Grid& grid) {
  grid.validate();
  const auto n = static_cast<Eigen::Index>(grid.points);
  const double inv = 1.0 / (2.0 * grid.spacing());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k + 1 < n; ++k) {
    d(k, k - 1) = -inv;
    d(k, k + 1) = inv;
  }
  d(0, 0) = -3.0 * inv;
  d(0, 1) = 4.0 * inv;
  d(0, 2) = -inv;
  d(n - 1, n - 1) = 3.0 * inv;
  d(n - 1, n - 2) = -4.0 * inv;
  d(n - 1, n - 3) = inv;
  return d;
}

/// Multiplication operator phi(q) on a grid space.
inline Operator grid_function(const SpaceFactor& space, const Eigen::VectorXd& values) {
  if (values.size() != static_cast<Eigen::Index>(space.dim)) {
    throw InvalidArgument("grid function length " + std::to_string(values.size()) + " does not match space '" +
                          space.label + "' of dimension " + std::to_string(space.dim));
  }
  return Operator({space}, values.cast<Complex>().asDiagonal());
}

struct GridEmbedding {
  Grid grid;
  SpaceFactor space;
  Operator q;                    // diag(x)
  Operator p;                    // -i D
  Eigen::VectorXd drift;         // Stratonovich drift f = f~ - g g' / 2
  Eigen::VectorXd diffusion;     // g
  Eigen::VectorXd observation;   // h
  SlhTriple process;             // (1, L_c1, H_c)
  SlhTriple measurement;         // (1, L_c2, 0)

  /// Process channel first, measurement channel second.
  SlhTriple triple() const { return concatenate(process, measurement); }

  /// Boundary rows make H_c slightly non-Hermitian; this reports by how much.
  double hamiltonian_hermiticity_error() const { return hermiticity_error(process.H()); }
};

/// L_c1 = -(gD + Dg)/2, H_c = -i(fD + Df)/2, L_c2 = h/2, evaluated on the grid.
inline GridEmbedding embed_sde_grid(const SpaceFactor& space, const Grid& grid, const ScalarFunction& ftilde,
                                    const ScalarFunction& g, const ScalarFunction& h) {
  grid.validate();
  if (space.dim != grid.points) {
    throw InvalidArgument("space '" + space.label + "' has dimension " + std::to_string(space.dim) +
                          " but the grid has " + std::to_string(grid.points) + " points");
  }
  const Eigen::MatrixXd d = difference_matrix(grid);
  const Eigen::VectorXd gv = grid.sample(g);
  const Eigen::VectorXd hv = grid.sample(h);
  const Eigen::VectorXd fv = grid.sample(ftilde) - 0.5 * gv.cwiseProduct(d * gv);

  const Eigen::MatrixXd gm = gv.asDiagonal();
  const Eigen::MatrixXd fm = fv.asDiagonal();
  const Matrix l_c1 = (-0.5 * (gm * d + d * gm)).cast<Complex>();
  const Matrix h_c = (-0.5 * kI) * (fm * d + d * fm).cast<Complex>();
  const Matrix l_c2 = (0.5 * hv).cast<Complex>().asDiagonal();

  const Signature sig{space};
  const OperatorMatrix one = OperatorMatrix::identity(sig, 1);
  return GridEmbedding{
      grid,
      space,
      grid_function(space, grid.nodes()),
      Operator(sig, -kI * d.cast<Complex>()),
      fv,
      gv,
      hv,
      SlhTriple(one, OperatorMatrix(sig, 1, 1, l_c1), Operator(sig, h_c)),
      SlhTriple(one, OperatorMatrix(sig, 1, 1, l_c2), Operator::zero(sig)),
  };
}

/// Finite-difference classical generator f phi' + g (g phi')' / 2 with Stratonovich drift f.
inline Eigen::VectorXd classical_generator(const Grid& grid, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                                           const Eigen::VectorXd& phi) {
  const Eigen::MatrixXd d = difference_matrix(grid);
  const Eigen::VectorXd dphi = d * phi;
  return f.cwiseProduct(dphi) + 0.5 * g.cwiseProduct(d * g.cwiseProduct(dphi));
}

/// Heisenberg generator -i[phi, H] + sum_j L_j(phi) of the embedded system applied to phi(q),
/// read back as a grid function by acting on the constant vector.
inline Eigen::VectorXd embedded_generator(const GridEmbedding& e, const Eigen::VectorXd& phi) {
  const SlhTriple g = e.triple();
  const Operator x = grid_function(e.space, phi);
  const Operator gen = lindblad_heisenberg(g, x) - kI * commutator(x, g.H());
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(e.grid.points));
  return (gen.matrix() * ones).real();
}

}  // namespace slhnet
