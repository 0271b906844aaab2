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
#include <string>
#include <utility>
#include <vector>

#include "slhnet/operator.hpp"

namespace slhnet {

/// Rectangular array of operators sharing one signature.
///
/// Stored as a single (rows*d) x (cols*d) block matrix, block (i, j) being
/// entry m_ij. Operator-matrix products are then ordinary matrix products.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;

  OperatorMatrix(Signature signature, std::size_t rows, std::size_t cols)
      : signature_(std::move(signature)), rows_(rows), cols_(cols), dim_(signature_dim(signature_)) {
    blocks_ = Matrix::Zero(idx(rows_ * dim_), idx(cols_ * dim_));
  }

  OperatorMatrix(Signature signature, std::size_t rows, std::size_t cols, Matrix blocks)
      : signature_(std::move(signature)), rows_(rows), cols_(cols), dim_(signature_dim(signature_)),
        blocks_(std::move(blocks)) {
    if (blocks_.rows() != idx(rows_ * dim_) || blocks_.cols() != idx(cols_ * dim_)) {
      throw InvalidArgument("block matrix shape does not match operator matrix shape");
    }
  }

  /// Row-major entries; the signature is the union of the entry signatures.
  static OperatorMatrix from_entries(std::size_t rows, std::size_t cols,
                                     const std::vector<Operator>& entries) {
    if (entries.size() != rows * cols) {
      throw InvalidArgument("expected " + std::to_string(rows * cols) + " entries, got " +
                            std::to_string(entries.size()));
    }
    Signature sig;
    for (const auto& e : entries) sig = unify(sig, e.signature());
    OperatorMatrix m(sig, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, entries[i * cols + j]);
    }
    return m;
  }

  static OperatorMatrix column(const std::vector<Operator>& entries) {
    return from_entries(entries.size(), 1, entries);
  }

  static OperatorMatrix identity(const Signature& sig, std::size_t n) {
    const auto d = signature_dim(sig);
    return OperatorMatrix(sig, n, n, Matrix::Identity(idx(n * d), idx(n * d)));
  }

  /// c-number matrix c, realized as c (x) I on `sig`.
  static OperatorMatrix scalars(const Matrix& c, const Signature& sig = {}) {
    const auto d = idx(signature_dim(sig));
    Matrix blocks = Matrix::Zero(c.rows() * d, c.cols() * d);
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        blocks.block(i * d, j * d, d, d).diagonal().setConstant(c(i, j));
      }
    }
    return OperatorMatrix(sig, static_cast<std::size_t>(c.rows()),
                          static_cast<std::size_t>(c.cols()), std::move(blocks));
  }

  /// diag(x, ..., x) with n copies.
  static OperatorMatrix diagonal(const Operator& x, std::size_t n) {
    OperatorMatrix m(x.signature(), n, n);
    for (std::size_t k = 0; k < n; ++k) m.set(k, k, x);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return dim_; }
 private:
  static Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

  auto block(std::size_t i, std::size_t j) {
    return blocks_.block(idx(i * dim_), idx(j * dim_), idx(dim_), idx(dim_));
  }
  auto block(std::size_t i, std::size_t j) const {
    return blocks_.block(idx(i * dim_), idx(j * dim_), idx(dim_), idx(dim_));
  }

 public:
  const Signature& signature() const { return signature_; }
  const Matrix& blocks() const { return blocks_; }

  Operator at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return Operator(signature_, blocks_.block(idx(i * dim_), idx(j * dim_), idx(dim_), idx(dim_)));
  }

  Operator operator()(std::size_t i, std::size_t j) const { return at(i, j); }

  /// Stores `op` at (i, j); `op` must embed into this matrix's signature.
  void set(std::size_t i, std::size_t j, const Operator& op) {
    check_index(i, j);
    const Operator e = embed(op, signature_);
    blocks_.block(idx(i * dim_), idx(j * dim_), idx(dim_), idx(dim_)) = e.matrix();
  }

  /// 1x1 matrix as a plain operator.
  Operator as_operator() const {
    if (rows_ != 1 || cols_ != 1) throw InvalidArgument("operator matrix is not 1x1");
    return Operator(signature_, blocks_);
  }

  OperatorMatrix embedded(const Signature& target) const {
    if (target.size() == signature_.size() && signature_contains(target, signature_)) return *this;
    OperatorMatrix out(target, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
    }
    return out;
  }

  /// {m_ji*}
  OperatorMatrix dagger() const { return OperatorMatrix(signature_, cols_, rows_, blocks_.adjoint()); }

  /// {m_ij*}
  OperatorMatrix sharp() const {
    OperatorMatrix out(signature_, rows_, cols_);
    for_each_block([&](std::size_t i, std::size_t j) {
      out.block(i, j) = block(i, j).adjoint();
    });
    return out;
  }

  /// {m_ji}
  OperatorMatrix transpose() const {
    OperatorMatrix out(signature_, cols_, rows_);
    for_each_block([&](std::size_t i, std::size_t j) { out.block(j, i) = block(i, j); });
    return out;
  }

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw InvalidArgument("operator matrix shapes do not compose: " + a.shape() + " * " + b.shape());
    }
    auto [x, y] = unified(a, b);
    return OperatorMatrix(x.signature_, x.rows_, y.cols_, x.blocks_ * y.blocks_);
  }

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    a.require_same_shape(b);
    auto [x, y] = unified(a, b);
    return OperatorMatrix(x.signature_, x.rows_, x.cols_, x.blocks_ + y.blocks_);
  }

  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    a.require_same_shape(b);
    auto [x, y] = unified(a, b);
    return OperatorMatrix(x.signature_, x.rows_, x.cols_, x.blocks_ - y.blocks_);
  }

  friend OperatorMatrix operator*(Complex z, const OperatorMatrix& a) {
    return OperatorMatrix(a.signature_, a.rows_, a.cols_, z * a.blocks_);
  }

  /// Entrywise operator product x * m_ij (x applied on the left).
  friend OperatorMatrix operator*(const Operator& x, const OperatorMatrix& m) {
    return OperatorMatrix::diagonal(x, m.rows_) * m;
  }

  /// Entrywise operator product m_ij * x.
  friend OperatorMatrix operator*(const OperatorMatrix& m, const Operator& x) {
    return m * OperatorMatrix::diagonal(x, m.cols_);
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:


  template <typename F>
  void for_each_block(F&& f) const {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) f(i, j);
    }
  }

  void check_index(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
      throw InvalidArgument("index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of range for " + shape() + " operator matrix");
    }
  }

  void require_same_shape(const OperatorMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw InvalidArgument("operator matrix shapes differ: " + shape() + " vs " + b.shape());
    }
  }

  friend std::pair<OperatorMatrix, OperatorMatrix> unified(const OperatorMatrix& a,
                                                           const OperatorMatrix& b) {
    if (a.signature_.size() == b.signature_.size() && signature_contains(a.signature_, b.signature_)) {
      return {a, b};
    }
    const Signature sig = unify(a.signature_, b.signature_);
    return {a.embedded(sig), b.embedded(sig)};
  }

  Signature signature_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t dim_ = 1;
  Matrix blocks_;
};

/// Column vector of operators.
using OperatorVector = OperatorMatrix;

/// Max entry modulus of a - b (shapes must agree).
inline double distance(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("operator matrix shapes differ: " + a.shape() + " vs " + b.shape());
  }
  auto [x, y] = unified(a, b);
  return max_abs(x.blocks() - y.blocks());
}

/// max(||M^dagger M - I||, ||M M^dagger - I||) in max-entry norm.
inline double unitarity_error(const OperatorMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("unitarity check needs a square operator matrix, got " + m.shape());
  }
  const auto n = m.blocks().rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix& b = m.blocks();
  return std::max(max_abs(b.adjoint() * b - id), max_abs(b * b.adjoint() - id));
}

inline bool check_unitary(const OperatorMatrix& m, double tol = kDefaultTol) {
  return unitarity_error(m) <= tol;
}

/// blockdiag(a, b) on the common signature.
inline OperatorMatrix block_diagonal(const OperatorMatrix& a, const OperatorMatrix& b) {
  auto [x, y] = unified(a, b);
  OperatorMatrix out(x.signature(), x.rows() + y.rows(), x.cols() + y.cols());
  Matrix blocks = out.blocks();
  blocks.topLeftCorner(x.blocks().rows(), x.blocks().cols()) = x.blocks();
  blocks.bottomRightCorner(y.blocks().rows(), y.blocks().cols()) = y.blocks();
  return OperatorMatrix(x.signature(), out.rows(), out.cols(), std::move(blocks));
}

/// Vertical stack [a; b].
inline OperatorMatrix stack(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.cols() != b.cols()) throw InvalidArgument("cannot stack " + a.shape() + " over " + b.shape());
  auto [x, y] = unified(a, b);
  Matrix blocks(x.blocks().rows() + y.blocks().rows(), x.blocks().cols());
  blocks.topRows(x.blocks().rows()) = x.blocks();
  blocks.bottomRows(y.blocks().rows()) = y.blocks();
  return OperatorMatrix(x.signature(), x.rows() + y.rows(), x.cols(), std::move(blocks));
}

}  // namespace slhnet
