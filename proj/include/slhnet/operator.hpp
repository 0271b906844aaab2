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
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "slhnet/errors.hpp"
#include "slhnet/space.hpp"

namespace slhnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr Complex kI{0.0, 1.0};

/// Largest entry modulus; the norm used by every tolerance check.
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Dense operator on the tensor product of the factors in its signature.
///
/// An empty signature denotes a c-number (1x1 matrix); c-numbers embed into
/// any signature as multiples of the identity.
class Operator {
 public:
  Operator() : data_(Matrix::Zero(1, 1)) {}

  Operator(Signature signature, Matrix data)
      : signature_(std::move(signature)), data_(std::move(data)) {
    const auto d = static_cast<Eigen::Index>(signature_dim(signature_));
    if (data_.rows() != data_.cols()) throw InvalidArgument("operator matrix must be square");
    if (data_.rows() != d) {
      throw InvalidArgument("operator matrix size does not match signature " +
                            signature_string(signature_));
    }
  }

  static Operator scalar(Complex z) { return Operator({}, Matrix::Constant(1, 1, z)); }

  static Operator identity(const Signature& sig) {
    const auto d = static_cast<Eigen::Index>(signature_dim(sig));
    return Operator(sig, Matrix::Identity(d, d));
  }

  static Operator zero(const Signature& sig) {
    const auto d = static_cast<Eigen::Index>(signature_dim(sig));
    return Operator(sig, Matrix::Zero(d, d));
  }

  const Signature& signature() const { return signature_; }
  const Matrix& matrix() const { return data_; }
  std::size_t dim() const { return static_cast<std::size_t>(data_.rows()); }
  bool is_scalar() const { return signature_.empty(); }

  Operator adjoint() const { return Operator(signature_, data_.adjoint()); }

 private:
  Signature signature_;
  Matrix data_;
};

namespace detail {

// Mixed-radix digits of `index` for the given dims (first factor most significant).
inline void split_index(std::size_t index, const std::vector<std::size_t>& dims,
                        std::vector<std::size_t>& digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

}  // namespace detail

/// Embeds `op` into `target` as op (x) I on the missing factors.
inline Operator embed(const Operator& op, const Signature& target) {
  if (!signature_contains(target, op.signature())) {
    throw SignatureError("cannot embed operator on " + signature_string(op.signature()) +
                         " into " + signature_string(target));
  }
  if (op.signature().size() == target.size()) return op;
  const std::size_t D = signature_dim(target);
  if (op.is_scalar()) {
    return Operator(target, op.matrix()(0, 0) * Matrix::Identity(static_cast<Eigen::Index>(D),
                                                                  static_cast<Eigen::Index>(D)));
  }

  std::vector<std::size_t> dims, strides(target.size());
  std::vector<bool> in_op(target.size(), false);
  for (const auto& f : target) dims.push_back(f.dim);
  {
    std::size_t s = 1;
    for (std::size_t k = target.size(); k-- > 0;) {
      strides[k] = s;
      s *= dims[k];
    }
  }
  std::vector<std::size_t> op_pos;  // positions of op factors inside target
  for (const auto& f : op.signature()) {
    for (std::size_t k = 0; k < target.size(); ++k) {
      if (target[k] == f) {
        in_op[k] = true;
        op_pos.push_back(k);
      }
    }
  }
  std::vector<std::size_t> op_dims;
  for (auto k : op_pos) op_dims.push_back(dims[k]);

  const std::size_t d = op.dim();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D));
  std::vector<std::size_t> digits(target.size()), op_digits(op_pos.size());
  for (std::size_t row = 0; row < D; ++row) {
    detail::split_index(row, dims, digits);
    std::size_t op_row = 0;
    std::size_t base = row;  // row with op digits zeroed
    for (std::size_t m = 0; m < op_pos.size(); ++m) {
      op_row = op_row * op_dims[m] + digits[op_pos[m]];
      base -= digits[op_pos[m]] * strides[op_pos[m]];
    }
    for (std::size_t op_col = 0; op_col < d; ++op_col) {
      const Complex v = op.matrix()(static_cast<Eigen::Index>(op_row),
                                    static_cast<Eigen::Index>(op_col));
      if (v == Complex{}) continue;
      detail::split_index(op_col, op_dims, op_digits);
      std::size_t col = base;
      for (std::size_t m = 0; m < op_pos.size(); ++m) col += op_digits[m] * strides[op_pos[m]];
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return Operator(target, std::move(out));
}

/// Embeds both operands into their common signature.
inline std::pair<Operator, Operator> unified(const Operator& a, const Operator& b) {
  if (a.signature().size() == b.signature().size() &&
      signature_contains(a.signature(), b.signature())) {
    return {a, b};
  }
  const Signature sig = unify(a.signature(), b.signature());
  return {embed(a, sig), embed(b, sig)};
}

inline Operator operator+(const Operator& a, const Operator& b) {
  auto [x, y] = unified(a, b);
  return Operator(x.signature(), x.matrix() + y.matrix());
}

inline Operator operator-(const Operator& a, const Operator& b) {
  auto [x, y] = unified(a, b);
  return Operator(x.signature(), x.matrix() - y.matrix());
}

inline Operator operator-(const Operator& a) { return Operator(a.signature(), -a.matrix()); }

inline Operator operator*(const Operator& a, const Operator& b) {
  if (a.is_scalar()) return Operator(b.signature(), a.matrix()(0, 0) * b.matrix());
  if (b.is_scalar()) return Operator(a.signature(), b.matrix()(0, 0) * a.matrix());
  auto [x, y] = unified(a, b);
  return Operator(x.signature(), x.matrix() * y.matrix());
}

inline Operator operator*(Complex z, const Operator& a) { return Operator(a.signature(), z * a.matrix()); }
inline Operator operator*(const Operator& a, Complex z) { return z * a; }
inline Operator operator*(double z, const Operator& a) { return Complex(z) * a; }
inline Operator operator*(const Operator& a, double z) { return Complex(z) * a; }

inline Operator commutator(const Operator& a, const Operator& b) {
  auto [x, y] = unified(a, b);
  return Operator(x.signature(), x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

/// Max entry modulus of a - b after embedding into the common signature.
inline double distance(const Operator& a, const Operator& b) {
  auto [x, y] = unified(a, b);
  return max_abs(x.matrix() - y.matrix());
}

inline double hermiticity_error(const Operator& a) {
  return max_abs(a.matrix() - a.matrix().adjoint());
}

inline bool is_self_adjoint(const Operator& a, double tol = kDefaultTol) {
  return hermiticity_error(a) <= tol;
}

/// Operator part (X - X*)/2i; reduces to the imaginary part for c-numbers.
inline Operator im_part(const Operator& x) {
  return Operator(x.signature(), (x.matrix() - x.matrix().adjoint()) / Complex(0.0, 2.0));
}

/// Truncated lowering operator: <n-1|a|n> = sqrt(n) for 1 <= n < cutoff.
inline Operator annihilation(const SpaceFactor& space) {
  if (space.kind != SpaceKind::fock) {
    throw InvalidArgument("annihilation operator requires a fock space, got '" + space.label + "'");
  }
  const auto d = static_cast<Eigen::Index>(space.dim);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator({space}, std::move(m));
}

inline Operator creation(const SpaceFactor& space) { return annihilation(space).adjoint(); }

/// diag(0, 1, ..., cutoff-1), built directly rather than as a^dagger a.
inline Operator number(const SpaceFactor& space) {
  if (space.kind != SpaceKind::fock) {
    throw InvalidArgument("number operator requires a fock space, got '" + space.label + "'");
  }
  const auto d = static_cast<Eigen::Index>(space.dim);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) m(n, n) = static_cast<double>(n);
  return Operator({space}, std::move(m));
}

inline Operator identity(const SpaceFactor& space) { return Operator::identity({space}); }

/// Expectation tr(rho X) with both embedded into a common signature.
inline Complex expectation(const Operator& rho, const Operator& x) {
  auto [r, y] = unified(rho, x);
  return (r.matrix() * y.matrix()).trace();
}

}  // namespace slhnet
