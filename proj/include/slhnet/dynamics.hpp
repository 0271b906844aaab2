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
#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "slhnet/slh.hpp"

namespace slhnet {

// ---------------------------------------------------------------------------
// Generators

/// Lindblad superoperator in the Heisenberg picture:
/// sum_j (L_j* [X, L_j] + [L_j*, X] L_j) / 2.
inline Operator lindblad_heisenberg(const SlhTriple& g_in, const Operator& x_in) {
  const Signature sig = unify(g_in.signature(), x_in.signature());
  const SlhTriple g = g_in.embedded(sig);
  const Matrix x = embed(x_in, sig).matrix();
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (std::size_t j = 0; j < g.channels(); ++j) {
    const Matrix l = g.L(j).matrix();
    const Matrix l_dag = l.adjoint();
    out += 0.5 * (l_dag * (x * l - l * x) + (l_dag * x - x * l_dag) * l);
  }
  return Operator(sig, std::move(out));
}

/// Precomputed matrices for repeated evaluation of the master equation
/// d rho/dt = i[rho, H] + sum_j (L_j rho L_j* - {L_j* L_j, rho}/2).
class MasterGenerator {
 public:
  explicit MasterGenerator(const SlhTriple& g) : signature_(g.signature()) {
    const Matrix& h = g.H().matrix();
    Matrix l_dag_l = Matrix::Zero(h.rows(), h.cols());
    for (std::size_t j = 0; j < g.channels(); ++j) {
      couplings_.push_back(g.L(j).matrix());
      l_dag_l += couplings_.back().adjoint() * couplings_.back();
    }
    effective_ = -kI * h - 0.5 * l_dag_l;
  }

  const Signature& signature() const { return signature_; }

  Matrix operator()(const Matrix& rho) const {
    Matrix out = effective_ * rho;
    out += rho * effective_.adjoint();
    for (const auto& l : couplings_) out += l * rho * l.adjoint();
    return out;
  }

  /// One classical 4th-order Runge-Kutta step.
  Matrix rk4_step(const Matrix& rho, double dt) const {
    const Matrix k1 = (*this)(rho);
    const Matrix k2 = (*this)(rho + 0.5 * dt * k1);
    const Matrix k3 = (*this)(rho + 0.5 * dt * k2);
    const Matrix k4 = (*this)(rho + dt * k3);
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  /// Stability heuristic: keep dt * generator_scale() below ~0.1.
  double generator_scale() const {
    double s = effective_.cwiseAbs().rowwise().sum().maxCoeff();
    for (const auto& l : couplings_) {
      const double n = l.cwiseAbs().rowwise().sum().maxCoeff();
      s += n * n;
    }
    return s;
  }

 private:
  Signature signature_;
  Matrix effective_;
  std::vector<Matrix> couplings_;
};

inline Operator master_rhs(const SlhTriple& g_in, const Operator& rho) {
  const Signature sig = unify(g_in.signature(), rho.signature());
  const MasterGenerator gen(g_in.embedded(sig));
  return Operator(sig, gen(embed(rho, sig).matrix()));
}

/// Coefficients of dX in the Heisenberg picture, evaluated at t = 0:
/// dX = drift dt + dA^dagger (dA_dagger_coeff) + (dA_coeff) dA + tr[gauge_coeff dLambda].
struct HeisenbergCoefficients {
  Operator drift;                  // L_L(X) - i[X, H]
  OperatorMatrix dA_dagger_coeff;  // S^dagger [X, L], n x 1
  OperatorMatrix dA_coeff;         // [L^dagger, X] S, 1 x n
  OperatorMatrix gauge_coeff;      // S^dagger X S - X, n x n
};

inline HeisenbergCoefficients heisenberg_coefficients(const SlhTriple& g_in, const Operator& x_in) {
  const Signature sig = unify(g_in.signature(), x_in.signature());
  const SlhTriple g = g_in.embedded(sig);
  const Operator x = embed(x_in, sig);
  const auto n = g.channels();
  const OperatorMatrix xs = OperatorMatrix::diagonal(x, n);
  const OperatorMatrix l_dag = g.L().dagger();
  const OperatorMatrix comm_x_l = xs * g.L() - g.L() * x;
  const OperatorMatrix comm_ldag_x = l_dag * xs - x * l_dag;
  return HeisenbergCoefficients{
      lindblad_heisenberg(g, x) - kI * commutator(x, g.H()),
      g.S().dagger() * comm_x_l,
      comm_ldag_x * g.S(),
      g.S().dagger() * xs * g.S() - xs,
  };
}

// ---------------------------------------------------------------------------
// States

struct DensityReport {
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  bool ok(double tol = 1e-9) const {
    return trace_error <= tol && hermiticity_error <= tol && min_eigenvalue >= -tol;
  }
};

inline DensityReport check_density(const Operator& rho) {
  const Matrix& m = rho.matrix();
  const Matrix herm = 0.5 * (m + m.adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  return {std::abs(m.trace() - 1.0), hermiticity_error(rho), eig.eigenvalues().minCoeff()};
}

/// |psi><psi| for a normalized copy of psi.
inline Operator pure_state(const Signature& sig, const Eigen::VectorXcd& psi) {
  if (psi.size() != static_cast<Eigen::Index>(signature_dim(sig))) {
    throw InvalidArgument("state vector length does not match signature " + signature_string(sig));
  }
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidArgument("state vector must be non-zero");
  const Eigen::VectorXcd v = psi / norm;
  return Operator(sig, v * v.adjoint());
}

inline Eigen::VectorXcd basis_vector(std::size_t dim, std::size_t level) {
  if (level >= dim) throw InvalidArgument("basis level " + std::to_string(level) + " outside dimension " +
                                          std::to_string(dim));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(level)) = 1.0;
  return v;
}

inline Operator fock_state(const SpaceFactor& space, std::size_t n) {
  return pure_state({space}, basis_vector(space.dim, n));
}

/// Truncated displacement exp(alpha a* - conj(alpha) a) applied to |0>.
inline Operator coherent_state(const SpaceFactor& space, Complex alpha) {
  const Matrix a = annihilation(space).matrix();
  const Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  const Matrix disp = gen.exp();
  return pure_state({space}, disp.col(0));
}

/// Ground level |0> on every factor of `sig`.
inline Operator ground_state(const Signature& sig) {
  return pure_state(sig, basis_vector(signature_dim(sig), 0));
}

/// Tensor product of states living on disjoint factors.
inline Operator product_state(const std::vector<Operator>& factors) {
  Operator out = Operator::scalar(1.0);
  for (const auto& f : factors) out = out * f;
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic evolution

struct Observable {
  std::string name;
  Operator op;
};

/// Time grid plus optional states and expectation records.
struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::vector<std::string> names;
  std::vector<std::vector<Complex>> expectations;  // [observable][time]
  std::vector<double> norms;                       // tr(rho_t); sigma_t(1) for the filter
  Signature signature;
};

struct EvolveOptions {
  bool store_states = false;
  std::size_t record_every = 1;
  double trace_guard = 1e-6;
};

namespace dynamics_detail {

inline std::size_t step_count(double dt, double t_final) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step dt must be positive");
  if (!(t_final >= dt) || !std::isfinite(t_final)) throw InvalidArgument("final time T must be >= dt");
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

struct Recorder {
  Trajectory& traj;
  std::vector<Matrix> ops;
  bool store;

  Recorder(Trajectory& t, const Signature& sig, const std::vector<Observable>& obs, bool store_states)
      : traj(t), store(store_states) {
    traj.signature = sig;
    for (const auto& o : obs) {
      traj.names.push_back(o.name);
      ops.push_back(embed(o.op, sig).matrix());
    }
    traj.expectations.resize(obs.size());
  }

  // Records tr(rho X) / tr(rho).
  void record(double t, const Matrix& rho) {
    const Complex tr = rho.trace();
    traj.times.push_back(t);
    traj.norms.push_back(tr.real());
    for (std::size_t k = 0; k < ops.size(); ++k) {
      traj.expectations[k].push_back((rho * ops[k]).trace() / tr);
    }
    if (store) traj.states.push_back(rho);
  }
};

inline bool finite(const Matrix& m) { return m.allFinite(); }

}  // namespace dynamics_detail

/// Fixed-step RK4 integration of the master equation from rho0 over [0, T].
inline Trajectory evolve_master(const SlhTriple& g_in, const Operator& rho0, double dt, double t_final,
                                const std::vector<Observable>& observables = {},
                                const EvolveOptions& options = {}) {
  const auto steps = dynamics_detail::step_count(dt, t_final);
  Signature sig = unify(g_in.signature(), rho0.signature());
  for (const auto& o : observables) sig = unify(sig, o.op.signature());
  const MasterGenerator gen(g_in.embedded(sig));

  Trajectory traj;
  dynamics_detail::Recorder rec(traj, sig, observables, options.store_states);
  Matrix rho = embed(rho0, sig).matrix();
  const double trace0 = rho.trace().real();
  const std::size_t every = std::max<std::size_t>(1, options.record_every);
  rec.record(0.0, rho);
  for (std::size_t k = 1; k <= steps; ++k) {
    rho = gen.rk4_step(rho, dt);
    const double drift = std::abs(rho.trace() - trace0);
    if (!dynamics_detail::finite(rho) || drift > options.trace_guard) {
      std::ostringstream msg;
      msg << "master equation integration failed at step " << k << " (t = " << k * dt
          << "): trace drift " << drift << " exceeds " << options.trace_guard
          << "; dt * generator scale = " << dt * gen.generator_scale() << ", try a smaller dt";
      throw NumericalError(msg.str());
    }
    if (k % every == 0 || k == steps) rec.record(static_cast<double>(k) * dt, rho);
  }
  return traj;
}

/// Per-channel output moments under vacuum input.
struct ChannelMoments {
  double quadrature_rate = 0.0;  // <L_j + L_j*>
  double photon_flux = 0.0;      // <L_j* L_j>
};

inline std::vector<ChannelMoments> output_moments(const SlhTriple& g_in, const Operator& rho_in) {
  const Signature sig = unify(g_in.signature(), rho_in.signature());
  const SlhTriple g = g_in.embedded(sig);
  const Matrix rho = embed(rho_in, sig).matrix();
  const Complex tr = rho.trace();
  std::vector<ChannelMoments> out;
  for (std::size_t j = 0; j < g.channels(); ++j) {
    const Matrix l = g.L(j).matrix();
    out.push_back({((rho * (l + l.adjoint())).trace() / tr).real(),
                   ((rho * l.adjoint() * l).trace() / tr).real()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Filtering

/// Homodyne increments dy_k on the grid t_k = k dt.
struct MeasurementRecord {
  double dt = 0.0;
  std::vector<double> increments;
};

/// Law of the generated record: `physical` draws dy = <L_m + L_m*> dt + dW
/// with the conditional state; `reference` draws dy = dW.
enum class RecordMeasure { physical, reference };

/// Stepper for the unnormalized (Zakai) filter in density form:
/// d rho = (i[rho, H] + L'(rho)) dt + (L_m rho + rho L_m*) dy.
class ZakaiFilter {
 public:
  ZakaiFilter(const SlhTriple& g, std::size_t channel) : gen_(g) {
    if (channel >= g.channels()) {
      throw InvalidArgument("measured channel " + std::to_string(channel) + " out of range for " +
                            std::to_string(g.channels()) + " channels");
    }
    measured_ = g.L(channel).matrix();
  }

  const MasterGenerator& generator() const { return gen_; }
  const Matrix& measured() const { return measured_; }

  Matrix step(const Matrix& rho, double dt, double dy) const {
    Matrix next = gen_.rk4_step(rho, dt);
    next += dy * (measured_ * rho + rho * measured_.adjoint());
    return next;
  }

  /// <L_m + L_m*> in the normalized state.
  double quadrature_mean(const Matrix& rho) const {
    return ((rho * (measured_ + measured_.adjoint())).trace() / rho.trace()).real();
  }

 private:
  MasterGenerator gen_;
  Matrix measured_;
};

namespace dynamics_detail {

inline void require_finite(const Matrix& rho, std::size_t k, double dt) {
  if (!finite(rho)) {
    std::ostringstream msg;
    msg << "filter state became non-finite at step " << k << " (t = " << k * dt << ")";
    throw NumericalError(msg.str());
  }
}

}  // namespace dynamics_detail

/// Runs the unnormalized filter over a given record. Expectations are the
/// normalized estimates sigma_t(X) / sigma_t(1); `norms` holds sigma_t(1).
inline Trajectory evolve_zakai(const SlhTriple& g_in, std::size_t channel, const Operator& rho0,
                               const MeasurementRecord& record,
                               const std::vector<Observable>& observables = {},
                               const EvolveOptions& options = {}) {
  if (!(record.dt > 0.0)) throw InvalidArgument("measurement record needs a positive dt");
  Signature sig = unify(g_in.signature(), rho0.signature());
  for (const auto& o : observables) sig = unify(sig, o.op.signature());
  const ZakaiFilter filter(g_in.embedded(sig), channel);

  Trajectory traj;
  dynamics_detail::Recorder rec(traj, sig, observables, options.store_states);
  Matrix rho = embed(rho0, sig).matrix();
  const std::size_t every = std::max<std::size_t>(1, options.record_every);
  const std::size_t steps = record.increments.size();
  rec.record(0.0, rho);
  for (std::size_t k = 1; k <= steps; ++k) {
    rho = filter.step(rho, record.dt, record.increments[k - 1]);
    dynamics_detail::require_finite(rho, k, record.dt);
    if (k % every == 0 || k == steps) rec.record(static_cast<double>(k) * record.dt, rho);
  }
  return traj;
}

/// Random engine for Monte-Carlo task `task` of a run seeded with `seed`.
inline std::mt19937_64 task_engine(std::uint64_t seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  return std::mt19937_64(seq);
}

/// Euler-Maruyama generation of a homodyne record for channel `channel`.
inline MeasurementRecord simulate_record(const SlhTriple& g_in, const Operator& rho0, std::size_t channel,
                                         double dt, double t_final, std::uint64_t seed,
                                         RecordMeasure measure = RecordMeasure::physical,
                                         std::uint64_t task = 0) {
  const auto steps = dynamics_detail::step_count(dt, t_final);
  auto engine = task_engine(seed, task);
  std::normal_distribution<double> normal(0.0, 1.0);
  MeasurementRecord out{dt, {}};
  out.increments.reserve(steps);
  const double sqrt_dt = std::sqrt(dt);

  if (measure == RecordMeasure::reference) {
    for (std::size_t k = 0; k < steps; ++k) out.increments.push_back(sqrt_dt * normal(engine));
    return out;
  }
  const Signature sig = unify(g_in.signature(), rho0.signature());
  const ZakaiFilter filter(g_in.embedded(sig), channel);
  Matrix rho = embed(rho0, sig).matrix();
  for (std::size_t k = 1; k <= steps; ++k) {
    const double dy = filter.quadrature_mean(rho) * dt + sqrt_dt * normal(engine);
    out.increments.push_back(dy);
    rho = filter.step(rho, dt, dy);
    dynamics_detail::require_finite(rho, k, dt);
    rho /= rho.trace();  // conditional expectations are scale-free
  }
  return out;
}

}  // namespace slhnet
