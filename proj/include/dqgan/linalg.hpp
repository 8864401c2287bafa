// Copyright 2026 The dqgan Authors
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

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

/// Dense complex linear algebra for few-qubit systems.
///
/// Qubit 0 is always the leftmost (most significant) tensor factor, so basis
/// index bit (n - 1 - q) holds the value of qubit q.
namespace dqgan::linalg {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Matrix = CMatrix<double>;
using Vector = CVector<double>;

using Rng = std::mt19937_64;

inline constexpr double kAlgebraTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

inline constexpr Complex kI{0.0, 1.0};

inline int dim_of(int num_qubits) { return 1 << num_qubits; }

/// log2 of a power-of-two dimension; throws for anything else.
inline int qubits_of(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return n;
}

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? typename Derived::RealScalar(0) : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = kAlgebraTol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = kAlgebraTol) {
  if (u.rows() != u.cols()) return false;
  using M = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return max_abs(u.adjoint() * u - M::Identity(u.rows(), u.cols())) <= tol;
}

/// Kronecker product, `a`'s indices leading.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                               a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// |0...0><0...0| on n qubits.
inline Matrix zero_projector(int num_qubits) {
  Matrix p = Matrix::Zero(dim_of(num_qubits), dim_of(num_qubits));
  p(0, 0) = 1.0;
  return p;
}

inline Vector basis_state(int num_qubits, Eigen::Index index) {
  Vector v = Vector::Zero(dim_of(num_qubits));
  v(index) = 1.0;
  return v;
}

inline Matrix outer(const Vector& v) { return v * v.adjoint(); }

namespace detail {

inline void check_qubit_list(std::span<const int> qubits, int total, const char* what) {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(total, 0)), false);
  for (int q : qubits) {
    if (q < 0 || q >= total) {
      throw std::out_of_range(std::string(what) + ": qubit index " + std::to_string(q) +
                              " out of range for " + std::to_string(total) + " qubits");
    }
    if (seen[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument(std::string(what) + ": duplicate qubit index " + std::to_string(q));
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
}

// Gathers the bits of `index` at the listed qubit positions into a compact
// index whose leading bit corresponds to qubits[0].
inline Eigen::Index gather_bits(Eigen::Index index, std::span<const int> qubits, int total) {
  Eigen::Index out = 0;
  for (int q : qubits) out = (out << 1) | ((index >> (total - 1 - q)) & 1);
  return out;
}

}  // namespace detail

/// Reduced density matrix on the `keep` qubits, in the order given.
///
/// Sums rho over every qubit not listed in `keep`; the result's qubit i is
/// rho's qubit keep[i].
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& rho, std::span<const int> keep) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("partial_trace: matrix not square");
  const int total = qubits_of(rho.rows());
  detail::check_qubit_list(keep, total, "partial_trace");

  std::vector<int> traced;
  for (int q = 0; q < total; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const Eigen::Index kept_dim = Eigen::Index{1} << keep.size();
  const Eigen::Index traced_dim = Eigen::Index{1} << traced.size();

  // full index = scatter(kept bits) | scatter(traced bits)
  auto scatter = [total](Eigen::Index compact, std::span<const int> qubits) {
    Eigen::Index out = 0;
    const auto n = static_cast<int>(qubits.size());
    for (int k = 0; k < n; ++k) {
      if ((compact >> (n - 1 - k)) & 1) out |= Eigen::Index{1} << (total - 1 - qubits[k]);
    }
    return out;
  };
  std::vector<Eigen::Index> kept_offsets(static_cast<std::size_t>(kept_dim));
  std::vector<Eigen::Index> traced_offsets(static_cast<std::size_t>(traced_dim));
  for (Eigen::Index i = 0; i < kept_dim; ++i) kept_offsets[i] = scatter(i, keep);
  for (Eigen::Index t = 0; t < traced_dim; ++t) traced_offsets[t] = scatter(t, traced);

  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(kept_dim, kept_dim);
  for (Eigen::Index i = 0; i < kept_dim; ++i) {
    for (Eigen::Index j = 0; j < kept_dim; ++j) {
      typename Derived::Scalar acc(0);
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        acc += rho(kept_offsets[i] | traced_offsets[t], kept_offsets[j] | traced_offsets[t]);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

/// Traces out the leading `drop` qubits.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> trace_out_leading(
    const Eigen::MatrixBase<Derived>& rho, int drop) {
  const int total = qubits_of(rho.rows());
  std::vector<int> keep;
  for (int q = drop; q < total; ++q) keep.push_back(q);
  return partial_trace(rho, keep);
}

/// Lifts `u` (acting on `acting_on`, in that order) to the full register.
///
/// Index lists may be non-adjacent and permuted: u's leading qubit is
/// acting_on[0].
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> embed(
    const Eigen::MatrixBase<Derived>& u, std::span<const int> acting_on, int total_qubits) {
  detail::check_qubit_list(acting_on, total_qubits, "embed");
  const Eigen::Index local_dim = Eigen::Index{1} << acting_on.size();
  if (u.rows() != local_dim || u.cols() != local_dim) {
    throw std::invalid_argument("embed: operator dimension " + std::to_string(u.rows()) +
                                " does not match " + std::to_string(acting_on.size()) + " qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << total_qubits;
  Eigen::Index mask = 0;
  for (int q : acting_on) mask |= Eigen::Index{1} << (total_qubits - 1 - q);

  using M = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M out = M::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Eigen::Index rest = col & ~mask;
    const Eigen::Index local_col = detail::gather_bits(col, acting_on, total_qubits);
    for (Eigen::Index local_row = 0; local_row < local_dim; ++local_row) {
      Eigen::Index row = rest;
      const auto n = static_cast<int>(acting_on.size());
      for (int k = 0; k < n; ++k) {
        if ((local_row >> (n - 1 - k)) & 1) row |= Eigen::Index{1} << (total_qubits - 1 - acting_on[k]);
      }
      out(row, col) = u(local_row, local_col);
    }
  }
  return out;
}

/// exp(i * epsilon * k) for Hermitian k, via eigendecomposition.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> exp_i_hermitian(
    const Eigen::MatrixBase<Derived>& k, typename Derived::RealScalar epsilon) {
  if (!is_hermitian(k, kAlgebraTol * std::max<double>(1.0, max_abs(k)))) {
    throw std::invalid_argument("exp_i_hermitian: generator is not Hermitian");
  }
  using M = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const M sym = (k + k.adjoint()) / typename Derived::RealScalar(2);
  Eigen::SelfAdjointEigenSolver<M> es(sym);
  const auto phases = (es.eigenvalues() * epsilon)
                          .unaryExpr([](auto x) { return std::polar(decltype(x)(1), x); })
                          .eval();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// A pure state vector or a density matrix over `num_qubits` qubits.
class QuantumState {
 public:
  explicit QuantumState(Vector amplitudes) : rep_(std::move(amplitudes)) {
    num_qubits_ = qubits_of(std::get<Vector>(rep_).size());
  }
  explicit QuantumState(Matrix density) : rep_(std::move(density)) {
    const auto& m = std::get<Matrix>(rep_);
    if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
    num_qubits_ = qubits_of(m.rows());
  }

  int num_qubits() const { return num_qubits_; }
  bool is_pure() const { return std::holds_alternative<Vector>(rep_); }

  const Vector& amplitudes() const {
    if (!is_pure()) throw std::logic_error("amplitudes() on a mixed state");
    return std::get<Vector>(rep_);
  }
  /// Density matrix; pure states are promoted.
  Matrix density() const { return is_pure() ? outer(std::get<Vector>(rep_)) : std::get<Matrix>(rep_); }

  /// Checks the state invariants (unit norm, or Hermitian/unit-trace/PSD).
  bool is_valid() const {
    if (is_pure()) return std::abs(std::get<Vector>(rep_).norm() - 1.0) <= kAlgebraTol;
    const auto& m = std::get<Matrix>(rep_);
    if (!is_hermitian(m) || std::abs(m.trace() - Complex(1.0)) > kAlgebraTol) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -kPsdTol;
  }

 private:
  std::variant<Vector, Matrix> rep_;
  int num_qubits_ = 0;
};

/// Pure ⊗ pure stays pure; anything involving a mixed state is mixed.
inline QuantumState tensor_product(const QuantumState& a, const QuantumState& b) {
  if (a.is_pure() && b.is_pure()) {
    return QuantumState(Vector(kron(a.amplitudes(), b.amplitudes())));
  }
  return QuantumState(kron(a.density(), b.density()));
}

inline QuantumState partial_trace(const QuantumState& rho, std::span<const int> keep) {
  return QuantumState(partial_trace(rho.density(), keep));
}

/// <target|rho|target>, clamped to [0, 1].
inline double fidelity(const Vector& target, const Matrix& rho) {
  if (target.size() != rho.rows() || rho.rows() != rho.cols()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const Complex f = target.dot(rho * target);
  return std::clamp(f.real(), 0.0, 1.0);
}

inline double fidelity(const QuantumState& target, const QuantumState& rho) {
  if (target.num_qubits() != rho.num_qubits()) throw std::invalid_argument("fidelity: qubit count mismatch");
  if (rho.is_pure()) {
    return std::clamp(std::norm(target.amplitudes().dot(rho.amplitudes())), 0.0, 1.0);
  }
  return fidelity(target.amplitudes(), rho.density());
}

/// Haar-random pure state: normalised vector of standard complex Gaussians.
inline Vector random_pure_state(int num_qubits, Rng& rng) {
  if (num_qubits < 1) throw std::invalid_argument("random_pure_state: need at least one qubit");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim_of(num_qubits));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

/// Haar-random unitary: QR of a complex Gaussian matrix with R's diagonal
/// phases folded back into Q.
inline Matrix random_unitary(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double mag = std::abs(r(i, i));
    q.col(i) *= mag > 0 ? r(i, i) / mag : Complex(1.0);
  }
  return q;
}

/// Bloch vector (tr(rho X), tr(rho Y), tr(rho Z)) of a one-qubit state.
inline Eigen::Vector3d bloch_vector(const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw std::invalid_argument("bloch_vector: not a one-qubit state");
  return {(rho * pauli_x()).trace().real(), (rho * pauli_y()).trace().real(),
          (rho * pauli_z()).trace().real()};
}

}  // namespace dqgan::linalg
