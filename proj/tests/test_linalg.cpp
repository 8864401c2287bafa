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


#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dqgan/linalg.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dqgan::linalg;

namespace {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

Vector ket(std::initializer_list<int> bits) {
  Eigen::Index index = 0;
  for (int b : bits) index = (index << 1) | b;
  return basis_state(static_cast<int>(bits.size()), index);
}

}  // namespace

TEST_CASE("tensor products of basis states, identities and Paulis") {
  const QuantumState zero(ket({0}));
  const auto zz = tensor_product(zero, zero);
  CHECK(zz.is_pure());
  CHECK(max_abs(zz.amplitudes() - ket({0, 0})) == 0.0);
  CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);

  Matrix expected = Matrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = pauli_z();
  expected.block(2, 0, 2, 2) = pauli_z();
  CHECK(max_abs(kron(pauli_x(), pauli_z()) - expected) == 0.0);

  const auto mixed = tensor_product(zero, QuantumState(Matrix(identity(2) / 2.0)));
  CHECK_FALSE(mixed.is_pure());
  CHECK(mixed.num_qubits() == 2);
}

TEST_CASE("partial trace examples") {
  const std::vector<int> keep0{0};
  const Matrix r = partial_trace(outer(ket({0, 0})), keep0);
  CHECK(max_abs(r - outer(ket({0}))) < 1e-15);

  const Vector bell = (ket({0, 0}) + ket({1, 1})) / std::sqrt(2.0);
  const std::vector<int> keep1{1};
  CHECK(max_abs(partial_trace(outer(bell), keep1) - identity(2) / 2.0) < 1e-15);

  Rng rng(11);
  const Matrix rho = gen::density(2, rng);
  const Matrix blocks = rho.block(0, 0, 2, 2) + rho.block(2, 2, 2, 2);
  const Matrix reduced = partial_trace(rho, keep0);
  CHECK(max_abs(reduced - oracle::partial_trace(rho, keep0)) < 1e-14);
  Matrix block_sum(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) block_sum(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  }
  CHECK(max_abs(reduced - block_sum) < 1e-14);
  CHECK(max_abs(partial_trace(rho, keep1) - blocks) < 1e-14);
}

TEST_CASE("partial trace agrees with the index-loop oracle on permuted keep lists") {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen::uniform(1, 4, rng);
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(gen::uniform(0, n, rng)));
    const Matrix rho = gen::density(n, rng);
    const Matrix got = partial_trace(rho, all);
    CHECK(max_abs(got - oracle::partial_trace(rho, all)) < 1e-13);
    CHECK(QuantumState(got).is_valid());
  }
}

TEST_CASE("partial trace rejects bad qubit lists") {
  const Matrix rho = outer(ket({0, 0}));
  const std::vector<int> dup{0, 0};
  const std::vector<int> out_of_range{2};
  const std::vector<int> negative{-1};
  CHECK_THROWS_AS(partial_trace(rho, dup), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, out_of_range), std::out_of_range);
  CHECK_THROWS_AS(partial_trace(rho, negative), std::out_of_range);
}

TEST_CASE("embed examples and permutation oracle") {
  const std::vector<int> q0{0}, q1{1};
  CHECK(max_abs(embed(pauli_x(), q0, 2) - kron(pauli_x(), identity(2))) == 0.0);
  CHECK(max_abs(embed(pauli_x(), q1, 2) - kron(identity(2), pauli_x())) == 0.0);

  const std::vector<int> control_target{2, 0};
  const Matrix u = embed(cnot(), control_target, 3);
  CHECK(max_abs(u * ket({1, 0, 1}) - ket({0, 0, 1})) == 0.0);
  CHECK(max_abs(u * ket({0, 1, 1}) - ket({1, 1, 1})) == 0.0);
  CHECK(max_abs(u * ket({1, 1, 0}) - ket({1, 1, 0})) == 0.0);
  CHECK(max_abs(u - oracle::embed(cnot(), control_target, 3)) == 0.0);

  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen::uniform(1, 4, rng);
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(gen::uniform(1, n, rng)));
    const Matrix local = random_unitary(dim_of(static_cast<int>(all.size())), rng);
    const Matrix big = embed(local, all, n);
    CHECK(max_abs(big - oracle::embed(local, all, n)) < 1e-15);
    CHECK(is_unitary(big, kAlgebraTol));
  }
}

TEST_CASE("embed errors") {
  const std::vector<int> q2{2}, q01{0, 1};
  CHECK_THROWS_AS(embed(pauli_x(), q2, 2), std::out_of_range);
  CHECK_THROWS_AS(embed(pauli_x(), q01, 2), std::invalid_argument);
}

TEST_CASE("exp_i_hermitian examples") {
  CHECK(max_abs(exp_i_hermitian(Matrix::Zero(4, 4), 0.3) - identity(4)) < 1e-15);

  const Matrix u = exp_i_hermitian(pauli_z(), std::numbers::pi / 2);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = std::exp(Complex(0, std::numbers::pi / 2));
  expected(1, 1) = std::exp(Complex(0, -std::numbers::pi / 2));
  CHECK(max_abs(u - expected) < 1e-15);

  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix k = gen::hermitian(dim_of(gen::uniform(1, 4, rng)), rng);
    const double eps = std::uniform_real_distribution<double>(-3, 3)(rng);
    const Matrix forward = exp_i_hermitian(k, eps);
    CHECK(is_unitary(forward, 1e-9));
    CHECK(max_abs(forward * exp_i_hermitian(k, -eps) - identity(static_cast<int>(k.rows()))) < 1e-10);
  }
  Matrix bad = pauli_x();
  bad(0, 1) = 2.0;
  CHECK_THROWS_AS(exp_i_hermitian(bad, 1.0), std::invalid_argument);
}

TEST_CASE("exp_i_hermitian matches a truncated power series for small steps") {
  Rng rng(15);
  const Matrix k = gen::hermitian(4, rng);
  const double eps = 1e-2;
  Matrix series = identity(4);
  Matrix term = identity(4);
  for (int n = 1; n < 30; ++n) {
    term = term * k * Complex(0, eps) / static_cast<double>(n);
    series += term;
  }
  CHECK(max_abs(exp_i_hermitian(k, eps) - series) < 1e-13);
}

TEST_CASE("fidelity examples and invariants") {
  CHECK(fidelity(ket({0}), outer(ket({0}))) == doctest::Approx(1.0));
  CHECK(fidelity(ket({0}), Matrix(identity(2) / 2.0)) == doctest::Approx(0.5));
  const Vector plus = (ket({0}) + ket({1})) / std::sqrt(2.0);
  CHECK(fidelity(plus, outer(ket({1}))) == doctest::Approx(0.5));
  CHECK_THROWS_AS(fidelity(ket({0}), outer(ket({0, 0}))), std::invalid_argument);

  Rng rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const Vector psi = random_pure_state(2, rng);
    const Matrix rho = gen::density(2, rng);
    const double phase = std::uniform_real_distribution<double>(0, 6.3)(rng);
    const Vector rotated = psi * std::exp(Complex(0, phase));
    CHECK(std::abs(fidelity(psi, rho) - fidelity(rotated, rho)) < 1e-14);
    const double f = fidelity(psi, rho);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("random_pure_state is seeded, normalised and Haar on average") {
  Rng a(17), b(17);
  CHECK(max_abs(random_pure_state(3, a) - random_pure_state(3, b)) == 0.0);
  CHECK(std::abs(random_pure_state(3, a).norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(random_pure_state(0, a), std::invalid_argument);

  Rng rng(18);
  const Vector zero = ket({0});
  double sum = 0.0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) sum += fidelity(zero, outer(random_pure_state(1, rng)));
  CHECK(std::abs(sum / samples - 0.5) < 0.01);
}

TEST_CASE("tensor then partial trace recovers the first factor of a product state") {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = gen::density(2, rng);
    const Matrix b = gen::density(1, rng);
    const auto ab = tensor_product(QuantumState(a), QuantumState(b));
    const std::vector<int> keep{0, 1};
    CHECK(max_abs(partial_trace(ab, keep).density() - a) < 1e-14);
  }
}

TEST_CASE("quantum state validity") {
  CHECK(QuantumState(ket({1, 0})).is_valid());
  CHECK_FALSE(QuantumState(Vector(2 * ket({1}))).is_valid());
  Matrix not_psd = Matrix::Zero(2, 2);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_FALSE(QuantumState(not_psd).is_valid());
  CHECK_THROWS_AS(QuantumState(Vector(Vector::Zero(3))), std::invalid_argument);
}

TEST_CASE("bloch vectors") {
  CHECK((bloch_vector(outer(ket({0}))) - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
  CHECK(bloch_vector(Matrix(identity(2) / 2.0)).norm() < 1e-15);
  const Vector plus = (ket({0}) + ket({1})) / std::sqrt(2.0);
  CHECK((bloch_vector(outer(plus)) - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
  CHECK_THROWS_AS(bloch_vector(identity(4)), std::invalid_argument);
}
