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


// Seeded random inputs for property tests.

#pragma once

#include <random>
#include <vector>

#include "dqgan/dqgan.hpp"
#include "dqgan/dqnn.hpp"
#include "dqgan/linalg.hpp"

namespace gen {

using dqgan::linalg::Complex;
using dqgan::linalg::Matrix;
using dqgan::linalg::Rng;
using dqgan::linalg::Vector;

inline Matrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

inline Matrix hermitian(Eigen::Index dim, Rng& rng) {
  const Matrix g = gaussian(dim, dim, rng);
  return (g + g.adjoint()) / 2.0;
}

/// Full-rank random density matrix (Ginibre ensemble).
inline Matrix density(int num_qubits, Rng& rng) {
  const auto dim = dqgan::linalg::dim_of(num_qubits);
  const Matrix g = gaussian(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

inline int uniform(int lo, int hi, Rng& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline dqgan::dqnn::Architecture architecture(Rng& rng, int max_width = 3, int max_layers = 3) {
  std::vector<int> widths(static_cast<std::size_t>(uniform(2, max_layers, rng)));
  for (auto& w : widths) w = uniform(1, max_width, rng);
  return dqgan::dqnn::Architecture(widths);
}

/// Random DQGAN whose combined network has at most `max_qubits` qubits.
inline dqgan::DqganModel model(Rng& rng, int max_qubits) {
  for (;;) {
    std::vector<int> g(static_cast<std::size_t>(uniform(2, 3, rng)));
    for (auto& w : g) w = uniform(1, 2, rng);
    std::vector<int> d(static_cast<std::size_t>(uniform(2, 3, rng)));
    d.front() = g.back();
    for (std::size_t i = 1; i + 1 < d.size(); ++i) d[i] = uniform(1, 2, rng);
    d.back() = 1;
    int total = 0;
    for (int w : g) total += w;
    for (std::size_t i = 1; i < d.size(); ++i) total += d[i];
    if (total > max_qubits) continue;
    return dqgan::DqganModel::random(dqgan::dqnn::Architecture(g), dqgan::dqnn::Architecture(d), rng);
  }
}

inline std::vector<Vector> states(int count, int num_qubits, Rng& rng) {
  std::vector<Vector> out;
  for (int i = 0; i < count; ++i) out.push_back(dqgan::linalg::random_pure_state(num_qubits, rng));
  return out;
}

}  // namespace gen
