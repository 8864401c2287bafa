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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dqgan/linalg.hpp"

namespace dqgan::dqnn {

using linalg::Matrix;
using linalg::Vector;

/// Qubit counts per layer, m_0 .. m_{L+1}.
class Architecture {
 public:
  Architecture() = default;
  explicit Architecture(std::vector<int> widths);

  /// Parses "2-3-2" style strings.
  static Architecture parse(std::string_view text);

  const std::vector<int>& widths() const { return widths_; }
  /// Width of layer l, 0 <= l <= num_perceptron_layers().
  int width(int l) const { return widths_.at(static_cast<std::size_t>(l)); }
  /// Number of perceptron layers, L + 1.
  int num_perceptron_layers() const { return static_cast<int>(widths_.size()) - 1; }
  int input_width() const { return widths_.front(); }
  int output_width() const { return widths_.back(); }
  int total_qubits() const;

  std::string to_string() const;

  friend bool operator==(const Architecture&, const Architecture&) = default;

 private:
  std::vector<int> widths_;
};

/// The perceptron unitaries U_j^l of a network.
///
/// Layers and perceptrons are 1-based to match the usual notation. U_j^l acts
/// on the m_{l-1} qubits of layer l-1 (leading) followed by output qubit j of
/// layer l.
class PerceptronSet {
 public:
  PerceptronSet() = default;
  PerceptronSet(Architecture arch, std::vector<std::vector<Matrix>> unitaries);

  static PerceptronSet identity(const Architecture& arch);
  /// Independent Haar-random perceptrons.
  static PerceptronSet random(const Architecture& arch, linalg::Rng& rng);

  const Architecture& architecture() const { return arch_; }
  const Matrix& at(int layer, int j) const;
  Matrix& at(int layer, int j);
  /// Number of perceptrons in a layer.
  int count(int layer) const { return arch_.width(layer); }

  /// U^l = U_{m_l} ... U_1 on the (m_{l-1} + m_l)-qubit space of layers l-1, l.
  Matrix layer_unitary(int layer) const;
  /// U_j^l lifted to the (m_{l-1} + m_l)-qubit space of layers l-1, l.
  Matrix embedded(int layer, int j) const;

  /// True when every stored matrix is unitary within `tol`.
  bool all_unitary(double tol = linalg::kPsdTol) const;

 private:
  Architecture arch_;
  std::vector<std::vector<Matrix>> unitaries_;
};

/// Qubit list of U_j^l inside the local space of layers l-1 and l.
std::vector<int> perceptron_qubits(int input_width, int j);

/// Transition map E^l: append |0..0> on layer l, apply U^l, trace out layer l-1.
Matrix layer_map(const Matrix& rho, int layer, const PerceptronSet& perceptrons);

/// Heisenberg-picture adjoint of layer_map: maps an observable on layer l to
/// one on layer l-1 with tr(sigma E(rho)) = tr(adjoint(sigma) rho).
Matrix adjoint_layer_map(const Matrix& sigma, int layer, const PerceptronSet& perceptrons);

/// Composes layer maps first..last (inclusive).
Matrix forward(const Matrix& rho, const PerceptronSet& perceptrons, int first_layer, int last_layer);
Matrix forward(const Matrix& rho, const PerceptronSet& perceptrons);
linalg::QuantumState forward(const linalg::QuantumState& rho, const PerceptronSet& perceptrons);

/// Mean fidelity of forward outputs against their targets.
double supervised_loss(const std::vector<std::pair<Vector, Vector>>& pairs, const PerceptronSet& perceptrons);

}  // namespace dqgan::dqnn
