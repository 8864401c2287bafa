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

#include "dqgan/dqnn.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace dqgan::dqnn {

Architecture::Architecture(std::vector<int> widths) : widths_(std::move(widths)) {
  if (widths_.size() < 2) throw std::invalid_argument("architecture needs at least two layers");
  for (int w : widths_) {
    if (w < 1) throw std::invalid_argument("layer widths must be positive");
  }
}

Architecture Architecture::parse(std::string_view text) {
  std::vector<int> widths;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t dash = std::min(text.find('-', pos), text.size());
    const std::string_view token = text.substr(pos, dash - pos);
    int value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw std::invalid_argument("malformed architecture '" + std::string(text) + "'");
    }
    widths.push_back(value);
    pos = dash + 1;
  }
  return Architecture(std::move(widths));
}

int Architecture::total_qubits() const { return std::accumulate(widths_.begin(), widths_.end(), 0); }

std::string Architecture::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(widths_[i]);
  }
  return out;
}

PerceptronSet::PerceptronSet(Architecture arch, std::vector<std::vector<Matrix>> unitaries)
    : arch_(std::move(arch)), unitaries_(std::move(unitaries)) {
  if (static_cast<int>(unitaries_.size()) != arch_.num_perceptron_layers()) {
    throw std::invalid_argument("perceptron set: wrong number of layers");
  }
  for (int l = 1; l <= arch_.num_perceptron_layers(); ++l) {
    const auto& layer = unitaries_[static_cast<std::size_t>(l - 1)];
    if (static_cast<int>(layer.size()) != arch_.width(l)) {
      throw std::invalid_argument("perceptron set: layer " + std::to_string(l) + " has wrong perceptron count");
    }
    const int dim = linalg::dim_of(arch_.width(l - 1) + 1);
    for (const auto& u : layer) {
      if (u.rows() != dim || u.cols() != dim) {
        throw std::invalid_argument("perceptron set: layer " + std::to_string(l) + " expects " +
                                    std::to_string(dim) + "x" + std::to_string(dim) + " unitaries");
      }
    }
  }
}

PerceptronSet PerceptronSet::identity(const Architecture& arch) {
  std::vector<std::vector<Matrix>> layers;
  for (int l = 1; l <= arch.num_perceptron_layers(); ++l) {
    const int dim = linalg::dim_of(arch.width(l - 1) + 1);
    layers.emplace_back(static_cast<std::size_t>(arch.width(l)), Matrix::Identity(dim, dim));
  }
  return PerceptronSet(arch, std::move(layers));
}

PerceptronSet PerceptronSet::random(const Architecture& arch, linalg::Rng& rng) {
  std::vector<std::vector<Matrix>> layers;
  for (int l = 1; l <= arch.num_perceptron_layers(); ++l) {
    const int dim = linalg::dim_of(arch.width(l - 1) + 1);
    std::vector<Matrix> layer;
    for (int j = 0; j < arch.width(l); ++j) layer.push_back(linalg::random_unitary(dim, rng));
    layers.push_back(std::move(layer));
  }
  return PerceptronSet(arch, std::move(layers));
}

const Matrix& PerceptronSet::at(int layer, int j) const {
  return unitaries_.at(static_cast<std::size_t>(layer - 1)).at(static_cast<std::size_t>(j - 1));
}

Matrix& PerceptronSet::at(int layer, int j) {
  return unitaries_.at(static_cast<std::size_t>(layer - 1)).at(static_cast<std::size_t>(j - 1));
}

std::vector<int> perceptron_qubits(int input_width, int j) {
  std::vector<int> qubits(static_cast<std::size_t>(input_width));
  std::iota(qubits.begin(), qubits.end(), 0);
  qubits.push_back(input_width + j - 1);
  return qubits;
}

Matrix PerceptronSet::embedded(int layer, int j) const {
  const int in = arch_.width(layer - 1);
  return linalg::embed(at(layer, j), perceptron_qubits(in, j), in + arch_.width(layer));
}

Matrix PerceptronSet::layer_unitary(int layer) const {
  const int n = arch_.width(layer - 1) + arch_.width(layer);
  Matrix u = Matrix::Identity(linalg::dim_of(n), linalg::dim_of(n));
  for (int j = 1; j <= arch_.width(layer); ++j) u = embedded(layer, j) * u;
  return u;
}

bool PerceptronSet::all_unitary(double tol) const {
  for (const auto& layer : unitaries_) {
    for (const auto& u : layer) {
      if (!linalg::is_unitary(u, tol)) return false;
    }
  }
  return true;
}

Matrix layer_map(const Matrix& rho, int layer, const PerceptronSet& perceptrons) {
  const auto& arch = perceptrons.architecture();
  if (layer < 1 || layer > arch.num_perceptron_layers()) throw std::out_of_range("layer_map: bad layer index");
  const int in = arch.width(layer - 1);
  if (rho.rows() != linalg::dim_of(in)) {
    throw std::invalid_argument("layer_map: state has " + std::to_string(linalg::qubits_of(rho.rows())) +
                                " qubits, layer " + std::to_string(layer - 1) + " has " + std::to_string(in));
  }
  const Matrix u = perceptrons.layer_unitary(layer);
  const Matrix joint = u * linalg::kron(rho, linalg::zero_projector(arch.width(layer))) * u.adjoint();
  return linalg::trace_out_leading(joint, in);
}

Matrix adjoint_layer_map(const Matrix& sigma, int layer, const PerceptronSet& perceptrons) {
  const auto& arch = perceptrons.architecture();
  if (layer < 1 || layer > arch.num_perceptron_layers()) {
    throw std::out_of_range("adjoint_layer_map: bad layer index");
  }
  const int in = arch.width(layer - 1);
  const int out = arch.width(layer);
  if (sigma.rows() != linalg::dim_of(out)) throw std::invalid_argument("adjoint_layer_map: width mismatch");
  const Matrix u = perceptrons.layer_unitary(layer);
  const Matrix heis = u.adjoint() * linalg::kron(Matrix::Identity(linalg::dim_of(in), linalg::dim_of(in)), sigma) * u;
  // <0..0|_l heis |0..0>_l: rows/cols whose layer-l bits are all zero.
  const int stride = linalg::dim_of(out);
  Matrix result(linalg::dim_of(in), linalg::dim_of(in));
  for (int i = 0; i < result.rows(); ++i) {
    for (int k = 0; k < result.cols(); ++k) result(i, k) = heis(i * stride, k * stride);
  }
  return result;
}

Matrix forward(const Matrix& rho, const PerceptronSet& perceptrons, int first_layer, int last_layer) {
  Matrix state = rho;
  for (int l = first_layer; l <= last_layer; ++l) state = layer_map(state, l, perceptrons);
  return state;
}

Matrix forward(const Matrix& rho, const PerceptronSet& perceptrons) {
  return forward(rho, perceptrons, 1, perceptrons.architecture().num_perceptron_layers());
}

linalg::QuantumState forward(const linalg::QuantumState& rho, const PerceptronSet& perceptrons) {
  return linalg::QuantumState(forward(rho.density(), perceptrons));
}

double supervised_loss(const std::vector<std::pair<Vector, Vector>>& pairs, const PerceptronSet& perceptrons) {
  if (pairs.empty()) throw std::invalid_argument("supervised_loss: empty training set");
  double total = 0.0;
  for (const auto& [in, target] : pairs) {
    total += linalg::fidelity(target, forward(linalg::outer(in), perceptrons));
  }
  return total / static_cast<double>(pairs.size());
}

}  // namespace dqgan::dqnn
