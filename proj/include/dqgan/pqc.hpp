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

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dqgan/dqgan.hpp"
#include "dqgan/dqnn.hpp"
#include "dqgan/linalg.hpp"

/// Parameterised-circuit realisation of a dissipative QNN: CAN gates between
/// every input/output qubit pair, u gates on layer inputs and final outputs,
/// density-matrix evaluation and finite-difference training.
namespace dqgan::pqc {

using linalg::Matrix;
using linalg::Vector;
using ParameterVector = Eigen::VectorXd;

/// exp(-i pi/2 tx XX) exp(-i pi/2 ty YY) exp(-i pi/2 tz ZZ).
Matrix can_gate(double tx, double ty, double tz);

/// R_Z(t2) R_Y(t1) R_Z(t3) in the phase convention
/// [[cos(t1/2), -e^{i t3} sin(t1/2)], [e^{i t2} sin(t1/2), e^{i(t2+t3)} cos(t1/2)]].
Matrix u3_gate(double t1, double t2, double t3);

enum class GateKind { can, u3 };

struct GateSpec {
  GateKind kind = GateKind::u3;
  /// Two distinct qubits for CAN, one for U3.
  std::vector<int> qubits;
  std::array<int, 3> slots{};
};

/// Qubits discarded (traced out) at the end of a layer.
struct TraceStep {
  std::vector<int> qubits;
};

using CircuitStep = std::variant<GateSpec, TraceStep>;

struct CircuitPlan {
  dqnn::Architecture architecture;
  bool plus_variant = false;
  std::vector<CircuitStep> steps;
  int total_params = 0;

  /// Circuit qubits of layer l, numbered consecutively from the input layer.
  std::vector<int> layer_qubits(int layer) const;
  std::vector<GateSpec> gates() const;
};

/// 3m + 3 sum_l m_{l-1}(1 + m_l) for the standard layout.
int standard_param_count(const dqnn::Architecture& arch);

CircuitPlan build_circuit(const dqnn::Architecture& arch, bool plus_variant);

/// "1-1+" style architecture strings; the trailing '+' selects the enriched layout.
std::pair<dqnn::Architecture, bool> parse_circuit_architecture(std::string_view text);
std::string circuit_architecture_string(const CircuitPlan& plan);

/// Line format: `# architecture <arch>` header, then one of
/// `CAN qi qj a b c`, `U3 q a b c`, `TRACE q...` per line.
std::string to_text(const CircuitPlan& plan);
CircuitPlan parse_plan(std::string_view text);

/// Propagates rho_in (on the input layer) through the circuit; returns the
/// density matrix on the output layer.
Matrix evaluate_circuit(const CircuitPlan& plan, const ParameterVector& params, const Matrix& rho_in);

/// Per-perceptron composed gate matrices of a standard plan: input u gates are
/// folded into U_1^l and the final output u gates into U_j^{L+1}.
dqnn::PerceptronSet composed_perceptrons(const CircuitPlan& plan, const ParameterVector& params);

using LossFn = std::function<double(const ParameterVector&)>;

/// Central differences (L(w + h e_k) - L(w - h e_k)) / 2h.
ParameterVector fd_gradient(const LossFn& loss, const ParameterVector& params, double fd_step);

ParameterVector random_parameters(int count, linalg::Rng& rng);

/// Generator and discriminator circuits with their parameter vectors.
struct CircuitGan {
  CircuitPlan generator;
  CircuitPlan discriminator;
  ParameterVector generator_params;
  ParameterVector discriminator_params;

  static CircuitGan random(const CircuitPlan& generator, const CircuitPlan& discriminator, linalg::Rng& rng);

  Matrix generate(const Vector& input) const;
};

double loss_d(const CircuitGan& gan, std::span<const Vector> inputs, std::span<const Vector> training);
double loss_g(const CircuitGan& gan, std::span<const Vector> inputs);

struct CircuitHyper {
  int r_t = 440;
  int r_d = 4;
  int r_g = 1;
  int batch_size = 10;
  int validation_size = 100;
  double eta_d = 0.5;
  double eta_g = 0.1;
  double fd_step = 1e-3;

  void validate() const;
};

using CircuitEpochHook = std::function<void(int epoch, const CircuitGan&)>;

struct CircuitTrainResult {
  CircuitGan gan;
  std::vector<TrainingRecord> records;
};

/// Alternating gradient ascent on L_D (discriminator slots) and L_G
/// (generator slots); records use t = epoch * fd_step.
CircuitTrainResult train_dqgan_q(CircuitGan gan, const TrainingData& data, const CircuitHyper& hyper,
                                 std::uint64_t seed, const CircuitEpochHook& hook = {});

}  // namespace dqgan::pqc
