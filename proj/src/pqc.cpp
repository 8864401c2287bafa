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

#include "dqgan/pqc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dqgan::pqc {
namespace {

using linalg::Complex;
using linalg::kI;

// exp(-i theta/2 P (x) P) for an involution P (x) P.
Matrix pair_rotation(const Matrix& pauli, double theta) {
  const Matrix pp = linalg::kron(pauli, pauli);
  return std::cos(theta / 2) * Matrix::Identity(4, 4) - kI * std::sin(theta / 2) * pp;
}

Matrix gate_matrix(const GateSpec& gate, const ParameterVector& params) {
  const double a = params(gate.slots[0]);
  const double b = params(gate.slots[1]);
  const double c = params(gate.slots[2]);
  return gate.kind == GateKind::can ? can_gate(a, b, c) : u3_gate(a, b, c);
}

// m <- u m, with u acting on the listed register positions.
void left_apply(Matrix& m, const Matrix& u, std::span<const int> positions, int n) {
  const int k = static_cast<int>(positions.size());
  const Eigen::Index local_dim = Eigen::Index{1} << k;
  std::vector<Eigen::Index> offsets(static_cast<std::size_t>(local_dim), 0);
  Eigen::Index mask = 0;
  for (int p : positions) mask |= Eigen::Index{1} << (n - 1 - p);
  for (Eigen::Index a = 0; a < local_dim; ++a) {
    for (int b = 0; b < k; ++b) {
      if ((a >> (k - 1 - b)) & 1) offsets[static_cast<std::size_t>(a)] |= Eigen::Index{1} << (n - 1 - positions[b]);
    }
  }
  linalg::Vector v(local_dim);
  for (Eigen::Index rest = 0; rest < m.rows(); ++rest) {
    if (rest & mask) continue;
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      for (Eigen::Index a = 0; a < local_dim; ++a) v(a) = m(rest | offsets[static_cast<std::size_t>(a)], col);
      const linalg::Vector w = u * v;
      for (Eigen::Index a = 0; a < local_dim; ++a) m(rest | offsets[static_cast<std::size_t>(a)], col) = w(a);
    }
  }
}

// rho <- u rho u^dag.
void conjugate(Matrix& rho, const Matrix& u, std::span<const int> positions, int n) {
  left_apply(rho, u, positions, n);
  rho.adjointInPlace();
  left_apply(rho, u, positions, n);
}

void check_slots(const GateSpec& gate, int total_params) {
  for (int s : gate.slots) {
    if (s < 0 || s >= total_params) throw std::out_of_range("gate parameter slot " + std::to_string(s) + " out of range");
  }
}

}  // namespace

Matrix can_gate(double tx, double ty, double tz) {
  const double pi = std::numbers::pi;
  return pair_rotation(linalg::pauli_x(), tx * pi) * pair_rotation(linalg::pauli_y(), ty * pi) *
         pair_rotation(linalg::pauli_z(), tz * pi);
}

Matrix u3_gate(double t1, double t2, double t3) {
  Matrix u(2, 2);
  const double c = std::cos(t1 / 2);
  const double s = std::sin(t1 / 2);
  u << c, -std::polar(1.0, t3) * s, std::polar(1.0, t2) * s, std::polar(1.0, t2 + t3) * c;
  return u;
}

std::vector<int> CircuitPlan::layer_qubits(int layer) const {
  int offset = 0;
  for (int l = 0; l < layer; ++l) offset += architecture.width(l);
  std::vector<int> qubits(static_cast<std::size_t>(architecture.width(layer)));
  std::iota(qubits.begin(), qubits.end(), offset);
  return qubits;
}

std::vector<GateSpec> CircuitPlan::gates() const {
  std::vector<GateSpec> out;
  for (const auto& step : steps) {
    if (const auto* g = std::get_if<GateSpec>(&step)) out.push_back(*g);
  }
  return out;
}

int standard_param_count(const dqnn::Architecture& arch) {
  int sum = 0;
  for (int l = 1; l <= arch.num_perceptron_layers(); ++l) sum += arch.width(l - 1) * (1 + arch.width(l));
  return 3 * arch.output_width() + 3 * sum;
}

CircuitPlan build_circuit(const dqnn::Architecture& arch, bool plus_variant) {
  CircuitPlan plan{arch, plus_variant, {}, 0};
  int next_slot = 0;
  const auto add_u3 = [&](int q) {
    plan.steps.emplace_back(GateSpec{GateKind::u3, {q}, {next_slot, next_slot + 1, next_slot + 2}});
    next_slot += 3;
  };
  const auto add_layer_unitary = [&](const std::vector<int>& in, const std::vector<int>& out) {
    for (int j : out) {
      for (int i : in) {
        plan.steps.emplace_back(GateSpec{GateKind::can, {i, j}, {next_slot, next_slot + 1, next_slot + 2}});
        next_slot += 3;
      }
    }
  };

  for (int l = 1; l <= arch.num_perceptron_layers(); ++l) {
    const auto in = plan.layer_qubits(l - 1);
    const auto out = plan.layer_qubits(l);
    for (int q : in) add_u3(q);
    add_layer_unitary(in, out);
    if (plus_variant) {
      for (int q : in) add_u3(q);
      for (int q : out) add_u3(q);
      add_layer_unitary(in, out);
    }
    plan.steps.emplace_back(TraceStep{in});
  }
  for (int q : plan.layer_qubits(arch.num_perceptron_layers())) add_u3(q);
  plan.total_params = next_slot;
  return plan;
}

std::pair<dqnn::Architecture, bool> parse_circuit_architecture(std::string_view text) {
  const bool plus = !text.empty() && text.back() == '+';
  if (plus) text.remove_suffix(1);
  return {dqnn::Architecture::parse(text), plus};
}

std::string circuit_architecture_string(const CircuitPlan& plan) {
  return plan.architecture.to_string() + (plan.plus_variant ? "+" : "");
}

std::string to_text(const CircuitPlan& plan) {
  std::ostringstream out;
  out << "# architecture " << circuit_architecture_string(plan) << '\n';
  for (const auto& step : plan.steps) {
    if (const auto* g = std::get_if<GateSpec>(&step)) {
      out << (g->kind == GateKind::can ? "CAN" : "U3");
      for (int q : g->qubits) out << ' ' << q;
      for (int s : g->slots) out << ' ' << s;
    } else {
      out << "TRACE";
      for (int q : std::get<TraceStep>(step).qubits) out << ' ' << q;
    }
    out << '\n';
  }
  return out.str();
}

CircuitPlan parse_plan(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  CircuitPlan plan;
  bool have_arch = false;
  int max_slot = -1;
  const auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("circuit plan line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    if (head == "#") {
      std::string key, value;
      if (words >> key >> value && key == "architecture") {
        std::tie(plan.architecture, plan.plus_variant) = parse_circuit_architecture(value);
        have_arch = true;
      }
      continue;
    }
    std::vector<int> numbers;
    std::string tok;
    while (words >> tok) {
      try {
        std::size_t used = 0;
        numbers.push_back(std::stoi(tok, &used));
        if (used != tok.size()) fail("bad integer '" + tok + "'");
      } catch (const std::logic_error&) {
        fail("bad integer '" + tok + "'");
      }
    }
    if (head == "CAN" || head == "U3") {
      const std::size_t nq = head == "CAN" ? 2 : 1;
      if (numbers.size() != nq + 3) fail(head + " expects " + std::to_string(nq + 3) + " integers");
      GateSpec g{head == "CAN" ? GateKind::can : GateKind::u3,
                 std::vector<int>(numbers.begin(), numbers.begin() + static_cast<long>(nq)),
                 {numbers[nq], numbers[nq + 1], numbers[nq + 2]}};
      if (nq == 2 && g.qubits[0] == g.qubits[1]) fail("CAN targets must be distinct");
      for (int s : g.slots) {
        if (s < 0) fail("negative slot");
        max_slot = std::max(max_slot, s);
      }
      plan.steps.emplace_back(std::move(g));
    } else if (head == "TRACE") {
      if (numbers.empty()) fail("TRACE needs at least one qubit");
      plan.steps.emplace_back(TraceStep{numbers});
    } else {
      fail("unknown instruction '" + head + "'");
    }
  }
  if (!have_arch) throw std::invalid_argument("circuit plan: missing '# architecture' header");
  plan.total_params = max_slot + 1;
  return plan;
}

Matrix evaluate_circuit(const CircuitPlan& plan, const ParameterVector& params, const Matrix& rho_in) {
  if (params.size() != plan.total_params) {
    throw std::invalid_argument("evaluate_circuit: expected " + std::to_string(plan.total_params) +
                                " parameters, got " + std::to_string(params.size()));
  }
  const int m0 = plan.architecture.input_width();
  if (rho_in.rows() != linalg::dim_of(m0) || rho_in.cols() != rho_in.rows()) {
    throw std::invalid_argument("evaluate_circuit: input state does not match the input layer width");
  }
  std::vector<int> live = plan.layer_qubits(0);
  Matrix rho = rho_in;
  const auto position = [&](int q) {
    auto it = std::find(live.begin(), live.end(), q);
    if (it == live.end()) {
      rho = linalg::kron(rho, linalg::zero_projector(1));
      live.push_back(q);
      return static_cast<int>(live.size()) - 1;
    }
    return static_cast<int>(it - live.begin());
  };

  for (const auto& step : plan.steps) {
    if (const auto* g = std::get_if<GateSpec>(&step)) {
      check_slots(*g, plan.total_params);
      std::vector<int> positions;
      for (int q : g->qubits) positions.push_back(position(q));
      conjugate(rho, gate_matrix(*g, params), positions, static_cast<int>(live.size()));
    } else {
      const auto& traced = std::get<TraceStep>(step).qubits;
      std::vector<int> keep;
      std::vector<int> kept_ids;
      for (std::size_t p = 0; p < live.size(); ++p) {
        if (std::find(traced.begin(), traced.end(), live[p]) == traced.end()) {
          keep.push_back(static_cast<int>(p));
          kept_ids.push_back(live[p]);
        }
      }
      rho = linalg::partial_trace(rho, keep);
      live = std::move(kept_ids);
    }
  }

  // Order the surviving register by circuit qubit number.
  std::vector<int> order(live.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return live[a] < live[b]; });
  Matrix out = linalg::partial_trace(rho, order);
  if (linalg::qubits_of(out.rows()) != plan.architecture.output_width()) {
    throw std::logic_error("evaluate_circuit: plan leaves the wrong number of live qubits");
  }
  return out;
}

dqnn::PerceptronSet composed_perceptrons(const CircuitPlan& plan, const ParameterVector& params) {
  if (plan.plus_variant) throw std::invalid_argument("composed_perceptrons: the enriched layout has no per-perceptron form");
  if (params.size() != plan.total_params) throw std::invalid_argument("composed_perceptrons: parameter count mismatch");
  const auto& arch = plan.architecture;
  const int last = arch.num_perceptron_layers();
  auto ps = dqnn::PerceptronSet::identity(arch);

  // Local qubit index inside U_j^l's register (inputs, then the output qubit).
  const auto local_index = [&](int layer, int q) -> int {
    const auto in = plan.layer_qubits(layer - 1);
    if (auto it = std::find(in.begin(), in.end(), q); it != in.end()) return static_cast<int>(it - in.begin());
    return static_cast<int>(in.size());
  };
  const auto output_index = [&](int layer, int q) {
    const auto out = plan.layer_qubits(layer);
    return static_cast<int>(std::find(out.begin(), out.end(), q) - out.begin()) + 1;
  };
  const auto layer_of = [&](int q) {
    for (int l = 0; l <= last; ++l) {
      const auto qs = plan.layer_qubits(l);
      if (std::find(qs.begin(), qs.end(), q) != qs.end()) return l;
    }
    throw std::out_of_range("qubit outside the architecture");
  };

  int layer = 1;
  for (const auto& step : plan.steps) {
    if (std::holds_alternative<TraceStep>(step)) {
      ++layer;
      continue;
    }
    const auto& g = std::get<GateSpec>(step);
    const Matrix m = gate_matrix(g, params);
    if (g.kind == GateKind::can) {
      const int j = output_index(layer, g.qubits[1]);
      const int in = arch.width(layer - 1);
      const std::vector<int> acting{local_index(layer, g.qubits[0]), local_index(layer, g.qubits[1])};
      auto& u = ps.at(layer, j);
      u = linalg::embed(m, acting, in + 1) * u;
    } else if (layer <= last) {
      // Input-layer u gates precede every CAN of this layer: fold into U_1^l.
      const int in = arch.width(layer - 1);
      const std::vector<int> acting{local_index(layer, g.qubits[0])};
      auto& u = ps.at(layer, 1);
      u = u * linalg::embed(m, acting, in + 1);
    } else {
      // Final u on output qubit j commutes with the later perceptrons of the
      // last layer, so it can be folded into U_j^{L+1}.
      if (layer_of(g.qubits[0]) != last) throw std::logic_error("unexpected gate after the last layer");
      const int j = output_index(last, g.qubits[0]);
      const int in = arch.width(last - 1);
      const std::vector<int> acting{in};
      auto& u = ps.at(last, j);
      u = linalg::embed(m, acting, in + 1) * u;
    }
  }
  return ps;
}

ParameterVector fd_gradient(const LossFn& loss, const ParameterVector& params, double fd_step) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_gradient: step must be positive");
  ParameterVector grad(params.size());
  ParameterVector probe = params;
  for (Eigen::Index k = 0; k < params.size(); ++k) {
    probe(k) = params(k) + fd_step;
    const double up = loss(probe);
    probe(k) = params(k) - fd_step;
    const double down = loss(probe);
    probe(k) = params(k);
    if (!std::isfinite(up) || !std::isfinite(down)) throw std::runtime_error("fd_gradient: non-finite loss");
    grad(k) = (up - down) / (2.0 * fd_step);
  }
  return grad;
}

ParameterVector random_parameters(int count, linalg::Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  ParameterVector p(count);
  for (int i = 0; i < count; ++i) p(i) = uniform(rng);
  return p;
}

CircuitGan CircuitGan::random(const CircuitPlan& generator, const CircuitPlan& discriminator, linalg::Rng& rng) {
  if (generator.architecture.output_width() != discriminator.architecture.input_width()) {
    throw std::invalid_argument("generator output width " + std::to_string(generator.architecture.output_width()) +
                                " does not match discriminator input width " +
                                std::to_string(discriminator.architecture.input_width()));
  }
  if (discriminator.architecture.output_width() != 1) {
    throw std::invalid_argument("discriminator output width must be 1");
  }
  auto gen_params = random_parameters(generator.total_params, rng);
  auto dis_params = random_parameters(discriminator.total_params, rng);
  return CircuitGan{generator, discriminator, std::move(gen_params), std::move(dis_params)};
}

Matrix CircuitGan::generate(const Vector& input) const {
  return evaluate_circuit(generator, generator_params, linalg::outer(input));
}

double loss_d(const CircuitGan& gan, std::span<const Vector> inputs, std::span<const Vector> training) {
  if (inputs.empty() || inputs.size() != training.size()) throw std::invalid_argument("loss_d: batches must both have S states");
  double total = 0.0;
  for (const auto& psi : inputs) {
    total += evaluate_circuit(gan.discriminator, gan.discriminator_params, gan.generate(psi))(0, 0).real();
  }
  for (const auto& phi : training) {
    total += evaluate_circuit(gan.discriminator, gan.discriminator_params, linalg::outer(phi))(1, 1).real();
  }
  return total / static_cast<double>(inputs.size());
}

double loss_g(const CircuitGan& gan, std::span<const Vector> inputs) {
  if (inputs.empty()) throw std::invalid_argument("loss_g: empty batch");
  double total = 0.0;
  for (const auto& psi : inputs) {
    total += evaluate_circuit(gan.discriminator, gan.discriminator_params, gan.generate(psi))(1, 1).real();
  }
  return total / static_cast<double>(inputs.size());
}

void CircuitHyper::validate() const {
  if (!(eta_d > 0.0) || !(eta_g > 0.0)) throw std::invalid_argument("learning rates must be positive");
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  if (batch_size < 1 || validation_size < 1) throw std::invalid_argument("S and V must be at least 1");
  if (r_t < 0 || r_d < 0 || r_g < 0) throw std::invalid_argument("round counts must be non-negative");
}

CircuitTrainResult train_dqgan_q(CircuitGan gan, const TrainingData& data, const CircuitHyper& hyper,
                                 std::uint64_t seed, const CircuitEpochHook& hook) {
  hyper.validate();
  if (gan.generator.architecture.output_width() != gan.discriminator.architecture.input_width()) {
    throw std::invalid_argument("incompatible generator/discriminator plans");
  }
  if (hyper.batch_size > static_cast<int>(data.training_indices.size())) {
    throw std::invalid_argument("batch size exceeds training pool");
  }
  const int in_width = gan.generator.architecture.input_width();
  const auto epoch_inputs = [&](std::uint64_t tag, int epoch, int round, int count) {
    auto rng = derive_rng(seed, {tag, static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(round)});
    return random_states(count, in_width, rng);
  };
  const double s = static_cast<double>(hyper.batch_size);

  std::vector<TrainingRecord> records;
  for (int epoch = 1; epoch <= hyper.r_t; ++epoch) {
    auto batch_rng = derive_rng(seed, {stream::kBatch, static_cast<std::uint64_t>(epoch)});
    std::vector<Matrix> training;
    std::vector<Vector> training_states;
    for (int i : sample_batch(data.training_indices, hyper.batch_size, batch_rng)) {
      training_states.push_back(data.dataset.at(static_cast<std::size_t>(i)));
      training.push_back(linalg::outer(training_states.back()));
    }

    for (int r = 0; r < hyper.r_d; ++r) {
      std::vector<Matrix> generated;
      for (const auto& psi : epoch_inputs(stream::kDiscriminator, epoch, r, hyper.batch_size)) {
        generated.push_back(gan.generate(psi));
      }
      const LossFn loss = [&](const ParameterVector& w) {
        double total = 0.0;
        for (const auto& rho : generated) total += evaluate_circuit(gan.discriminator, w, rho)(0, 0).real();
        for (const auto& rho : training) total += evaluate_circuit(gan.discriminator, w, rho)(1, 1).real();
        return total / s;
      };
      gan.discriminator_params += hyper.eta_d * fd_gradient(loss, gan.discriminator_params, hyper.fd_step);
    }
    for (int r = 0; r < hyper.r_g; ++r) {
      std::vector<Matrix> inputs;
      for (const auto& psi : epoch_inputs(stream::kGenerator, epoch, r, hyper.batch_size)) {
        inputs.push_back(linalg::outer(psi));
      }
      const LossFn loss = [&](const ParameterVector& w) {
        double total = 0.0;
        for (const auto& rho : inputs) {
          total += evaluate_circuit(gan.discriminator, gan.discriminator_params, evaluate_circuit(gan.generator, w, rho))(1, 1)
                       .real();
        }
        return total / s;
      };
      gan.generator_params += hyper.eta_g * fd_gradient(loss, gan.generator_params, hyper.fd_step);
    }

    const auto inputs = epoch_inputs(stream::kRecord, epoch, 0, hyper.batch_size);
    std::vector<Matrix> generated;
    for (const auto& psi : epoch_inputs(stream::kValidation, epoch, 0, hyper.validation_size)) {
      generated.push_back(gan.generate(psi));
    }
    records.push_back(TrainingRecord{epoch, epoch * hyper.fd_step, loss_d(gan, inputs, training_states),
                                     loss_g(gan, inputs), validation_loss(generated, data.dataset)});
    if (hook) hook(epoch, gan);
  }
  return CircuitTrainResult{std::move(gan), std::move(records)};
}

}  // namespace dqgan::pqc
