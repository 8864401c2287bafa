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

#include "dqgan/dqgan.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace dqgan {

linalg::Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words;
  words.push_back(static_cast<std::uint32_t>(seed));
  words.push_back(static_cast<std::uint32_t>(seed >> 32));
  for (auto t : tags) {
    words.push_back(static_cast<std::uint32_t>(t));
    words.push_back(static_cast<std::uint32_t>(t >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return linalg::Rng(seq);
}

std::vector<Vector> random_states(int count, int num_qubits, linalg::Rng& rng) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(linalg::random_pure_state(num_qubits, rng));
  return out;
}

dqnn::Architecture combine(const dqnn::Architecture& generator, const dqnn::Architecture& discriminator) {
  if (generator.output_width() != discriminator.input_width()) {
    throw std::invalid_argument("generator output width " + std::to_string(generator.output_width()) +
                                " does not match discriminator input width " +
                                std::to_string(discriminator.input_width()));
  }
  if (discriminator.output_width() != 1) {
    throw std::invalid_argument("discriminator output width must be 1, got " +
                                std::to_string(discriminator.output_width()));
  }
  std::vector<int> widths = generator.widths();
  widths.insert(widths.end(), discriminator.widths().begin() + 1, discriminator.widths().end());
  return dqnn::Architecture(std::move(widths));
}

DqganModel::DqganModel(dqnn::Architecture generator, dqnn::Architecture discriminator,
                       dqnn::PerceptronSet perceptrons)
    : generator_(std::move(generator)),
      discriminator_(std::move(discriminator)),
      perceptrons_(std::move(perceptrons)) {
  if (perceptrons_.architecture() != combine(generator_, discriminator_)) {
    throw std::invalid_argument("perceptron set does not match the combined architecture");
  }
}

DqganModel DqganModel::identity(const dqnn::Architecture& generator, const dqnn::Architecture& discriminator) {
  return DqganModel(generator, discriminator, dqnn::PerceptronSet::identity(combine(generator, discriminator)));
}

DqganModel DqganModel::random(const dqnn::Architecture& generator, const dqnn::Architecture& discriminator,
                              linalg::Rng& rng) {
  return DqganModel(generator, discriminator, dqnn::PerceptronSet::random(combine(generator, discriminator), rng));
}

Matrix DqganModel::generate(const Vector& input) const {
  if (input.size() != linalg::dim_of(generator_.input_width())) {
    throw std::invalid_argument("generator input has wrong width");
  }
  return dqnn::forward(linalg::outer(input), perceptrons_, 1, g());
}

Matrix discriminator_output(const DqganModel& model, const Vector& input, Branch branch) {
  if (branch == Branch::generated) {
    return dqnn::forward(model.generate(input), model.perceptrons(), model.g() + 1, model.num_layers());
  }
  if (input.size() != linalg::dim_of(model.discriminator().input_width())) {
    throw std::invalid_argument("training state width does not match discriminator input width");
  }
  return dqnn::forward(linalg::outer(input), model.perceptrons(), model.g() + 1, model.num_layers());
}

double loss_d(const DqganModel& model, std::span<const Vector> inputs, std::span<const Vector> training) {
  if (inputs.empty() || training.empty()) throw std::invalid_argument("loss_d: empty batch");
  if (inputs.size() != training.size()) throw std::invalid_argument("loss_d: batch sizes differ");
  double generated = 0.0;
  for (const auto& psi : inputs) generated += discriminator_output(model, psi, Branch::generated)(0, 0).real();
  double real = 0.0;
  for (const auto& phi : training) real += discriminator_output(model, phi, Branch::training)(1, 1).real();
  return generated / static_cast<double>(inputs.size()) + real / static_cast<double>(training.size());
}

double loss_g(const DqganModel& model, std::span<const Vector> inputs) {
  if (inputs.empty()) throw std::invalid_argument("loss_g: empty batch");
  double total = 0.0;
  for (const auto& psi : inputs) total += discriminator_output(model, psi, Branch::generated)(1, 1).real();
  return total / static_cast<double>(inputs.size());
}

void TrainHyper::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (batch_size < 1) throw std::invalid_argument("batch size S must be at least 1");
  if (validation_size < 1) throw std::invalid_argument("validation size V must be at least 1");
  if (r_t < 0 || r_d < 0 || r_g < 0) throw std::invalid_argument("round counts must be non-negative");
}

namespace {

std::pair<int, int> side_layers(const DqganModel& model, Side side) {
  return side == Side::generator ? std::pair{1, model.g()} : std::pair{model.g() + 1, model.num_layers()};
}

Matrix summed_outer(std::span<const Vector> states) {
  Matrix sum = Matrix::Zero(states.front().size(), states.front().size());
  for (const auto& s : states) sum += linalg::outer(s);
  return sum;
}

}  // namespace

std::vector<std::vector<Matrix>> commutator_sums(const DqganModel& model, Side side, std::span<const Vector> inputs,
                                                 std::span<const Vector> training) {
  if (inputs.empty()) throw std::invalid_argument("update: empty input batch");
  if (side == Side::discriminator && training.size() != inputs.size()) {
    throw std::invalid_argument("update: training and input batches must both have S states");
  }
  const auto& ps = model.perceptrons();
  const auto& arch = ps.architecture();
  const auto [first, last] = side_layers(model, side);

  // M_j^l is linear in the input density matrix and the observable chain does
  // not depend on x, so the batch sum is taken on the states up front.
  Matrix state;
  if (side == Side::generator) {
    state = summed_outer(inputs);
  } else {
    Matrix generated = Matrix::Zero(linalg::dim_of(arch.width(model.g())), linalg::dim_of(arch.width(model.g())));
    for (const auto& psi : inputs) generated += model.generate(psi);
    state = summed_outer(training) - generated;
  }

  // Observables |1><1| pulled back onto each layer l in [first, last].
  std::vector<Matrix> observable(static_cast<std::size_t>(last - first + 1));
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(1, 1) = 1.0;
  for (int l = model.num_layers(); l >= first; --l) {
    if (l <= last) observable[static_cast<std::size_t>(l - first)] = sigma;
    sigma = dqnn::adjoint_layer_map(sigma, l, ps);
  }

  std::vector<std::vector<Matrix>> sums;
  for (int l = first; l <= last; ++l) {
    const int in = arch.width(l - 1);
    const int out = arch.width(l);
    std::vector<Matrix> embedded;
    for (int j = 1; j <= out; ++j) embedded.push_back(ps.embedded(l, j));

    // B_j = U_{j+1}^dag ... U_{m_l}^dag (1 (x) sigma^l) U_{m_l} ... U_{j+1}
    std::vector<Matrix> chain(static_cast<std::size_t>(out));
    Matrix b = linalg::kron(Matrix::Identity(linalg::dim_of(in), linalg::dim_of(in)),
                            observable[static_cast<std::size_t>(l - first)]);
    for (int j = out; j >= 1; --j) {
      chain[static_cast<std::size_t>(j - 1)] = b;
      const auto& u = embedded[static_cast<std::size_t>(j - 1)];
      b = u.adjoint() * b * u;
    }

    std::vector<Matrix> layer_sums;
    Matrix a = linalg::kron(state, linalg::zero_projector(out));
    for (int j = 1; j <= out; ++j) {
      const auto& u = embedded[static_cast<std::size_t>(j - 1)];
      a = u * a * u.adjoint();
      const auto& bj = chain[static_cast<std::size_t>(j - 1)];
      const Matrix commutator = a * bj - bj * a;
      layer_sums.push_back(linalg::partial_trace(commutator, dqnn::perceptron_qubits(in, j)));
    }
    sums.push_back(std::move(layer_sums));

    if (l < last) state = dqnn::layer_map(state, l, ps);
  }
  return sums;
}

UpdateSet update_matrices(const DqganModel& model, Side side, std::span<const Vector> inputs,
                          std::span<const Vector> training, const TrainHyper& hyper) {
  hyper.validate();
  auto sums = commutator_sums(model, side, inputs, training);
  const auto [first, last] = side_layers(model, side);
  const double s = static_cast<double>(inputs.size());
  for (int l = first; l <= last; ++l) {
    const double prefactor = hyper.eta * std::ldexp(1.0, model.perceptrons().architecture().width(l - 1)) / (2.0 * s);
    for (auto& m : sums[static_cast<std::size_t>(l - first)]) {
      m *= linalg::kI * prefactor;
      m = (m + m.adjoint()).eval() / 2.0;
    }
  }
  return UpdateSet{side, first, std::move(sums)};
}

Matrix update_matrix(const DqganModel& model, int layer, int j, std::span<const Vector> inputs,
                     std::span<const Vector> training, const TrainHyper& hyper) {
  if (layer < 1 || layer > model.num_layers()) throw std::out_of_range("update_matrix: layer out of range");
  if (j < 1 || j > model.perceptrons().architecture().width(layer)) {
    throw std::out_of_range("update_matrix: perceptron out of range");
  }
  const Side side = layer <= model.g() ? Side::generator : Side::discriminator;
  const auto updates = update_matrices(model, side, inputs, training, hyper);
  return updates.k[static_cast<std::size_t>(layer - updates.first_layer)][static_cast<std::size_t>(j - 1)];
}

double predicted_rate(const DqganModel& model, const UpdateSet& updates, std::span<const Vector> inputs,
                      std::span<const Vector> training) {
  const auto sums = commutator_sums(model, updates.side, inputs, training);
  linalg::Complex rate = 0.0;
  for (std::size_t l = 0; l < sums.size(); ++l) {
    for (std::size_t j = 0; j < sums[l].size(); ++j) rate += (sums[l][j] * updates.k[l][j]).trace();
  }
  return (linalg::kI * rate / static_cast<double>(inputs.size())).real();
}

DqganModel apply_updates(const DqganModel& model, const UpdateSet& updates, double epsilon) {
  DqganModel next = model;
  const auto [first, last] = side_layers(model, updates.side);
  if (updates.first_layer != first || static_cast<int>(updates.k.size()) != last - first + 1) {
    throw std::invalid_argument("apply_updates: update set does not cover the chosen sub-network");
  }
  for (int l = first; l <= last; ++l) {
    const auto& layer = updates.k[static_cast<std::size_t>(l - first)];
    if (static_cast<int>(layer.size()) != next.perceptrons().count(l)) {
      throw std::invalid_argument("apply_updates: wrong perceptron count in layer " + std::to_string(l));
    }
    for (int j = 1; j <= next.perceptrons().count(l); ++j) {
      auto& u = next.perceptrons().at(l, j);
      u = linalg::exp_i_hermitian(layer[static_cast<std::size_t>(j - 1)], epsilon) * u;
    }
  }
  if (!next.perceptrons().all_unitary()) throw std::runtime_error("apply_updates: perceptron lost unitarity");
  return next;
}

int nearest_index(const Matrix& rho, std::span<const Vector> dataset) {
  int best = 0;
  double best_f = -1.0;
  for (std::size_t x = 0; x < dataset.size(); ++x) {
    const double f = linalg::fidelity(dataset[x], rho);
    if (f > best_f) {
      best_f = f;
      best = static_cast<int>(x);
    }
  }
  return best;
}

double validation_loss(std::span<const Matrix> generated, std::span<const Vector> dataset) {
  if (generated.empty() || dataset.empty()) throw std::invalid_argument("validation_loss: empty input");
  double total = 0.0;
  for (const auto& rho : generated) {
    double best = 0.0;
    for (const auto& phi : dataset) best = std::max(best, linalg::fidelity(phi, rho));
    total += best;
  }
  return total / static_cast<double>(generated.size());
}

double validation_loss(const DqganModel& model, std::span<const Vector> inputs, std::span<const Vector> dataset) {
  std::vector<Matrix> generated;
  for (const auto& psi : inputs) generated.push_back(model.generate(psi));
  return validation_loss(generated, dataset);
}

int Histogram::total() const {
  int sum = 0;
  for (int c : counts) sum += c;
  return sum;
}

int Histogram::support() const {
  return static_cast<int>(std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }));
}

Histogram histogram_of(std::span<const Matrix> generated, std::span<const Vector> dataset,
                       std::span<const int> training_indices) {
  Histogram h;
  h.counts.assign(dataset.size(), 0);
  h.is_training.assign(dataset.size(), false);
  for (int i : training_indices) h.is_training.at(static_cast<std::size_t>(i)) = true;
  for (const auto& rho : generated) ++h.counts[static_cast<std::size_t>(nearest_index(rho, dataset))];
  return h;
}

Histogram diversity_histogram(const DqganModel& model, int sample_count, std::span<const Vector> dataset,
                              std::span<const int> training_indices, linalg::Rng& rng) {
  if (sample_count < 1) throw std::invalid_argument("diversity_histogram: sample_count must be positive");
  std::vector<Matrix> generated;
  for (const auto& psi : random_states(sample_count, model.generator().input_width(), rng)) {
    generated.push_back(model.generate(psi));
  }
  return histogram_of(generated, dataset, training_indices);
}

std::vector<int> sample_batch(std::span<const int> pool, int batch_size, linalg::Rng& rng) {
  if (batch_size > static_cast<int>(pool.size())) {
    throw std::invalid_argument("batch size " + std::to_string(batch_size) + " exceeds training pool of " +
                                std::to_string(pool.size()));
  }
  std::vector<int> shuffled(pool.begin(), pool.end());
  // Partial Fisher-Yates; only the first batch_size slots are drawn.
  for (int i = 0; i < batch_size; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(shuffled.size()) - 1);
    std::swap(shuffled[static_cast<std::size_t>(i)], shuffled[static_cast<std::size_t>(pick(rng))]);
  }
  shuffled.resize(static_cast<std::size_t>(batch_size));
  return shuffled;
}

TrainResult train(DqganModel model, const TrainingData& data, const TrainHyper& hyper, std::uint64_t seed,
                  const ExactEpochHook& hook) {
  hyper.validate();
  if (hyper.batch_size > static_cast<int>(data.training_indices.size())) {
    throw std::invalid_argument("batch size S=" + std::to_string(hyper.batch_size) + " exceeds training pool N=" +
                                std::to_string(data.training_indices.size()));
  }
  const int in_width = model.generator().input_width();
  const auto epoch_inputs = [&](std::uint64_t tag, int epoch, int round, int count) {
    auto rng = derive_rng(seed, {tag, static_cast<std::uint64_t>(epoch), static_cast<std::uint64_t>(round)});
    return random_states(count, in_width, rng);
  };

  std::vector<TrainingRecord> records;
  for (int epoch = 1; epoch <= hyper.r_t; ++epoch) {
    auto batch_rng = derive_rng(seed, {stream::kBatch, static_cast<std::uint64_t>(epoch)});
    std::vector<Vector> training;
    for (int i : sample_batch(data.training_indices, hyper.batch_size, batch_rng)) {
      training.push_back(data.dataset.at(static_cast<std::size_t>(i)));
    }

    for (int r = 0; r < hyper.r_d; ++r) {
      const auto inputs = epoch_inputs(stream::kDiscriminator, epoch, r, hyper.batch_size);
      model = apply_updates(model, update_matrices(model, Side::discriminator, inputs, training, hyper), hyper.epsilon);
    }
    for (int r = 0; r < hyper.r_g; ++r) {
      const auto inputs = epoch_inputs(stream::kGenerator, epoch, r, hyper.batch_size);
      model = apply_updates(model, update_matrices(model, Side::generator, inputs, {}, hyper), hyper.epsilon);
    }

    const auto inputs = epoch_inputs(stream::kRecord, epoch, 0, hyper.batch_size);
    const auto validation_inputs = epoch_inputs(stream::kValidation, epoch, 0, hyper.validation_size);
    records.push_back(TrainingRecord{epoch, epoch * hyper.epsilon, loss_d(model, inputs, training),
                                     loss_g(model, inputs), validation_loss(model, validation_inputs, data.dataset)});
    if (hook) hook(epoch, model);
  }
  return TrainResult{std::move(model), std::move(records)};
}

}  // namespace dqgan
