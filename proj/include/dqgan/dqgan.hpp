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

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "dqgan/datasets.hpp"
#include "dqgan/dqnn.hpp"
#include "dqgan/linalg.hpp"

namespace dqgan {

using linalg::Matrix;
using linalg::Vector;

/// Independent generator stream for a (seed, tag...) coordinate.
linalg::Rng derive_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

std::vector<Vector> random_states(int count, int num_qubits, linalg::Rng& rng);

/// Generator and discriminator sharing the seam layer.
///
/// The combined network has layer widths gen[0..g] followed by dis[1..]; its
/// perceptron layers 1..g belong to the generator, g+1..L+1 to the
/// discriminator.
class DqganModel {
 public:
  DqganModel(dqnn::Architecture generator, dqnn::Architecture discriminator, dqnn::PerceptronSet perceptrons);

  static DqganModel identity(const dqnn::Architecture& generator, const dqnn::Architecture& discriminator);
  static DqganModel random(const dqnn::Architecture& generator, const dqnn::Architecture& discriminator,
                           linalg::Rng& rng);

  const dqnn::Architecture& generator() const { return generator_; }
  const dqnn::Architecture& discriminator() const { return discriminator_; }
  const dqnn::PerceptronSet& perceptrons() const { return perceptrons_; }
  dqnn::PerceptronSet& perceptrons() { return perceptrons_; }
  /// Index of the last generator perceptron layer.
  int g() const { return generator_.num_perceptron_layers(); }
  int num_layers() const { return perceptrons_.architecture().num_perceptron_layers(); }

  /// Generator output E_G(|psi><psi|).
  Matrix generate(const Vector& input) const;

 private:
  dqnn::Architecture generator_;
  dqnn::Architecture discriminator_;
  dqnn::PerceptronSet perceptrons_;
};

/// Combined layer widths: generator widths followed by the discriminator's
/// non-input widths. Throws when the seam widths differ.
dqnn::Architecture combine(const dqnn::Architecture& generator, const dqnn::Architecture& discriminator);

enum class Branch { generated, training };
enum class Side { generator, discriminator };

/// One-qubit discriminator output for generated data (input fed to the
/// generator) or training data (input fed straight to the discriminator).
Matrix discriminator_output(const DqganModel& model, const Vector& input, Branch branch);

double loss_d(const DqganModel& model, std::span<const Vector> inputs, std::span<const Vector> training);
double loss_g(const DqganModel& model, std::span<const Vector> inputs);

struct TrainHyper {
  int r_t = 1000;
  int r_d = 1;
  int r_g = 1;
  int batch_size = 10;       // S
  int validation_size = 100;  // V
  double eta = 1.0;
  double epsilon = 0.01;

  double lambda() const { return 1.0 / eta; }
  void validate() const;
};

/// Update generators K_j^l for every perceptron on one side, indexed
/// [l - first_layer][j - 1].
struct UpdateSet {
  Side side;
  int first_layer;
  std::vector<std::vector<Matrix>> k;
};

/// sum_x tr_rest(M_j^l(x)) for every perceptron of one side. Each entry is
/// anti-Hermitian; the training batch is only used on the discriminator side.
std::vector<std::vector<Matrix>> commutator_sums(const DqganModel& model, Side side, std::span<const Vector> inputs,
                                                 std::span<const Vector> training);

/// K_j^l = eta 2^{m_{l-1}} i / (2S) sum_x tr_rest(M_j^l(x)).
UpdateSet update_matrices(const DqganModel& model, Side side, std::span<const Vector> inputs,
                          std::span<const Vector> training, const TrainHyper& hyper);

/// Single-perceptron view of update_matrices.
Matrix update_matrix(const DqganModel& model, int layer, int j, std::span<const Vector> inputs,
                     std::span<const Vector> training, const TrainHyper& hyper);

/// Predicted first-order rate dL/dt = (i/S) sum_x sum_{l,j} tr(M_j^l(x) K_j^l)
/// of L_D (discriminator side) or L_G (generator side).
double predicted_rate(const DqganModel& model, const UpdateSet& updates, std::span<const Vector> inputs,
                      std::span<const Vector> training);

/// U_j^l <- exp(i epsilon K_j^l) U_j^l for every perceptron of the update's side.
DqganModel apply_updates(const DqganModel& model, const UpdateSet& updates, double epsilon);

/// Mean over generated outputs of the best fidelity to any dataset state.
double validation_loss(std::span<const Matrix> generated, std::span<const Vector> dataset);
double validation_loss(const DqganModel& model, std::span<const Vector> inputs, std::span<const Vector> dataset);

/// Per-index nearest-state counts, split by training membership.
struct Histogram {
  std::vector<int> counts;
  std::vector<bool> is_training;

  int total() const;
  /// Number of indices with a nonzero count.
  int support() const;
};

/// Index of the dataset state with highest fidelity; lowest index wins ties.
int nearest_index(const Matrix& rho, std::span<const Vector> dataset);

Histogram histogram_of(std::span<const Matrix> generated, std::span<const Vector> dataset,
                       std::span<const int> training_indices);

Histogram diversity_histogram(const DqganModel& model, int sample_count, std::span<const Vector> dataset,
                              std::span<const int> training_indices, linalg::Rng& rng);

struct TrainingRecord {
  int epoch = 0;
  double t = 0.0;
  double loss_d = 0.0;
  double loss_g = 0.0;
  double loss_v = 0.0;
};

/// Training states plus the full dataset they were drawn from.
struct TrainingData {
  std::vector<Vector> dataset;
  /// Pool of training-state indices into `dataset`.
  std::vector<int> training_indices;
};

using ExactEpochHook = std::function<void(int epoch, const DqganModel&)>;

struct TrainResult {
  DqganModel model;
  std::vector<TrainingRecord> records;
};

/// Alternating discriminator/generator training with commutator-based unitary
/// updates. Deterministic in `seed`; `hook` runs after every epoch.
TrainResult train(DqganModel model, const TrainingData& data, const TrainHyper& hyper, std::uint64_t seed,
                  const ExactEpochHook& hook = {});

/// Random-stream tags shared by the exact and circuit trainers.
namespace stream {
inline constexpr std::uint64_t kBatch = 1;
inline constexpr std::uint64_t kDiscriminator = 2;
inline constexpr std::uint64_t kGenerator = 3;
inline constexpr std::uint64_t kRecord = 4;
inline constexpr std::uint64_t kValidation = 5;
inline constexpr std::uint64_t kHistogram = 6;
inline constexpr std::uint64_t kBloch = 7;
inline constexpr std::uint64_t kInit = 8;
}  // namespace stream

/// S training-state indices drawn without replacement from the pool.
std::vector<int> sample_batch(std::span<const int> pool, int batch_size, linalg::Rng& rng);

}  // namespace dqgan
