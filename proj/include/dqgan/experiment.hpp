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
#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqgan/datasets.hpp"
#include "dqgan/dqgan.hpp"

namespace dqgan::experiment {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "DQGAN_OUTPUT_DIR";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { exact, circuit };

/// Flat key=value run settings.
struct ExperimentConfig {
  Mode mode = Mode::exact;
  std::string architecture = "1-1|1-1";
  std::string dataset = "line";
  int n = 50;
  /// Dataset the histograms are measured against; empty means `dataset`.
  std::string histogram_dataset;
  datasets::Selection selection = datasets::Selection::random;
  int s = 10;
  int v = 100;
  int r_t = 1000;
  int r_d = 1;
  int r_g = 1;
  double eta = 1.0;
  double epsilon = 0.01;
  double eta_d = 0.5;
  double eta_g = 0.1;
  double fd_step = 1e-3;
  std::uint64_t seed = 1;
  std::string output_dir;
  std::vector<int> histogram_epochs;
  int sample_count = 100;

  /// Parses a config file body. `source` names the origin in error messages.
  static ExperimentConfig parse(std::istream& in, std::string_view source = "config");
  static ExperimentConfig load(const std::filesystem::path& path);

  /// Applies one `key=value` assignment; throws ConfigError on bad input.
  void set(std::string_view assignment, std::string_view where = "--set");

  /// Throws ConfigError when the settings are inconsistent.
  void validate() const;

  std::string generator_architecture() const;
  std::string discriminator_architecture() const;

  /// Output directory after applying the environment default.
  std::filesystem::path resolved_output_dir() const;

  /// Every key in canonical order, one `key=value` per line.
  std::string to_text() const;
};

/// The loss records and per-epoch histograms of one run.
struct RunSummary {
  std::vector<TrainingRecord> records;
  std::map<int, Histogram> histograms;
};

/// Trains per `config` and writes training.csv, the histogram CSVs and
/// config_resolved into the output directory.
RunSummary run(const ExperimentConfig& config);

/// Trains to `epoch`, then writes bloch_epoch<k>.csv with (x, y, z) rows for
/// sample_count generated states. Returns the rows.
std::vector<Eigen::Vector3d> bloch(const ExperimentConfig& config, int epoch);

/// "%.12g" formatting used for every emitted float.
std::string format_double(double value);

}  // namespace dqgan::experiment
