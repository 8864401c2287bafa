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


#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqgan/experiment.hpp"

namespace {

dqgan::experiment::ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  auto config = dqgan::experiment::ExperimentConfig::load(path);
  for (const auto& assignment : overrides) config.set(assignment, "--set " + assignment);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative quantum GAN training runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  int epoch = 0;

  auto* run = app.add_subcommand("run", "Train and write training.csv, histograms and config_resolved");
  run->add_option("config", config_path, "Config file (key=value lines)")->required()->check(CLI::ExistingFile);
  run->add_option("--set", overrides, "Override a config key, e.g. --set seed=3")->take_all();

  auto* bloch = app.add_subcommand("bloch", "Write Bloch coordinates of generated states at an epoch");
  bloch->add_option("config", config_path, "Config file (key=value lines)")->required()->check(CLI::ExistingFile);
  bloch->add_option("--epoch", epoch, "Epoch to export")->required()->check(CLI::NonNegativeNumber);
  bloch->add_option("--set", overrides, "Override a config key")->take_all();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = load_config(config_path, overrides);
    if (*run) {
      const auto summary = dqgan::experiment::run(config);
      std::printf("wrote %zu epochs to %s\n", summary.records.size(), config.resolved_output_dir().c_str());
    } else {
      const auto rows = dqgan::experiment::bloch(config, epoch);
      std::printf("wrote %zu Bloch vectors to %s\n", rows.size(), config.resolved_output_dir().c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
