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

#include "dqgan/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dqgan/pqc.hpp"

namespace dqgan::experiment {
namespace {

constexpr std::uint64_t kSplitStream = 9;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || end != value.data() + value.size()) {
    throw std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(parse_number<int>(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

std::string training_csv(const std::vector<TrainingRecord>& records) {
  std::string out = "step_times_epsilon,costFunctionDis,costFunctionGen,costFunctionTest\n";
  for (const auto& r : records) {
    out += format_double(r.t) + ',' + format_double(r.loss_d) + ',' + format_double(r.loss_g) + ',' +
           format_double(r.loss_v) + '\n';
  }
  return out;
}

std::string histogram_csv(const Histogram& h, bool training) {
  std::string out = "indexData,countOut\n";
  for (std::size_t x = 0; x < h.counts.size(); ++x) {
    if (h.is_training[x] == training) out += std::to_string(x + 1) + ',' + std::to_string(h.counts[x]) + '\n';
  }
  return out;
}

// Everything a run needs besides the trainer itself.
struct Setup {
  datasets::StateDataset dataset;
  datasets::StateDataset histogram_reference;
  TrainingData data;
  std::vector<int> histogram_training;
};

Setup prepare(const ExperimentConfig& config) {
  Setup setup;
  setup.dataset = datasets::make(config.dataset, config.n);
  const bool same_reference = config.histogram_dataset.empty() || config.histogram_dataset == config.dataset;
  setup.histogram_reference = same_reference ? setup.dataset : datasets::make(config.histogram_dataset, config.n);
  auto split_rng = derive_rng(config.seed, {kSplitStream});
  const auto split = datasets::select_training(setup.dataset.size(), config.s, config.selection, split_rng);
  setup.data = TrainingData{setup.dataset.states, split.training};
  if (same_reference) setup.histogram_training = split.training;
  return setup;
}

dqnn::Architecture exact_architecture(const std::string& text) {
  if (!text.empty() && text.back() == '+') {
    throw ConfigError("architecture '" + text + "': the '+' layout is only available in circuit mode");
  }
  return dqnn::Architecture::parse(text);
}

std::vector<Vector> histogram_inputs(const ExperimentConfig& config, std::uint64_t tag, int epoch, int width) {
  auto rng = derive_rng(config.seed, {tag, static_cast<std::uint64_t>(epoch)});
  return random_states(config.sample_count, width, rng);
}

// Calls `on_epoch(epoch, generator)` for epoch 0 and after each training
// epoch, where `generator` maps an input state to the generated density matrix.
template <typename OnEpoch>
std::vector<TrainingRecord> train_any(const ExperimentConfig& config, const Setup& setup, int epochs,
                                      OnEpoch&& on_epoch) {
  const auto [gen_text, dis_text] = std::pair{config.generator_architecture(), config.discriminator_architecture()};
  auto init_rng = derive_rng(config.seed, {stream::kInit});
  if (config.mode == Mode::exact) {
    const auto gen = exact_architecture(gen_text);
    const auto dis = exact_architecture(dis_text);
    auto model = DqganModel::random(gen, dis, init_rng);
    TrainHyper hyper{epochs, config.r_d, config.r_g, config.s, config.v, config.eta, config.epsilon};
    const auto view = [](const DqganModel& m) { return [&m](const Vector& psi) { return m.generate(psi); }; };
    on_epoch(0, view(model), gen.input_width(), gen.output_width());
    return train(std::move(model), setup.data, hyper, config.seed,
                 [&](int epoch, const DqganModel& m) { on_epoch(epoch, view(m), gen.input_width(), gen.output_width()); })
        .records;
  }
  const auto [gen_arch, gen_plus] = pqc::parse_circuit_architecture(gen_text);
  const auto [dis_arch, dis_plus] = pqc::parse_circuit_architecture(dis_text);
  auto gan = pqc::CircuitGan::random(pqc::build_circuit(gen_arch, gen_plus), pqc::build_circuit(dis_arch, dis_plus),
                                     init_rng);
  pqc::CircuitHyper hyper{epochs, config.r_d, config.r_g, config.s, config.v, config.eta_d, config.eta_g, config.fd_step};
  const auto view = [](const pqc::CircuitGan& g) { return [&g](const Vector& psi) { return g.generate(psi); }; };
  on_epoch(0, view(gan), gen_arch.input_width(), gen_arch.output_width());
  return pqc::train_dqgan_q(std::move(gan), setup.data, hyper, config.seed,
                            [&](int epoch, const pqc::CircuitGan& g) {
                              on_epoch(epoch, view(g), gen_arch.input_width(), gen_arch.output_width());
                            })
      .records;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

ExperimentConfig ExperimentConfig::parse(std::istream& in, std::string_view source) {
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    config.set(body, std::string(source) + ":" + std::to_string(line_no));
  }
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse(in, path.string());
}

void ExperimentConfig::set(std::string_view assignment, std::string_view where) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(std::string(where) + ": expected key=value, got '" + std::string(assignment) + "'");
  }
  const std::string key(trim(assignment.substr(0, eq)));
  const std::string_view value = trim(assignment.substr(eq + 1));
  try {
    if (key == "mode") {
      if (value == "exact") mode = Mode::exact;
      else if (value == "circuit") mode = Mode::circuit;
      else throw std::invalid_argument("mode must be exact or circuit");
    } else if (key == "architecture") {
      architecture = value;
    } else if (key == "dataset") {
      dataset = value;
    } else if (key == "N") {
      n = parse_number<int>(key, value);
    } else if (key == "histogram_dataset") {
      histogram_dataset = value;
    } else if (key == "selection") {
      selection = datasets::parse_selection(value);
    } else if (key == "S") {
      s = parse_number<int>(key, value);
    } else if (key == "V") {
      v = parse_number<int>(key, value);
    } else if (key == "r_T") {
      r_t = parse_number<int>(key, value);
    } else if (key == "r_D") {
      r_d = parse_number<int>(key, value);
    } else if (key == "r_G") {
      r_g = parse_number<int>(key, value);
    } else if (key == "eta") {
      eta = parse_number<double>(key, value);
    } else if (key == "epsilon") {
      epsilon = parse_number<double>(key, value);
    } else if (key == "eta_D") {
      eta_d = parse_number<double>(key, value);
    } else if (key == "eta_G") {
      eta_g = parse_number<double>(key, value);
    } else if (key == "fd_step") {
      fd_step = parse_number<double>(key, value);
    } else if (key == "seed") {
      seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "output_dir") {
      output_dir = value;
    } else if (key == "histogram_epochs") {
      histogram_epochs = parse_int_list(key, value);
    } else if (key == "sample_count") {
      sample_count = parse_number<int>(key, value);
    } else {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(where) + ": " + e.what());
  }
}

std::string ExperimentConfig::generator_architecture() const {
  const auto bar = architecture.find('|');
  if (bar == std::string::npos) throw ConfigError("architecture '" + architecture + "' must look like gen|dis");
  return std::string(trim(std::string_view(architecture).substr(0, bar)));
}

std::string ExperimentConfig::discriminator_architecture() const {
  const auto bar = architecture.find('|');
  if (bar == std::string::npos) throw ConfigError("architecture '" + architecture + "' must look like gen|dis");
  return std::string(trim(std::string_view(architecture).substr(bar + 1)));
}

void ExperimentConfig::validate() const {
  try {
    const auto gen_text = generator_architecture();
    const auto dis_text = discriminator_architecture();
    dqnn::Architecture gen, dis;
    if (mode == Mode::exact) {
      gen = exact_architecture(gen_text);
      dis = exact_architecture(dis_text);
    } else {
      gen = pqc::parse_circuit_architecture(gen_text).first;
      dis = pqc::parse_circuit_architecture(dis_text).first;
    }
    if (gen.output_width() != dis.input_width()) {
      throw ConfigError("incompatible seam: generator output width " + std::to_string(gen.output_width()) +
                        " vs discriminator input width " + std::to_string(dis.input_width()));
    }
    if (dis.output_width() != 1) {
      throw ConfigError("discriminator output width must be 1, got " + std::to_string(dis.output_width()));
    }
    const auto ds = datasets::make(dataset, n);
    if (ds.num_qubits != gen.output_width()) {
      throw ConfigError("dataset '" + dataset + "' has " + std::to_string(ds.num_qubits) +
                        "-qubit states but the generator outputs " + std::to_string(gen.output_width()));
    }
    if (!histogram_dataset.empty() && datasets::make(histogram_dataset, n).num_qubits != ds.num_qubits) {
      throw ConfigError("histogram_dataset width differs from dataset width");
    }
    if (s < 1 || s > ds.size()) {
      throw ConfigError("S=" + std::to_string(s) + " must lie in [1, " + std::to_string(ds.size()) + "]");
    }
    if (v < 1 || sample_count < 1) throw ConfigError("V and sample_count must be positive");
    if (r_t < 0 || r_d < 0 || r_g < 0) throw ConfigError("round counts must be non-negative");
    if (mode == Mode::exact && (!(eta > 0) || !(epsilon > 0))) throw ConfigError("eta and epsilon must be positive");
    if (mode == Mode::circuit && (!(eta_d > 0) || !(eta_g > 0) || !(fd_step > 0))) {
      throw ConfigError("eta_D, eta_G and fd_step must be positive");
    }
    for (int e : histogram_epochs) {
      if (e < 0) throw ConfigError("histogram epochs must be non-negative");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

std::filesystem::path ExperimentConfig::resolved_output_dir() const {
  if (!output_dir.empty()) return output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "out";
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  out << "mode=" << (mode == Mode::exact ? "exact" : "circuit") << '\n'
      << "architecture=" << architecture << '\n'
      << "dataset=" << dataset << '\n'
      << "N=" << n << '\n'
      << "histogram_dataset=" << (histogram_dataset.empty() ? dataset : histogram_dataset) << '\n'
      << "selection=" << datasets::to_string(selection) << '\n'
      << "S=" << s << '\n'
      << "V=" << v << '\n'
      << "r_T=" << r_t << '\n'
      << "r_D=" << r_d << '\n'
      << "r_G=" << r_g << '\n'
      << "eta=" << format_double(eta) << '\n'
      << "epsilon=" << format_double(epsilon) << '\n'
      << "eta_D=" << format_double(eta_d) << '\n'
      << "eta_G=" << format_double(eta_g) << '\n'
      << "fd_step=" << format_double(fd_step) << '\n'
      << "seed=" << seed << '\n'
      << "output_dir=" << resolved_output_dir().string() << '\n'
      << "histogram_epochs=";
  for (std::size_t i = 0; i < histogram_epochs.size(); ++i) out << (i ? "," : "") << histogram_epochs[i];
  out << '\n' << "sample_count=" << sample_count << '\n';
  return out.str();
}

RunSummary run(const ExperimentConfig& config) {
  config.validate();
  const Setup setup = prepare(config);
  const auto dir = config.resolved_output_dir();
  std::filesystem::create_directories(dir);
  write_file(dir / "config_resolved", config.to_text());

  if (config.mode == Mode::circuit) {
    for (const auto& [name, text] : {std::pair{"generator_plan.txt", config.generator_architecture()},
                                     std::pair{"discriminator_plan.txt", config.discriminator_architecture()}}) {
      const auto [arch, plus] = pqc::parse_circuit_architecture(text);
      write_file(dir / name, pqc::to_text(pqc::build_circuit(arch, plus)));
    }
  }

  RunSummary summary;
  const auto wanted = [&](int epoch) {
    return std::find(config.histogram_epochs.begin(), config.histogram_epochs.end(), epoch) !=
           config.histogram_epochs.end();
  };
  summary.records = train_any(config, setup, config.r_t, [&](int epoch, auto generator, int in_width, int) {
    if (!wanted(epoch)) return;
    std::vector<Matrix> generated;
    for (const auto& psi : histogram_inputs(config, stream::kHistogram, epoch, in_width)) {
      generated.push_back(generator(psi));
    }
    auto h = histogram_of(generated, setup.histogram_reference.states, setup.histogram_training);
    const std::string stem = "statistics_epoch" + std::to_string(epoch);
    write_file(dir / (stem + "_training.csv"), histogram_csv(h, true));
    write_file(dir / (stem + "_validation.csv"), histogram_csv(h, false));
    summary.histograms.emplace(epoch, std::move(h));
  });
  write_file(dir / "training.csv", training_csv(summary.records));
  return summary;
}

std::vector<Eigen::Vector3d> bloch(const ExperimentConfig& config, int epoch) {
  config.validate();
  if (epoch < 0) throw ConfigError("bloch epoch must be non-negative");
  const Setup setup = prepare(config);
  std::vector<Eigen::Vector3d> rows;
  train_any(config, setup, epoch, [&](int e, auto generator, int in_width, int out_width) {
    if (e != epoch) return;
    if (out_width != 1) {
      throw ConfigError("bloch export needs a one-qubit generator output, got " + std::to_string(out_width) + " qubits");
    }
    for (const auto& psi : histogram_inputs(config, stream::kBloch, epoch, in_width)) {
      rows.push_back(linalg::bloch_vector(generator(psi)));
    }
  });
  const auto dir = config.resolved_output_dir();
  std::filesystem::create_directories(dir);
  std::string body = "x,y,z\n";
  for (const auto& r : rows) body += format_double(r.x()) + ',' + format_double(r.y()) + ',' + format_double(r.z()) + '\n';
  write_file(dir / ("bloch_epoch" + std::to_string(epoch) + ".csv"), body);
  return rows;
}

}  // namespace dqgan::experiment
