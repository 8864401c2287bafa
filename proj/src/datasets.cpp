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

#include "dqgan/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace dqgan::datasets {
namespace {

Vector two_level(int num_qubits, int index_a, double a, int index_b, double b) {
  Vector v = Vector::Zero(linalg::dim_of(num_qubits));
  v(index_a) = a;
  v(index_b) = b;
  return v / v.norm();
}

void check_cluster_n(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("cluster datasets need an even N >= 4");
}

}  // namespace

StateDataset data_line(int n) {
  if (n < 2) throw std::invalid_argument("data_line needs N >= 2");
  StateDataset ds{"line", 1, {}};
  for (int x = 1; x <= n; ++x) ds.states.push_back(two_level(1, 0, n - x, 1, x - 1));
  return ds;
}

StateDataset data_line_prime(int n) {
  if (n < 2) throw std::invalid_argument("data_line_prime needs N >= 2");
  StateDataset ds{"line_prime", 3, {}};
  for (int x = 1; x <= n; ++x) ds.states.push_back(two_level(3, 0b000, n - x, 0b001, x - 1));
  return ds;
}

StateDataset data_cl(int n) {
  check_cluster_n(n);
  StateDataset ds{"cl", 1, {}};
  for (int x = 1; x <= n / 2; ++x) ds.states.push_back(two_level(1, 0, 2 * n - 1, 1, x - 1));
  for (int x = 3 * n / 2; x <= 2 * n; ++x) ds.states.push_back(two_level(1, 0, 2 * n - 1, 1, x - 1));
  return ds;
}

StateDataset data_cl_sym(int n) {
  check_cluster_n(n);
  StateDataset ds{"cl_sym", 1, {}};
  for (int x = 1; x <= n / 2; ++x) ds.states.push_back(two_level(1, 0, 2 * n - 1, 1, x - 1));
  for (int x = 3 * n / 2; x <= 2 * n; ++x) ds.states.push_back(two_level(1, 0, x - 1, 1, 2 * n - 1));
  return ds;
}

StateDataset data_cl_plus(int n, bool symmetric) {
  StateDataset ds = symmetric ? data_cl_sym(n) : data_cl(n);
  ds.name += "_plus";
  const std::size_t middle = (ds.states.size() - 1) / 2;
  ds.states[middle] = two_level(1, 0, 1.0, 1, 1.0);
  return ds;
}

StateDataset make(std::string_view name, int n) {
  if (name == "line") return data_line(n);
  if (name == "line_prime") return data_line_prime(n);
  if (name == "cl") return data_cl(n);
  if (name == "cl_sym") return data_cl_sym(n);
  if (name == "cl_plus") return data_cl_plus(n, false);
  if (name == "cl_sym_plus") return data_cl_plus(n, true);
  throw std::invalid_argument("unknown dataset '" + std::string(name) + "'");
}

Selection parse_selection(std::string_view text) {
  if (text == "random") return Selection::random;
  if (text == "equally_spaced") return Selection::equally_spaced;
  throw std::invalid_argument("unknown selection policy '" + std::string(text) + "'");
}

std::string_view to_string(Selection selection) {
  return selection == Selection::random ? "random" : "equally_spaced";
}

Split select_training(int n, int s, Selection policy, linalg::Rng& rng) {
  if (s < 1) throw std::invalid_argument("training set size must be positive");
  if (s > n) {
    throw std::invalid_argument("training set size " + std::to_string(s) + " exceeds dataset size " +
                                std::to_string(n));
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  Split split;
  if (policy == Selection::random) {
    std::shuffle(all.begin(), all.end(), rng);
    split.training.assign(all.begin(), all.begin() + s);
  } else {
    for (int k = 0; k < s; ++k) {
      const int idx = s == 1 ? 0 : static_cast<int>(std::lround(static_cast<double>(k) * (n - 1) / (s - 1)));
      if (std::find(split.training.begin(), split.training.end(), idx) == split.training.end()) {
        split.training.push_back(idx);
      }
    }
  }
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int i : split.training) used[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < n; ++i) {
    if (!used[static_cast<std::size_t>(i)]) split.validation.push_back(i);
  }
  return split;
}

void write_csv(const StateDataset& dataset, std::ostream& out) {
  out << "index";
  const int dim = linalg::dim_of(dataset.num_qubits);
  for (int k = 0; k < dim; ++k) out << ",re_" << k << ",im_" << k;
  out << '\n';
  char buf[64];
  for (int x = 0; x < dataset.size(); ++x) {
    out << x + 1;
    for (int k = 0; k < dim; ++k) {
      const auto a = dataset.states[static_cast<std::size_t>(x)](k);
      std::snprintf(buf, sizeof buf, ",%.12g,%.12g", a.real(), a.imag());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace dqgan::datasets
