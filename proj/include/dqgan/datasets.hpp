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

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dqgan/linalg.hpp"

namespace dqgan::datasets {

using linalg::Vector;

struct StateDataset {
  std::string name;
  int num_qubits = 0;
  std::vector<Vector> states;

  int size() const { return static_cast<int>(states.size()); }
};

/// ((N-x)|0> + (x-1)|1>) / norm for x = 1..N.
StateDataset data_line(int n);
/// ((N-x)|000> + (x-1)|001>) / norm for x = 1..N.
StateDataset data_line_prime(int n);
/// ((2N-1)|0> + (x-1)|1>) / norm over x = 1..N/2 and x = 3N/2..2N, as printed.
/// Both ranges share one formula, giving N+1 states.
StateDataset data_cl(int n);
/// data_cl with the second range mirrored toward |1>:
/// ((x-1)|0> + (2N-1)|1>) / norm.
StateDataset data_cl_sym(int n);
/// data_cl (or data_cl_sym) with its middle element replaced by |+>.
StateDataset data_cl_plus(int n, bool symmetric = false);

/// Looks up a dataset by name: line, line_prime, cl, cl_sym, cl_plus, cl_sym_plus.
StateDataset make(std::string_view name, int n);

enum class Selection { random, equally_spaced };

Selection parse_selection(std::string_view text);
std::string_view to_string(Selection selection);

/// 0-based training and validation indices; together they partition 0..N-1.
struct Split {
  std::vector<int> training;
  std::vector<int> validation;
};

/// random: shuffle and take the first S. equally_spaced: round(k (N-1)/(S-1)),
/// deduplicated.
Split select_training(int n, int s, Selection policy, linalg::Rng& rng);

/// CSV rows `index,re_0,im_0,...` with 1-based indices.
void write_csv(const StateDataset& dataset, std::ostream& out);

}  // namespace dqgan::datasets
