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


#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "dqgan/datasets.hpp"

using namespace dqgan;
using linalg::Vector;
using linalg::max_abs;

namespace {

Vector qubit(double a0, double a1) {
  Vector v(2);
  v << a0, a1;
  return v / v.norm();
}

void check_normalised(const datasets::StateDataset& ds) {
  for (const auto& s : ds.states) {
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    CHECK(s.size() == linalg::dim_of(ds.num_qubits));
  }
}

}  // namespace

TEST_CASE("data_line") {
  const auto ds = datasets::data_line(50);
  CHECK(ds.size() == 50);
  CHECK(ds.num_qubits == 1);
  CHECK(max_abs(ds.states[0] - linalg::basis_state(1, 0)) < 1e-15);
  CHECK(max_abs(ds.states[49] - linalg::basis_state(1, 1)) < 1e-15);
  Vector x25(2);
  x25 << 25.0 / std::sqrt(1201.0), 24.0 / std::sqrt(1201.0);
  CHECK(max_abs(ds.states[24] - x25) < 1e-15);
  check_normalised(ds);
  for (int x = 1; x < ds.size(); ++x) CHECK(std::norm(ds.states[x](1)) > std::norm(ds.states[x - 1](1)));
  CHECK_THROWS_AS(datasets::data_line(1), std::invalid_argument);
}

TEST_CASE("data_line_prime") {
  const auto ds = datasets::data_line_prime(50);
  CHECK(ds.num_qubits == 3);
  CHECK(max_abs(ds.states[0] - linalg::basis_state(3, 0)) < 1e-15);
  CHECK(max_abs(ds.states[49] - linalg::basis_state(3, 1)) < 1e-15);
  for (const auto& s : ds.states) CHECK(s.tail(6).norm() == 0.0);
  check_normalised(ds);
  CHECK_THROWS_AS(datasets::data_line_prime(1), std::invalid_argument);
}

TEST_CASE("data_cl as printed") {
  const int n = 10;
  const auto ds = datasets::data_cl(n);
  CHECK(ds.size() == n + 1);
  CHECK(max_abs(ds.states[0] - linalg::basis_state(1, 0)) < 1e-15);
  // x = 1..5 then x = 15..20, all with (2N-1)|0> + (x-1)|1>.
  CHECK(max_abs(ds.states[4] - qubit(19, 4)) < 1e-15);
  CHECK(max_abs(ds.states[5] - qubit(19, 14)) < 1e-15);
  CHECK(max_abs(ds.states.back() - qubit(1, 1)) < 1e-15);
  CHECK(std::abs(ds.states.front()(1)) != std::abs(ds.states.back()(1)));
  check_normalised(ds);
  CHECK_THROWS_AS(datasets::data_cl(5), std::invalid_argument);
  CHECK_THROWS_AS(datasets::data_cl(2), std::invalid_argument);
}

TEST_CASE("data_cl_sym mirrors the second cluster") {
  const auto ds = datasets::data_cl_sym(10);
  CHECK(ds.size() == 11);
  CHECK(max_abs(ds.states[4] - qubit(19, 4)) < 1e-15);
  CHECK(max_abs(ds.states[5] - qubit(14, 19)) < 1e-15);
  CHECK(max_abs(ds.states.back() - qubit(19, 19)) < 1e-15);
  check_normalised(ds);
}

TEST_CASE("data_cl_plus") {
  for (bool symmetric : {false, true}) {
    const auto base = symmetric ? datasets::data_cl_sym(50) : datasets::data_cl(50);
    const auto ds = datasets::data_cl_plus(50, symmetric);
    CHECK(ds.size() == base.size());
    int equal_real = 0, replaced = 0;
    for (int x = 0; x < ds.size(); ++x) {
      const auto& s = ds.states[static_cast<std::size_t>(x)];
      if (std::abs(s(0) - s(1)) < 1e-15 && s(0).imag() == 0.0) {
        ++equal_real;
        CHECK(linalg::fidelity(linalg::basis_state(1, 0), linalg::outer(s)) == doctest::Approx(0.5));
      }
      if (max_abs(s - base.states[static_cast<std::size_t>(x)]) > 0) {
        ++replaced;
        CHECK(x == (ds.size() - 1) / 2);
      }
    }
    CHECK(replaced == 1);
    // The x = 2N element of both cluster sets is already |+>.
    CHECK(equal_real == 2);
  }
  CHECK(datasets::make("cl_sym_plus", 10).size() == 11);
  CHECK_THROWS_AS(datasets::make("bogus", 10), std::invalid_argument);
}

TEST_CASE("training selection") {
  linalg::Rng rng(61);
  const auto all = datasets::select_training(12, 12, datasets::Selection::random, rng);
  CHECK(all.training.size() == 12);
  CHECK(all.validation.empty());

  const auto spaced = datasets::select_training(50, 10, datasets::Selection::equally_spaced, rng);
  CHECK(spaced.training == std::vector<int>{0, 5, 11, 16, 22, 27, 33, 38, 44, 49});
  CHECK(spaced.validation.size() == 40);

  linalg::Rng a(62), b(62);
  const auto ra = datasets::select_training(50, 10, datasets::Selection::random, a);
  const auto rb = datasets::select_training(50, 10, datasets::Selection::random, b);
  CHECK(ra.training == rb.training);

  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial;
    const int s = 1 + trial % n;
    for (auto policy : {datasets::Selection::random, datasets::Selection::equally_spaced}) {
      const auto split = datasets::select_training(n, s, policy, rng);
      std::set<int> seen(split.training.begin(), split.training.end());
      CHECK(seen.size() == split.training.size());
      for (int v : split.validation) CHECK(seen.insert(v).second);
      CHECK(static_cast<int>(seen.size()) == n);
      CHECK(*seen.begin() == 0);
      CHECK(*seen.rbegin() == n - 1);
    }
  }
  CHECK(datasets::select_training(7, 1, datasets::Selection::equally_spaced, rng).training == std::vector<int>{0});
  CHECK_THROWS_AS(datasets::select_training(5, 6, datasets::Selection::random, rng), std::invalid_argument);
  CHECK(datasets::parse_selection("equally_spaced") == datasets::Selection::equally_spaced);
  CHECK(datasets::to_string(datasets::Selection::random) == "random");
  CHECK_THROWS_AS(datasets::parse_selection("spread"), std::invalid_argument);
}

TEST_CASE("dataset CSV export parses back") {
  const auto ds = datasets::data_line(5);
  std::ostringstream out;
  datasets::write_csv(ds, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "index,re_0,im_0,re_1,im_1");
  int row = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(fields, cell, ',')) values.push_back(std::stod(cell));
    REQUIRE(values.size() == 5);
    CHECK(values[0] == row + 1);
    CHECK(std::abs(values[1] - ds.states[static_cast<std::size_t>(row)](0).real()) < 1e-12);
    CHECK(std::abs(values[3] - ds.states[static_cast<std::size_t>(row)](1).real()) < 1e-12);
    ++row;
  }
  CHECK(row == 5);
}
