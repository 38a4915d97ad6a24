// Copyright 2026 The FairCCA Authors.
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

#ifndef FAIRCCA_TESTS_HELPERS_HPP_
#define FAIRCCA_TESTS_HELPERS_HPP_

#include <random>
#include <vector>

#include "faircca/linalg.hpp"
#include "oracles.hpp"

namespace testing_helpers {

inline faircca::Matrix Gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  faircca::Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

// Two views sharing a latent factor, plus a group vector that shifts the
// first column of each view.
struct Correlated {
  faircca::Matrix x;
  faircca::Matrix y;
  faircca::BinaryVector groups;
};

inline Correlated MakeCorrelated(Eigen::Index n, Eigen::Index dx, Eigen::Index dy,
                                 std::mt19937_64& rng, double group_shift = 0.7) {
  Correlated c;
  const faircca::Matrix latent = Gaussian(n, 2, rng);
  c.x = Gaussian(n, dx, rng) + latent * Gaussian(2, dx, rng);
  c.y = Gaussian(n, dy, rng) + latent * Gaussian(2, dy, rng);
  std::bernoulli_distribution coin(0.45);
  c.groups.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    c.groups[static_cast<std::size_t>(i)] = coin(rng) ? 1 : 0;
    c.x(i, 0) += group_shift * c.groups[static_cast<std::size_t>(i)];
    c.y(i, 0) -= group_shift * c.groups[static_cast<std::size_t>(i)];
  }
  return c;
}

inline std::vector<oracle::Vec3> Rows3(const faircca::Matrix& m) {
  std::vector<oracle::Vec3> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (int j = 0; j < 3; ++j) rows[static_cast<std::size_t>(i)][j] = m(i, j);
  return rows;
}

}  // namespace testing_helpers

#endif  // FAIRCCA_TESTS_HELPERS_HPP_
