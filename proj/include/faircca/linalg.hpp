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

#ifndef FAIRCCA_LINALG_HPP_
#define FAIRCCA_LINALG_HPP_

#include <vector>

#include <Eigen/Dense>

namespace faircca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
// Sample-major storage for the kernel loops, one contiguous row per sample.
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Binary vectors (groups, labels, hard predictions) hold 0/1.
using BinaryVector = std::vector<int>;

}  // namespace faircca

#endif  // FAIRCCA_LINALG_HPP_
