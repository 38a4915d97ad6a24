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

#ifndef FAIRCCA_SYNTHGEN_HPP_
#define FAIRCCA_SYNTHGEN_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "faircca/linalg.hpp"

namespace faircca {

using Rng = std::mt19937_64;

// Generator parameters. Unset optional fields take their documented
// defaults: zero means, and attribute coefficients drawn from
// N(0, sd = 1/sqrt(count)) with the dataset seed.
struct SynthConfig {
  int n_samples = 500;
  int dim_x = 55;
  int dim_y = 60;
  std::vector<double> planted_rho{0.8, 0.6, 0.3, 0.5};
  double eps_x = 0.1;
  double eps_y = 0.1;
  std::optional<std::vector<double>> mu_x;
  std::optional<std::vector<double>> mu_y;
  double alpha = 0.5;
  double beta = 0.5;
  std::optional<std::vector<double>> a;  // length ceil(dim_x / 2)
  std::optional<std::vector<double>> b;  // length floor(dim_y / 2)
  std::uint64_t seed = 0;
};

// Throws ConfigError describing the first violated constraint.
void ValidateSynthConfig(const SynthConfig& config);

// Number of odd-indexed (1-based) X columns and even-indexed Y columns.
int OddColumnCount(int dim);
int EvenColumnCount(int dim);

// d x r matrix with orthonormal columns, Haar-distributed: QR of a standard
// Gaussian matrix with the signs of diag(R) folded into Q.
Matrix HaarOrthonormal(int d, int r, Rng& rng);

struct JointCovariance {
  Matrix sigma;                 // (Dx+Dy) x (Dx+Dy), exactly symmetric
  double min_eigenvalue = 0.0;  // before repair
  double jitter = 0.0;          // added to the diagonal, 0 if none needed
};

// Sx = Qx (Rx^T)^+ Rx^+ Qx^T + eps_x (I - Qx Qx^T), likewise Sy, and
// Sxy = Sx U diag(rho) V^T Sy. Throws NotPSD when the assembled matrix has an
// eigenvalue below -1e-6; smaller negative eigenvalues are repaired by
// adding (|lambda_min| + 1e-10) I.
JointCovariance BuildJointCovariance(const Matrix& u, const Matrix& v,
                                     const Vector& rho, double eps_x,
                                     double eps_y);

struct ViewPair {
  Matrix x;
  Matrix y;
};

// n iid rows from N([mu_x; mu_y], sigma) via Cholesky.
ViewPair SampleViews(const JointCovariance& cov, const Vector& mu_x,
                     const Vector& mu_y, int n_samples, Rng& rng);

// Attribute in {1, 2}: score = alpha exp(sum a_j X_odd) + beta exp(sum b_k
// Y_even), thresholded at its mean (score <= mean -> 1).
std::vector<int> GenSensitive(const Matrix& x, const Matrix& y, double alpha,
                              double beta, const std::vector<double>& a,
                              const std::vector<double>& b);

// Labels in {1, 2}: c = sum of X columns 1..floor(Dx/2) + sum of Y columns
// floor(Dy/2)..Dy (1-based, inclusive) + exp(z), thresholded at its mean.
std::vector<int> GenLabels(const Matrix& x, const Matrix& y,
                           const std::vector<int>& z);

struct GroundTruth {
  Matrix u;
  Matrix v;
  Vector rho;
};

struct SynthDataset {
  Matrix x;
  Matrix y;
  std::vector<int> z;       // {1, 2}
  std::vector<int> labels;  // {1, 2}
  GroundTruth ground_truth;
  std::vector<double> a;  // coefficients actually used
  std::vector<double> b;
  double min_eigenvalue = 0.0;
  double jitter = 0.0;
  int attempts = 1;
};

inline constexpr int kMaxSynthRetries = 10;

// Pure function of the config (including its seed).
SynthDataset GenerateDataset(const SynthConfig& config);

// Maps {1, 2} codes to {0, 1}.
BinaryVector ToZeroOne(const std::vector<int>& one_two);

}  // namespace faircca

#endif  // FAIRCCA_SYNTHGEN_HPP_
