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

#include "faircca/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "faircca/classify.hpp"
#include "helpers.hpp"

namespace faircca::simd {
namespace {

std::vector<double> Draw(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

class Avx2Equivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!Avx2Available()) GTEST_SKIP() << "AVX2/FMA not available";
  }
};

TEST_F(Avx2Equivalence, ReductionsAgreeWithScalar) {
  std::mt19937_64 rng(41);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = Draw(n, rng);
    const auto b = Draw(n, rng);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
    EXPECT_NEAR(avx2::Dot(a, b), scalar::Dot(a, b), 1e-14 * (mag + 1.0)) << n;
    const double sd = scalar::SquaredDistance(a, b);
    EXPECT_NEAR(avx2::SquaredDistance(a, b), sd, 1e-14 * (sd + 1.0)) << n;
  }
}

TEST_F(Avx2Equivalence, AxpyAgreesWithScalar) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 0; n <= 35; ++n) {
    const auto x = Draw(n, rng);
    auto y1 = Draw(n, rng);
    auto y2 = y1;
    scalar::Axpy(0.37, x, y1);
    avx2::Axpy(0.37, x, y2);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-14 * (std::abs(y1[i]) + 1.0));
  }
}

TEST_F(Avx2Equivalence, RowKernelsFollowBackend) {
  std::mt19937_64 rng(43);
  const std::size_t dim = 11, rows = 9;
  const auto block = Draw(dim * rows, rng);
  const auto x = Draw(dim, rng);
  std::vector<double> d_avx(rows), d_scalar(rows), s_avx(rows), s_scalar(rows);
  SetBackend(Backend::kAvx2);
  DotRows(block, dim, x, d_avx);
  SquaredDistanceRows(block, dim, x, s_avx);
  SetBackend(Backend::kScalar);
  DotRows(block, dim, x, d_scalar);
  SquaredDistanceRows(block, dim, x, s_scalar);
  for (std::size_t i = 0; i < rows; ++i) {
    EXPECT_EQ(d_scalar[i], scalar::Dot(std::span<const double>(block).subspan(i * dim, dim), x));
    EXPECT_NEAR(d_avx[i], d_scalar[i], 1e-12);
    EXPECT_NEAR(s_avx[i], s_scalar[i], 1e-12);
  }
  SetBackend(Backend::kAvx2);
  EXPECT_EQ(ActiveBackend(), Backend::kAvx2);
}

TEST_F(Avx2Equivalence, SvmPredictionsMatchAcrossBackends) {
  std::mt19937_64 rng(44);
  const Matrix x = testing_helpers::Gaussian(200, 3, rng);
  BinaryVector y(200);
  for (int i = 0; i < 200; ++i) y[static_cast<std::size_t>(i)] = x(i, 0) + 0.5 * x(i, 1) > 0.2 ? 1 : 0;
  const TrainedClassifier model = TrainSvm(x, y, 5.0, KernelSpec{});
  SetBackend(Backend::kScalar);
  const Vector sa = PredictScores(model, x);
  SetBackend(Backend::kAvx2);
  const Vector sb = PredictScores(model, x);
  EXPECT_LE((sa - sb).cwiseAbs().maxCoeff(), 1e-10);
}

TEST_F(Avx2Equivalence, SvmTrainingReachesSameOptimum) {
  std::mt19937_64 rng(45);
  const Matrix x = testing_helpers::Gaussian(200, 3, rng);
  BinaryVector y(200);
  for (int i = 0; i < 200; ++i) y[static_cast<std::size_t>(i)] = x(i, 0) + 0.5 * x(i, 1) > 0.2 ? 1 : 0;
  SvmOptions options;
  options.record_objective = true;
  SetBackend(Backend::kScalar);
  const TrainedClassifier a = TrainSvm(x, y, 5.0, KernelSpec{}, options);
  SetBackend(Backend::kAvx2);
  const TrainedClassifier b = TrainSvm(x, y, 5.0, KernelSpec{}, options);
  // Backends take different SMO paths; both stop inside the KKT tolerance.
  const double da = a.svm.dual_objective.back();
  const double db = b.svm.dual_objective.back();
  EXPECT_LE(std::abs(da - db), 1e-3 * std::abs(da));
  const BinaryVector la = PredictLabels(a, x);
  const BinaryVector lb = PredictLabels(b, x);
  int differ = 0;
  for (std::size_t i = 0; i < la.size(); ++i) differ += la[i] != lb[i] ? 1 : 0;
  EXPECT_LE(differ, 2);
}

TEST(Dispatch, ScalarAlwaysAvailable) {
  const Backend before = ActiveBackend();
  SetBackend(Backend::kScalar);
  EXPECT_EQ(ActiveBackend(), Backend::kScalar);
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_DOUBLE_EQ(Dot(a, b), 32.0);
  EXPECT_DOUBLE_EQ(SquaredDistance(a, b), 27.0);
  SetBackend(before);
  EXPECT_EQ(BackendName(Backend::kScalar), "scalar");
}

}  // namespace
}  // namespace faircca::simd
