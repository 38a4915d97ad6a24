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

#include "faircca/cca.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "faircca/error.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace faircca {
namespace {

using testing_helpers::Gaussian;

template <typename F>
void ExpectCode(F&& f, ErrorCode code) {
  try {
    f();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(Standardize, TwoPoints) {
  Matrix x(2, 1);
  x << 1, 3;
  const Standardized s = Standardize(x);
  EXPECT_DOUBLE_EQ(s.data(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(s.data(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(s.standardizer.means(0), 2.0);
  EXPECT_DOUBLE_EQ(s.standardizer.stds(0), 1.0);
}

TEST(Standardize, ThreePointsUsesPopulationStd) {
  Matrix x(3, 1);
  x << 1, 2, 3;
  const Standardized s = Standardize(x);
  EXPECT_NEAR(s.data(0, 0), -std::sqrt(1.5), 1e-12);
  EXPECT_NEAR(s.data(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(s.data(2, 0), std::sqrt(1.5), 1e-12);
}

TEST(Standardize, ConstantColumn) {
  Matrix x(2, 2);
  x << 0, 5, 0, 7;
  ExpectCode([&] { Standardize(x); }, ErrorCode::kConstantColumn);
}

TEST(Standardize, MomentsAndRoundTrip) {
  std::mt19937_64 rng(3);
  Matrix x = Gaussian(200, 6, rng) * 4.0;
  x.col(2).array() += 100.0;
  const Standardized s = Standardize(x);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = s.data.col(j).mean();
    const double sd = std::sqrt(s.data.col(j).array().square().mean() - mean * mean);
    EXPECT_LE(std::abs(mean), 1e-10);
    EXPECT_LE(std::abs(sd - 1.0), 1e-10);
  }
  EXPECT_LE((s.standardizer.Apply(s.standardizer.Inverse(s.data)) - s.data).cwiseAbs().maxCoeff(),
            1e-10);
  EXPECT_LE((s.standardizer.Inverse(s.data) - x).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Validate, RejectsBadInput) {
  Matrix x(1, 2);
  x << 1, 2;
  ExpectCode([&] { ValidateDataMatrix(x, "X"); }, ErrorCode::kShapeMismatch);
  Matrix y(3, 1);
  y << 1, std::nan(""), 3;
  ExpectCode([&] { ValidateDataMatrix(y, "Y"); }, ErrorCode::kInvalidArgument);
}

TEST(FitCca, SelfCorrelationIsOne) {
  std::mt19937_64 rng(1);
  const Matrix x = Gaussian(100, 3, rng);
  const CanonicalModel m = FitCca(x, x, 3, 0.0);
  for (int r = 0; r < 3; ++r) EXPECT_NEAR(m.rho(r), 1.0, 1e-8);
  const Matrix px = Project(x, m, Side::kX);
  const Matrix py = Project(x, m, Side::kY);
  for (int r = 0; r < 3; ++r) {
    const double same = (px.col(r) - py.col(r)).cwiseAbs().maxCoeff();
    const double flipped = (px.col(r) + py.col(r)).cwiseAbs().maxCoeff();
    EXPECT_LE(std::min(same, flipped), 1e-6);
  }
}

TEST(FitCca, SingleColumnGivesPearson) {
  Matrix x(3, 1), y(3, 1);
  x << 0, 1, 2;
  y << 0, 1, 4;
  const CanonicalModel m = FitCca(x, y, 1, 0.0);
  EXPECT_NEAR(m.rho(0), 2.0 * std::sqrt(3.0 / 13.0), 1e-12);
}

TEST(FitCca, WhiteningConstraintsAndOrdering) {
  std::mt19937_64 rng(9);
  const auto data = testing_helpers::MakeCorrelated(300, 7, 5, rng);
  const CanonicalModel m = FitCca(data.x, data.y, 4);
  const Matrix xs = m.x_standardizer.Apply(data.x);
  const Matrix ys = m.y_standardizer.Apply(data.y);
  const double n = static_cast<double>(xs.rows());
  const Matrix cxx = xs.transpose() * xs / n + m.ridge * Matrix::Identity(7, 7);
  const Matrix cyy = ys.transpose() * ys / n + m.ridge * Matrix::Identity(5, 5);
  EXPECT_LE((m.u.transpose() * cxx * m.u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE((m.v.transpose() * cyy * m.v - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-8);
  const Matrix cross = m.u.transpose() * (xs.transpose() * ys / n) * m.v;
  for (int r = 0; r < 4; ++r) {
    EXPECT_NEAR(cross(r, r), m.rho(r), 1e-8);
    EXPECT_GE(m.rho(r), 0.0);
    EXPECT_LE(m.rho(r), 1.0);
    if (r > 0) { EXPECT_LE(m.rho(r), m.rho(r - 1)); }
  }
}

TEST(FitCca, SignConvention) {
  std::mt19937_64 rng(4);
  const auto data = testing_helpers::MakeCorrelated(200, 6, 6, rng);
  const CanonicalModel m = FitCca(data.x, data.y, 3);
  for (int r = 0; r < 3; ++r) {
    Eigen::Index arg = 0;
    m.u.col(r).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(m.u(arg, r), 0.0);
  }
}

TEST(FitCca, Errors) {
  std::mt19937_64 rng(2);
  const Matrix x = Gaussian(50, 3, rng);
  const Matrix y = Gaussian(50, 4, rng);
  ExpectCode([&] { FitCca(x, y, 4); }, ErrorCode::kRankTooLarge);
  ExpectCode([&] { FitCca(x, y, 0); }, ErrorCode::kRankTooLarge);
  ExpectCode([&] { FitCca(x, Gaussian(49, 4, rng), 1); }, ErrorCode::kShapeMismatch);
  ExpectCode([&] { FitCca(x, y, 1, -1.0); }, ErrorCode::kInvalidArgument);
  Matrix dup(50, 3);
  dup << x.col(0), x.col(0) * 2.0, x.col(1);
  ExpectCode([&] { FitCca(dup, y, 1, 0.0); }, ErrorCode::kSingularCovariance);
  EXPECT_NO_THROW(FitCca(dup, y, 1, 1e-8));
}

TEST(CanonicalCorrelations, MatchRhoOnTrainingData) {
  std::mt19937_64 rng(5);
  const auto data = testing_helpers::MakeCorrelated(400, 5, 6, rng);
  const CanonicalModel m = FitCca(data.x, data.y, 5, 0.0);
  const Vector rho = CanonicalCorrelations(m, data.x, data.y);
  for (int r = 0; r < 5; ++r) EXPECT_NEAR(rho(r), m.rho(r), 1e-8);
}

TEST(CanonicalCorrelations, IndependentSampleIsNearZero) {
  std::mt19937_64 rng(6);
  const Matrix x = Gaussian(10000, 5, rng);
  const Matrix y = Gaussian(10000, 5, rng);
  const CanonicalModel m = FitCca(x, y, 5);
  const Vector rho = CanonicalCorrelations(m, x, Gaussian(10000, 5, rng));
  for (int r = 0; r < 5; ++r) EXPECT_LE(std::abs(rho(r)), 0.05);
}

TEST(CanonicalCorrelations, SignFlipFlipsRho) {
  std::mt19937_64 rng(7);
  const auto data = testing_helpers::MakeCorrelated(300, 4, 4, rng);
  CanonicalModel m = FitCca(data.x, data.y, 2);
  const Vector before = CanonicalCorrelations(m, data.x, data.y);
  m.u.col(1) *= -1.0;
  const Vector after = CanonicalCorrelations(m, data.x, data.y);
  EXPECT_NEAR(after(0), before(0), 1e-12);
  EXPECT_NEAR(after(1), -before(1), 1e-12);
}

TEST(Project, IdentityModel) {
  std::mt19937_64 rng(8);
  const Matrix x = Gaussian(20, 4, rng);
  CanonicalModel m;
  m.rank = 4;
  m.u = Matrix::Identity(4, 4);
  m.v = Matrix::Identity(4, 4);
  m.x_standardizer = Standardizer::Identity(4);
  m.y_standardizer = Standardizer::Identity(4);
  EXPECT_LE((Project(x, m, Side::kX) - x).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(InverseSqrt, SquaresToInverse) {
  std::mt19937_64 rng(10);
  const Matrix a = Gaussian(30, 5, rng);
  const Matrix c = a.transpose() * a / 30.0;
  const Matrix w = InverseSqrtSymmetric(c, false);
  EXPECT_LE((w * c * w - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((w - w.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FitCca, MatchesDirectMaximizer) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = testing_helpers::MakeCorrelated(200, 3, 3, rng);
    const CanonicalModel m = FitCca(data.x, data.y, 1);
    const double best = oracle::MaxCorrelation(testing_helpers::Rows3(data.x),
                                               testing_helpers::Rows3(data.y), m.ridge,
                                               nullptr, 8, 100 + trial);
    EXPECT_NEAR(m.rho(0), best, 1e-4) << "trial " << trial;
  }
}

}  // namespace
}  // namespace faircca
