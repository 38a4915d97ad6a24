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

#include "faircca/fair_projection.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "faircca/error.hpp"
#include "faircca/synthgen.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace faircca {
namespace {

using testing_helpers::Gaussian;
using testing_helpers::MakeCorrelated;

template <typename F>
void ExpectCode(F&& f, ErrorCode code) {
  try {
    f();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(CenterSensitive, Examples) {
  const SensitiveVector a = CenterSensitive({0, 0, 1, 1});
  EXPECT_DOUBLE_EQ(a.centered(0), -0.5);
  EXPECT_DOUBLE_EQ(a.centered(3), 0.5);
  const SensitiveVector b = CenterSensitive({0, 1, 1});
  EXPECT_NEAR(b.centered(0), -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(b.centered(1), 1.0 / 3.0, 1e-15);
  ExpectCode([] { CenterSensitive({1, 1, 1}); }, ErrorCode::kDegenerateAttribute);
  ExpectCode([] { CenterSensitive({0, 2, 1}); }, ErrorCode::kInvalidArgument);
}

TEST(Nullspace, TwoDimensionalComplement) {
  Matrix xhat(2, 2);
  xhat << -3, -4, 3, 4;
  const NullspaceBasis nb = ComputeNullspaceBasis(xhat, CenterSensitive({0, 1}));
  ASSERT_EQ(nb.basis.rows(), 2);
  ASSERT_EQ(nb.basis.cols(), 1);
  EXPECT_NEAR(nb.basis(0, 0), 0.8, 1e-12);
  EXPECT_NEAR(nb.basis(1, 0), -0.6, 1e-12);
  EXPECT_NEAR(nb.removed_direction(0), 0.6, 1e-12);
  EXPECT_NEAR(nb.removed_direction(1), 0.8, 1e-12);
}

TEST(Nullspace, OrthonormalAndOrthogonalToAttribute) {
  std::mt19937_64 rng(21);
  const auto data = MakeCorrelated(120, 9, 4, rng);
  const Matrix xhat = Standardize(data.x).data;
  const SensitiveVector zc = CenterSensitive(data.groups);
  const NullspaceBasis nb = ComputeNullspaceBasis(xhat, zc);
  EXPECT_EQ(nb.basis.cols(), 8);
  EXPECT_LE((nb.basis.transpose() * nb.basis - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(),
            1e-12);
  EXPECT_LE((nb.basis.transpose() * (xhat.transpose() * zc.centered)).cwiseAbs().maxCoeff(),
            1e-10);
}

TEST(Nullspace, OrthogonalViewIsAnError) {
  // Each column has the same mean in both groups.
  Matrix xhat(4, 2);
  xhat << 1, 2, -1, -2, 3, 1, -3, -1;
  ExpectCode([&] { ComputeNullspaceBasis(xhat, CenterSensitive({0, 0, 1, 1})); },
             ErrorCode::kAttributeOrthogonal);
}

TEST(FitFrcca, ConstraintsHoldOnTrainingData) {
  std::mt19937_64 rng(22);
  const auto data = MakeCorrelated(300, 8, 6, rng);
  const FairCanonicalModel fm = FitFrcca(data.x, data.y, data.groups, 4);
  const SensitiveVector zc = CenterSensitive(data.groups);
  EXPECT_LE(ConstraintResidual(fm.model, data.x, data.y, zc), 1e-8);
  EXPECT_LE(FairnessGamma(fm.model, data.x, data.y, zc).maxCoeff(), 1e-8);

  const Matrix xs = fm.model.x_standardizer.Apply(data.x);
  const Matrix ys = fm.model.y_standardizer.Apply(data.y);
  const double n = static_cast<double>(xs.rows());
  const Matrix cxx = xs.transpose() * xs / n + fm.model.ridge * Matrix::Identity(8, 8);
  const Matrix cyy = ys.transpose() * ys / n + fm.model.ridge * Matrix::Identity(6, 6);
  EXPECT_LE((fm.model.u.transpose() * cxx * fm.model.u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(),
            1e-8);
  EXPECT_LE((fm.model.v.transpose() * cyy * fm.model.v - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(),
            1e-8);
}

TEST(FitFrcca, LinearFunctionalsAreUncorrelatedWithAttribute) {
  std::mt19937_64 rng(23);
  const auto data = MakeCorrelated(250, 6, 7, rng);
  const FairCanonicalModel fm = FitFrcca(data.x, data.y, data.groups, 3);
  const Matrix px = Project(data.x, fm.model, Side::kX);
  const SensitiveVector zc = CenterSensitive(data.groups);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 20; ++t) {
    Vector w(3);
    for (int r = 0; r < 3; ++r) w(r) = normal(rng);
    const Vector s = (px * w).array() + normal(rng);
    const double cov = (s.array() - s.mean()).matrix().dot(zc.centered) / 250.0;
    EXPECT_LE(std::abs(cov), 1e-8);
  }
}

TEST(FitFrcca, ReducedSpaceEquivalence) {
  std::mt19937_64 rng(24);
  const auto data = MakeCorrelated(200, 5, 6, rng);
  const FairCanonicalModel fm = FitFrcca(data.x, data.y, data.groups, 3, FairFitOptions{0.0, false});
  const Matrix xhat = Standardize(data.x).data;
  const Matrix yhat = Standardize(data.y).data;
  const Matrix xr = xhat * fm.rx.basis;
  const Matrix yr = yhat * fm.ry.basis;
  const CanonicalModel reduced = FitCca(xr, yr, 3, 0.0);
  for (int r = 0; r < 3; ++r) EXPECT_NEAR(reduced.rho(r), fm.model.rho(r), 1e-10);
  const Matrix direct = xhat * fm.model.u;
  const Matrix via_reduced = Project(xr, reduced, Side::kX);
  for (int r = 0; r < 3; ++r) {
    const double same = (direct.col(r) - via_reduced.col(r)).cwiseAbs().maxCoeff();
    const double flipped = (direct.col(r) + via_reduced.col(r)).cwiseAbs().maxCoeff();
    EXPECT_LE(std::min(same, flipped), 1e-8);
  }
}

TEST(FitFrcca, StandardizedAttributeGivesSameModel) {
  std::mt19937_64 rng(25);
  const auto data = MakeCorrelated(200, 5, 5, rng);
  const FairCanonicalModel a = FitFrcca(data.x, data.y, data.groups, 2);
  const FairCanonicalModel b = FitFrcca(data.x, data.y, data.groups, 2, FairFitOptions{kDefaultRidge, true});
  EXPECT_LE((a.model.u - b.model.u).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE((a.model.rho - b.model.rho).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(FitFrcca, RankBound) {
  std::mt19937_64 rng(26);
  const auto data = MakeCorrelated(100, 4, 5, rng);
  ExpectCode([&] { FitFrcca(data.x, data.y, data.groups, 4); }, ErrorCode::kRankTooLarge);
  EXPECT_NO_THROW(FitFrcca(data.x, data.y, data.groups, 3));
}

TEST(FitFrcca, NeverExceedsUnconstrainedCorrelation) {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 5; ++t) {
    const auto data = MakeCorrelated(300, 6, 6, rng);
    const CanonicalModel cca = FitCca(data.x, data.y, 3);
    const FairCanonicalModel fr = FitFrcca(data.x, data.y, data.groups, 3);
    EXPECT_LE(fr.model.rho(0), cca.rho(0) + 1e-12);
  }
}

TEST(FitFrcca, MatchesConstrainedDirectMaximizer) {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = MakeCorrelated(200, 3, 3, rng);
    const FairCanonicalModel fm = FitFrcca(data.x, data.y, data.groups, 1);
    const double best = oracle::MaxCorrelation(testing_helpers::Rows3(data.x),
                                               testing_helpers::Rows3(data.y), fm.model.ridge,
                                               &data.groups, 8, 200 + trial);
    EXPECT_NEAR(fm.model.rho(0), best, 1e-4) << "trial " << trial;
  }
}

TEST(FairnessGamma, PlainCcaLeaksOnDefaultSynthetic) {
  const SynthDataset d = GenerateDataset(SynthConfig{});
  const BinaryVector g = ToZeroOne(d.z);
  const CanonicalModel m = FitCca(d.x, d.y, 4);
  const Vector gamma = FairnessGamma(m, d.x, d.y, CenterSensitive(g));
  EXPECT_GT(gamma.maxCoeff(), 1e-3);
}

TEST(FairnessGamma, SignedModeCanCancel) {
  std::mt19937_64 rng(29);
  const auto data = MakeCorrelated(200, 4, 4, rng, 1.0);
  const CanonicalModel m = FitCca(data.x, data.y, 2);
  const SensitiveVector zc = CenterSensitive(data.groups);
  const Vector abs_gamma = FairnessGamma(m, data.x, data.y, zc);
  const Vector signed_gamma = FairnessGamma(m, data.x, data.y, zc, GammaMode::kSigned);
  for (int r = 0; r < 2; ++r) EXPECT_LE(std::abs(signed_gamma(r)), abs_gamma(r) + 1e-12);
}

TEST(PctChange, Examples) {
  Vector rho(2);
  rho << 0.8, 0.5;
  EXPECT_LE(PctChange(rho, rho, ChangeKind::kCorrelation).cwiseAbs().maxCoeff(), 0.0);
  Vector p(1), b(1);
  p << 0.72;
  b << 0.8;
  EXPECT_NEAR(PctChange(p, b, ChangeKind::kCorrelation)(0), -10.0, 1e-12);
  p << 0.0;
  b << 0.4;
  EXPECT_DOUBLE_EQ(PctChange(p, b, ChangeKind::kFairness)(0), 100.0);
  b << 0.0;
  ExpectCode([&] { PctChange(p, b, ChangeKind::kFairness); }, ErrorCode::kZeroBaseline);
}

}  // namespace
}  // namespace faircca
