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

#include <algorithm>
#include <cmath>
#include <string>

#include "faircca/error.hpp"

namespace faircca {

SensitiveVector CenterSensitive(const BinaryVector& groups, bool standardize) {
  if (groups.empty()) {
    throw Error(ErrorCode::kDegenerateAttribute, "empty attribute vector");
  }
  std::size_t ones = 0;
  for (int g : groups) {
    if (g != 0 && g != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "attribute entries must be 0 or 1");
    }
    ones += static_cast<std::size_t>(g);
  }
  if (ones == 0 || ones == groups.size()) {
    throw Error(ErrorCode::kDegenerateAttribute,
                "attribute has a single group");
  }
  const auto n = static_cast<Eigen::Index>(groups.size());
  Vector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = groups[static_cast<std::size_t>(i)];
  const double mean = static_cast<double>(ones) / static_cast<double>(n);
  Vector centered = z.array() - mean;
  if (standardize) {
    centered /= std::sqrt(mean * (1.0 - mean));
  }
  return SensitiveVector{groups, std::move(centered)};
}

NullspaceBasis ComputeNullspaceBasis(const Matrix& xhat,
                                     const SensitiveVector& zc) {
  if (xhat.rows() != zc.centered.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "attribute length does not match row count");
  }
  const Vector direction = xhat.transpose() * zc.centered;
  const double norm = direction.norm();
  if (norm < 1e-10) {
    throw Error(ErrorCode::kAttributeOrthogonal,
                "view is already uncorrelated with the attribute");
  }
  const Eigen::Index d = direction.size();
  Eigen::JacobiSVD<Matrix> svd(Matrix(direction), Eigen::ComputeFullU);
  NullspaceBasis out;
  out.basis = svd.matrixU().rightCols(d - 1);
  CanonicalizeSigns(out.basis, nullptr);
  out.removed_direction = direction / norm;
  return out;
}

FairCanonicalModel FitFrcca(const Matrix& x, const Matrix& y,
                            const BinaryVector& groups, int rank,
                            const FairFitOptions& options) {
  if (x.rows() != y.rows() ||
      static_cast<std::size_t>(x.rows()) != groups.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "X, Y and attribute must have equal row counts");
  }
  const Eigen::Index max_rank = std::min(x.cols(), y.cols()) - 1;
  if (rank < 1 || rank > max_rank) {
    throw Error(ErrorCode::kRankTooLarge,
                "rank " + std::to_string(rank) + " outside [1, " +
                    std::to_string(max_rank) + "] for the reduced views");
  }
  Standardized xs = Standardize(x);
  Standardized ys = Standardize(y);
  const SensitiveVector zc =
      CenterSensitive(groups, options.standardize_attribute);

  FairCanonicalModel fair;
  fair.rx = ComputeNullspaceBasis(xs.data, zc);
  fair.ry = ComputeNullspaceBasis(ys.data, zc);
  fair.inner = SolveCcaCentered(xs.data * fair.rx.basis,
                                ys.data * fair.ry.basis, rank, options.ridge);

  CanonicalModel& lifted = fair.model;
  lifted.rank = rank;
  lifted.ridge = options.ridge;
  lifted.rho = fair.inner.rho;
  lifted.u = fair.rx.basis * fair.inner.u;
  lifted.v = fair.ry.basis * fair.inner.v;
  lifted.x_standardizer = std::move(xs.standardizer);
  lifted.y_standardizer = std::move(ys.standardizer);
  return fair;
}

Vector FairnessGamma(const CanonicalModel& model, const Matrix& x,
                     const Matrix& y, const SensitiveVector& zc,
                     GammaMode mode) {
  if (x.rows() != y.rows() || x.rows() != zc.centered.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "X, Y and attribute must have equal row counts");
  }
  const Vector gx = Project(x, model, Side::kX).transpose() * zc.centered;
  const Vector gy = Project(y, model, Side::kY).transpose() * zc.centered;
  if (mode == GammaMode::kSigned) return 0.5 * (gx + gy);
  return 0.5 * (gx.cwiseAbs() + gy.cwiseAbs());
}

double ConstraintResidual(const CanonicalModel& model, const Matrix& x,
                          const Matrix& y, const SensitiveVector& zc) {
  const Vector gx = Project(x, model, Side::kX).transpose() * zc.centered;
  const Vector gy = Project(y, model, Side::kY).transpose() * zc.centered;
  return std::max(gx.cwiseAbs().maxCoeff(), gy.cwiseAbs().maxCoeff());
}

Vector PctChange(const Vector& proposed, const Vector& baseline,
                 ChangeKind kind) {
  if (proposed.size() != baseline.size()) {
    throw Error(ErrorCode::kShapeMismatch, "vectors differ in length");
  }
  Vector out(baseline.size());
  for (Eigen::Index r = 0; r < baseline.size(); ++r) {
    if (baseline(r) == 0.0) {
      throw Error(ErrorCode::kZeroBaseline,
                  "baseline entry " + std::to_string(r) + " is zero");
    }
    const double change = (proposed(r) - baseline(r)) / baseline(r) * 100.0;
    out(r) = kind == ChangeKind::kFairness ? -change : change;
  }
  return out;
}

}  // namespace faircca
