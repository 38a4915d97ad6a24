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

#include <algorithm>
#include <cmath>
#include <string>

#include "faircca/error.hpp"

namespace faircca {

void ValidateDataMatrix(const Matrix& data, std::string_view name,
                        Eigen::Index min_rows) {
  if (data.cols() < 1) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(name) + " must have at least one column");
  }
  if (data.rows() < min_rows) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(name) + " needs at least " +
                    std::to_string(min_rows) + " rows, got " +
                    std::to_string(data.rows()));
  }
  if (!data.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " contains non-finite entries");
  }
}

Matrix Standardizer::Apply(const Matrix& data) const {
  if (data.cols() != dim()) {
    throw Error(ErrorCode::kShapeMismatch,
                "standardizer expects " + std::to_string(dim()) +
                    " columns, got " + std::to_string(data.cols()));
  }
  return (data.rowwise() - means.transpose()).array().rowwise() /
         stds.transpose().array();
}

Matrix Standardizer::Inverse(const Matrix& standardized) const {
  if (standardized.cols() != dim()) {
    throw Error(ErrorCode::kShapeMismatch, "standardizer dimension mismatch");
  }
  Matrix out = standardized.array().rowwise() * stds.transpose().array();
  out.rowwise() += means.transpose();
  return out;
}

Standardizer Standardizer::Identity(Eigen::Index dim) {
  return Standardizer{Vector::Zero(dim), Vector::Ones(dim)};
}

Standardized Standardize(const Matrix& data) {
  ValidateDataMatrix(data, "data");
  const double n = static_cast<double>(data.rows());
  Standardizer s;
  s.means = data.colwise().mean().transpose();
  s.stds.resize(data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    const double var = (data.col(j).array() - s.means(j)).square().sum() / n;
    const double sd = std::sqrt(var);
    if (!(sd >= 1e-12)) {
      throw Error(ErrorCode::kConstantColumn,
                  "column " + std::to_string(j) + " has zero variance");
    }
    s.stds(j) = sd;
  }
  Matrix standardized = s.Apply(data);
  return Standardized{std::move(standardized), std::move(s)};
}

Matrix InverseSqrtSymmetric(const Matrix& c, bool allow_floor) {
  const Matrix sym = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularCovariance, "eigendecomposition failed");
  }
  Vector values = eig.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < kEigenFloor) {
      if (!allow_floor) {
        throw Error(ErrorCode::kSingularCovariance,
                    "covariance eigenvalue " + std::to_string(values(i)) +
                        " below floor with ridge = 0");
      }
      values(i) = kEigenFloor;
    }
  }
  const Matrix& vecs = eig.eigenvectors();
  return vecs * values.cwiseSqrt().cwiseInverse().asDiagonal() *
         vecs.transpose();
}

void CanonicalizeSigns(Matrix& primary, Matrix* secondary) {
  for (Eigen::Index r = 0; r < primary.cols(); ++r) {
    Eigen::Index arg = 0;
    primary.col(r).cwiseAbs().maxCoeff(&arg);
    if (primary(arg, r) < 0.0) {
      primary.col(r) *= -1.0;
      if (secondary != nullptr) secondary->col(r) *= -1.0;
    }
  }
}

CanonicalModel SolveCcaCentered(const Matrix& xc, const Matrix& yc, int rank,
                                double ridge) {
  ValidateDataMatrix(xc, "X");
  ValidateDataMatrix(yc, "Y");
  if (xc.rows() != yc.rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "X has " + std::to_string(xc.rows()) + " rows, Y has " +
                    std::to_string(yc.rows()));
  }
  const Eigen::Index max_rank = std::min(xc.cols(), yc.cols());
  if (rank < 1 || rank > max_rank) {
    throw Error(ErrorCode::kRankTooLarge,
                "rank " + std::to_string(rank) + " outside [1, " +
                    std::to_string(max_rank) + "]");
  }
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw Error(ErrorCode::kInvalidArgument, "ridge must be non-negative");
  }

  const double n = static_cast<double>(xc.rows());
  Matrix cxx = xc.transpose() * xc / n;
  Matrix cyy = yc.transpose() * yc / n;
  const Matrix cxy = xc.transpose() * yc / n;
  cxx.diagonal().array() += ridge;
  cyy.diagonal().array() += ridge;

  const bool allow_floor = ridge > 0.0;
  const Matrix wx = InverseSqrtSymmetric(cxx, allow_floor);
  const Matrix wy = InverseSqrtSymmetric(cyy, allow_floor);
  const Matrix m = wx * cxy * wy;

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  CanonicalModel model;
  model.rank = rank;
  model.ridge = ridge;
  model.u = wx * svd.matrixU().leftCols(rank);
  model.v = wy * svd.matrixV().leftCols(rank);
  model.rho = svd.singularValues().head(rank).cwiseMax(0.0).cwiseMin(1.0);
  CanonicalizeSigns(model.u, &model.v);
  model.x_standardizer = Standardizer::Identity(xc.cols());
  model.y_standardizer = Standardizer::Identity(yc.cols());
  return model;
}

CanonicalModel FitCca(const Matrix& x, const Matrix& y, int rank,
                      double ridge) {
  if (x.rows() != y.rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "X has " + std::to_string(x.rows()) + " rows, Y has " +
                    std::to_string(y.rows()));
  }
  Standardized xs = Standardize(x);
  Standardized ys = Standardize(y);
  CanonicalModel model = SolveCcaCentered(xs.data, ys.data, rank, ridge);
  model.x_standardizer = std::move(xs.standardizer);
  model.y_standardizer = std::move(ys.standardizer);
  return model;
}

Matrix Project(const Matrix& data, const CanonicalModel& model, Side side) {
  const Standardizer& s =
      side == Side::kX ? model.x_standardizer : model.y_standardizer;
  const Matrix& w = side == Side::kX ? model.u : model.v;
  if (data.cols() != w.rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "projection expects " + std::to_string(w.rows()) +
                    " columns, got " + std::to_string(data.cols()));
  }
  return s.Apply(data) * w;
}

Vector CanonicalCorrelations(const CanonicalModel& model, const Matrix& x,
                             const Matrix& y) {
  if (x.rows() != y.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "X and Y row counts differ");
  }
  ValidateDataMatrix(x, "X");
  ValidateDataMatrix(y, "Y");
  const Matrix px = Project(x, model, Side::kX);
  const Matrix py = Project(y, model, Side::kY);
  Vector rho(model.rank);
  for (int r = 0; r < model.rank; ++r) {
    const double sxx = px.col(r).squaredNorm();
    const double syy = py.col(r).squaredNorm();
    if (sxx < 1e-14 || syy < 1e-14) {
      throw Error(ErrorCode::kDegenerateDirection,
                  "direction " + std::to_string(r) + " has no variance");
    }
    rho(r) = px.col(r).dot(py.col(r)) / std::sqrt(sxx * syy);
  }
  return rho;
}

}  // namespace faircca
