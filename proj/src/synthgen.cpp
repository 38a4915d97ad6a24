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

#include "faircca/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "faircca/error.hpp"

namespace faircca {

namespace {

Matrix StandardNormalMatrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = normal(rng);
  }
  return out;
}

// Sigma_view = Q (R^T)^+ R^+ Q^T + eps (I - Q Q^T) for U = Q R.
Matrix ViewCovariance(const Matrix& u, double eps) {
  const Eigen::Index d = u.rows();
  const Eigen::Index r = u.cols();
  Eigen::HouseholderQR<Matrix> qr(u);
  const Matrix q = qr.householderQ() * Matrix::Identity(d, r);
  const Matrix rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const Matrix r_pinv =
      Eigen::CompleteOrthogonalDecomposition<Matrix>(rr).pseudoInverse();
  // (U U^T)^+ = Q (R^T)^+ R^+ Q^T; the trailing Q^T makes the term D x D.
  Matrix sigma = q * r_pinv.transpose() * r_pinv * q.transpose();
  sigma += eps * (Matrix::Identity(d, d) - q * q.transpose());
  return sigma;
}

Vector MeanOrZero(const std::optional<std::vector<double>>& mu, int dim) {
  if (!mu) return Vector::Zero(dim);
  return Eigen::Map<const Vector>(mu->data(), static_cast<Eigen::Index>(mu->size()));
}

std::vector<double> DrawCoefficients(int count, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(count)));
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& v : out) v = normal(rng);
  return out;
}

bool HasBothValues(const std::vector<int>& v) {
  return std::find(v.begin(), v.end(), 1) != v.end() &&
         std::find(v.begin(), v.end(), 2) != v.end();
}

}  // namespace

int OddColumnCount(int dim) { return (dim + 1) / 2; }
int EvenColumnCount(int dim) { return dim / 2; }

void ValidateSynthConfig(const SynthConfig& c) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kConfigError, msg);
  };
  if (c.n_samples < 1) fail("n_samples must be positive");
  if (c.dim_x < 1 || c.dim_y < 1) fail("dimensions must be positive");
  const auto r = static_cast<int>(c.planted_rho.size());
  if (r < 1) fail("planted_rho must be non-empty");
  if (r > std::min(c.dim_x, c.dim_y)) {
    throw Error(ErrorCode::kRankTooLarge,
                "planted rank exceeds min(dim_x, dim_y)");
  }
  for (double rho : c.planted_rho) {
    if (!(rho > 0.0 && rho < 1.0)) fail("planted_rho entries must lie in (0, 1)");
  }
  if (!(c.eps_x > 0.0) || !(c.eps_y > 0.0)) fail("noise levels must be positive");
  if (c.mu_x && static_cast<int>(c.mu_x->size()) != c.dim_x) fail("mu_x length != dim_x");
  if (c.mu_y && static_cast<int>(c.mu_y->size()) != c.dim_y) fail("mu_y length != dim_y");
  if (c.a && static_cast<int>(c.a->size()) != OddColumnCount(c.dim_x)) {
    fail("a must have ceil(dim_x / 2) entries");
  }
  if (c.b && static_cast<int>(c.b->size()) != EvenColumnCount(c.dim_y)) {
    fail("b must have floor(dim_y / 2) entries");
  }
}

Matrix HaarOrthonormal(int d, int r, Rng& rng) {
  if (d < 1 || r < 1) {
    throw Error(ErrorCode::kInvalidArgument, "dimensions must be positive");
  }
  if (r > d) {
    throw Error(ErrorCode::kRankTooLarge, "rank exceeds dimension");
  }
  const Matrix g = StandardNormalMatrix(d, r, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, r);
  const Matrix& packed = qr.matrixQR();
  for (int j = 0; j < r; ++j) {
    if (packed(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

JointCovariance BuildJointCovariance(const Matrix& u, const Matrix& v,
                                     const Vector& rho, double eps_x,
                                     double eps_y) {
  if (u.cols() != v.cols() || u.cols() != rho.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "U, V and rho must share the planted rank");
  }
  const Eigen::Index dx = u.rows();
  const Eigen::Index dy = v.rows();
  const Matrix sx = ViewCovariance(u, eps_x);
  const Matrix sy = ViewCovariance(v, eps_y);
  const Matrix sxy = sx * u * rho.asDiagonal() * v.transpose() * sy;

  JointCovariance out;
  Matrix sigma(dx + dy, dx + dy);
  sigma.topLeftCorner(dx, dx) = sx;
  sigma.topRightCorner(dx, dy) = sxy;
  sigma.bottomLeftCorner(dy, dx) = sxy.transpose();
  sigma.bottomRightCorner(dy, dy) = sy;
  // (S + S^T) / 2, then mirror the upper triangle so that S == S^T exactly.
  sigma = (0.5 * (sigma + sigma.transpose())).eval();
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < sigma.cols(); ++j) sigma(j, i) = sigma(i, j);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (out.min_eigenvalue < -1e-6) {
    throw Error(ErrorCode::kNotPSD,
                "joint covariance has eigenvalue " +
                    std::to_string(out.min_eigenvalue));
  }
  if (out.min_eigenvalue < 0.0) {
    out.jitter = std::abs(out.min_eigenvalue) + 1e-10;
    sigma.diagonal().array() += out.jitter;
  }
  out.sigma = std::move(sigma);
  return out;
}

ViewPair SampleViews(const JointCovariance& cov, const Vector& mu_x,
                     const Vector& mu_y, int n_samples, Rng& rng) {
  const Eigen::Index dx = mu_x.size();
  const Eigen::Index dy = mu_y.size();
  if (cov.sigma.rows() != dx + dy) {
    throw Error(ErrorCode::kShapeMismatch, "mean and covariance sizes differ");
  }
  Eigen::LLT<Matrix> llt(cov.sigma);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPSD, "Cholesky factorization failed");
  }
  const Matrix g = StandardNormalMatrix(n_samples, dx + dy, rng);
  Matrix joint = g * llt.matrixL().transpose();
  Vector mu(dx + dy);
  mu << mu_x, mu_y;
  joint.rowwise() += mu.transpose();
  return ViewPair{joint.leftCols(dx), joint.rightCols(dy)};
}

std::vector<int> GenSensitive(const Matrix& x, const Matrix& y, double alpha,
                              double beta, const std::vector<double>& a,
                              const std::vector<double>& b) {
  if (x.rows() != y.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "X and Y row counts differ");
  }
  if (static_cast<int>(a.size()) != OddColumnCount(static_cast<int>(x.cols())) ||
      static_cast<int>(b.size()) != EvenColumnCount(static_cast<int>(y.cols()))) {
    throw Error(ErrorCode::kShapeMismatch,
                "coefficient lengths must match odd X / even Y column counts");
  }
  const Eigen::Index n = x.rows();
  Vector raw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double sx = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      sx += a[j] * x(i, static_cast<Eigen::Index>(2 * j));  // columns 1,3,5,...
    }
    double sy = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      sy += b[k] * y(i, static_cast<Eigen::Index>(2 * k + 1));  // columns 2,4,...
    }
    raw(i) = alpha * std::exp(sx) + beta * std::exp(sy);
  }
  if (n == 0 || raw.maxCoeff() == raw.minCoeff()) {
    throw Error(ErrorCode::kDegenerateAttribute, "all attribute scores equal");
  }
  const double tau = raw.mean();
  std::vector<int> z(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = raw(i) <= tau ? 1 : 2;
  return z;
}

std::vector<int> GenLabels(const Matrix& x, const Matrix& y,
                           const std::vector<int>& z) {
  if (x.rows() != y.rows() || static_cast<std::size_t>(x.rows()) != z.size()) {
    throw Error(ErrorCode::kShapeMismatch, "X, Y and z row counts differ");
  }
  const Eigen::Index n = x.rows();
  const Eigen::Index x_end = x.cols() / 2;                        // 1..floor(Dx/2)
  const Eigen::Index y_begin = std::max<Eigen::Index>(y.cols() / 2, 1) - 1;  // floor(Dy/2)..Dy
  Vector c(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int zi = z[static_cast<std::size_t>(i)];
    if (zi != 1 && zi != 2) {
      throw Error(ErrorCode::kInvalidArgument, "z must be binarized to {1, 2}");
    }
    c(i) = x.row(i).head(x_end).sum() + y.row(i).segment(y_begin, y.cols() - y_begin).sum() +
           std::exp(static_cast<double>(zi));
  }
  if (n == 0 || c.maxCoeff() == c.minCoeff()) {
    throw Error(ErrorCode::kDegenerateLabels, "all label scores equal");
  }
  const double t = c.mean();
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = c(i) <= t ? 1 : 2;
  return labels;
}

SynthDataset GenerateDataset(const SynthConfig& config) {
  ValidateSynthConfig(config);
  const int r = static_cast<int>(config.planted_rho.size());

  std::seed_seq structure_seed{static_cast<std::uint32_t>(config.seed),
                               static_cast<std::uint32_t>(config.seed >> 32), 0u};
  Rng rng(structure_seed);

  SynthDataset ds;
  ds.ground_truth.u = HaarOrthonormal(config.dim_x, r, rng);
  ds.ground_truth.v = HaarOrthonormal(config.dim_y, r, rng);
  ds.ground_truth.rho = Eigen::Map<const Vector>(config.planted_rho.data(), r);
  ds.a = config.a ? *config.a : DrawCoefficients(OddColumnCount(config.dim_x), rng);
  ds.b = config.b ? *config.b : DrawCoefficients(EvenColumnCount(config.dim_y), rng);

  const JointCovariance cov =
      BuildJointCovariance(ds.ground_truth.u, ds.ground_truth.v,
                           ds.ground_truth.rho, config.eps_x, config.eps_y);
  ds.min_eigenvalue = cov.min_eigenvalue;
  ds.jitter = cov.jitter;
  const Vector mu_x = MeanOrZero(config.mu_x, config.dim_x);
  const Vector mu_y = MeanOrZero(config.mu_y, config.dim_y);

  for (int attempt = 0; attempt < kMaxSynthRetries; ++attempt) {
    std::seed_seq sample_seed{static_cast<std::uint32_t>(config.seed),
                              static_cast<std::uint32_t>(config.seed >> 32), 1u,
                              static_cast<std::uint32_t>(attempt)};
    Rng sample_rng(sample_seed);
    ViewPair views = SampleViews(cov, mu_x, mu_y, config.n_samples, sample_rng);
    try {
      std::vector<int> z =
          GenSensitive(views.x, views.y, config.alpha, config.beta, ds.a, ds.b);
      std::vector<int> labels = GenLabels(views.x, views.y, z);
      if (!HasBothValues(z) || !HasBothValues(labels)) continue;
      ds.x = std::move(views.x);
      ds.y = std::move(views.y);
      ds.z = std::move(z);
      ds.labels = std::move(labels);
      ds.attempts = attempt + 1;
      return ds;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateAttribute &&
          e.code() != ErrorCode::kDegenerateLabels) {
        throw;
      }
    }
  }
  throw Error(ErrorCode::kRetryExhausted,
              "no draw with both groups and both classes after " +
                  std::to_string(kMaxSynthRetries) + " attempts");
}

BinaryVector ToZeroOne(const std::vector<int>& one_two) {
  BinaryVector out(one_two.size());
  for (std::size_t i = 0; i < one_two.size(); ++i) {
    if (one_two[i] != 1 && one_two[i] != 2) {
      throw Error(ErrorCode::kNonBinaryColumn, "expected values in {1, 2}");
    }
    out[i] = one_two[i] - 1;
  }
  return out;
}

}  // namespace faircca
