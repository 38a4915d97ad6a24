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

#include <algorithm>
#include <cmath>
#include <span>

#include "faircca/classify.hpp"
#include "faircca/error.hpp"
#include "faircca/kernels.hpp"

namespace faircca {

namespace {

constexpr double kGradientTolerance = 1e-8;
constexpr int kMaxNewtonIterations = 200;

// log(1 + exp(-m)) without overflow.
double SoftplusNeg(double m) {
  return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

// 1 / (1 + exp(m))
double SigmoidNeg(double m) {
  if (m >= 0.0) {
    const double e = std::exp(-m);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(m));
}

struct Problem {
  RowMatrix x;
  Vector s;  // +-1
};

Problem MakeProblem(const Matrix& x, const BinaryVector& labels) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw Error(ErrorCode::kShapeMismatch, "label count differs from rows");
  }
  Problem p{x, Vector(x.rows())};
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (l != 0 && l != 1) throw Error(ErrorCode::kInvalidArgument, "labels must be 0/1");
    p.s(i) = l == 1 ? 1.0 : -1.0;
  }
  return p;
}

Vector Margins(const Problem& p, const Vector& w, double b) {
  Vector m(p.x.rows());
  const std::span<const double> ws(w.data(), static_cast<std::size_t>(w.size()));
  const auto dim = static_cast<std::size_t>(p.x.cols());
  for (Eigen::Index i = 0; i < p.x.rows(); ++i) {
    const std::span<const double> row(p.x.data() + i * p.x.cols(), dim);
    m(i) = p.s(i) * (simd::Dot(row, ws) + b);
  }
  return m;
}

double Objective(const Problem& p, const Vector& w, double b, double lambda) {
  const Vector m = Margins(p, w, b);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) loss += SoftplusNeg(m(i));
  return loss + 0.5 * lambda * w.squaredNorm();
}

Vector Gradient(const Problem& p, const Vector& w, double lambda,
                const Vector& margins) {
  const Eigen::Index d = p.x.cols();
  Vector r(margins.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = -p.s(i) * SigmoidNeg(margins(i));
  Vector g(d + 1);
  g.head(d) = p.x.transpose() * r + lambda * w;
  g(d) = r.sum();
  return g;
}

}  // namespace

double LogregObjective(const Matrix& x, const BinaryVector& labels,
                       const Vector& weights, double bias, double lambda) {
  return Objective(MakeProblem(x, labels), weights, bias, lambda);
}

Vector LogregGradient(const Matrix& x, const BinaryVector& labels,
                      const Vector& weights, double bias, double lambda) {
  const Problem p = MakeProblem(x, labels);
  return Gradient(p, weights, lambda, Margins(p, weights, bias));
}

TrainedClassifier TrainLogreg(const Matrix& x, const BinaryVector& labels,
                              double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  const Problem p = MakeProblem(x, labels);
  if (p.s.maxCoeff() == p.s.minCoeff()) {
    throw Error(ErrorCode::kSingleClass, "logistic regression needs both classes");
  }
  const Eigen::Index d = x.cols();
  Vector w = Vector::Zero(d);
  double b = 0.0;
  double f = Objective(p, w, b, lambda);

  bool converged = false;
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    const Vector margins = Margins(p, w, b);
    const Vector g = Gradient(p, w, lambda, margins);
    if (g.norm() <= kGradientTolerance) {
      converged = true;
      break;
    }
    // Hessian of the augmented design [X 1].
    Vector h(margins.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) {
      const double q = SigmoidNeg(margins(i));
      h(i) = q * (1.0 - q);
    }
    Matrix hess(d + 1, d + 1);
    const Matrix xd = p.x;
    hess.topLeftCorner(d, d) = xd.transpose() * h.asDiagonal() * xd;
    hess.topLeftCorner(d, d).diagonal().array() += lambda;
    const Vector xh = xd.transpose() * h;
    hess.topRightCorner(d, 1) = xh;
    hess.bottomLeftCorner(1, d) = xh.transpose();
    hess(d, d) = h.sum();
    hess.diagonal().array() += 1e-12;
    const Vector step = hess.ldlt().solve(-g);

    // Backtracking on the convex objective.
    double t = 1.0;
    Vector w_new;
    double b_new = b;
    double f_new = f;
    // Near the optimum the predicted decrease drops below the rounding of f;
    // there a step is accepted when it shrinks the gradient instead.
    const bool at_noise = -g.dot(step) <= 1e-10 * std::max(1.0, std::abs(f));
    for (int ls = 0; ls < 60; ++ls) {
      w_new = w + t * step.head(d);
      b_new = b + t * step(d);
      f_new = Objective(p, w_new, b_new, lambda);
      if (f_new <= f + 1e-4 * t * g.dot(step)) break;
      if (at_noise &&
          Gradient(p, w_new, lambda, Margins(p, w_new, b_new)).norm() < g.norm()) {
        f_new = std::min(f_new, f);
        break;
      }
      t *= 0.5;
    }
    if (!(f_new <= f)) {
      // Line search stalled at machine precision; accept if the gradient is
      // already small relative to the objective.
      converged = g.norm() <= 1e-6 * std::max(1.0, std::abs(f));
      break;
    }
    w = std::move(w_new);
    b = b_new;
    f = f_new;
  }
  if (!converged) {
    throw Error(ErrorCode::kNonConvergence,
                "logistic regression did not reach gradient tolerance");
  }

  TrainedClassifier model;
  model.kind = ClassifierKind::kLogreg;
  model.weights = std::move(w);
  model.bias = b;
  model.lambda = lambda;
  model.n_features = d;
  return model;
}

}  // namespace faircca
