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
#include <limits>
#include <span>
#include <string>

#include "faircca/classify.hpp"
#include "faircca/error.hpp"
#include "faircca/kernels.hpp"

namespace faircca {

namespace {

constexpr double kTau = 1e-12;
// Kernel matrices up to this many rows are cached in full.
constexpr Eigen::Index kFullCacheRows = 4096;

std::span<const double> RowSpan(const RowMatrix& m, Eigen::Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

// Rows of Q_ij = y_i y_j k(x_i, x_j), fully cached for small problems and
// recomputed into a two-slot scratch otherwise.
class SignedKernel {
 public:
  SignedKernel(const RowMatrix& x, const Vector& y, const KernelSpec& spec,
               double gamma)
      : x_(x), y_(y), spec_(spec), gamma_(gamma), n_(x.rows()) {
    diag_.resize(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      diag_(i) = KernelValue(spec_, gamma_, x_.row(i).data(), x_.row(i).data(), x_.cols());
    }
    if (n_ <= kFullCacheRows) {
      full_.resize(n_, n_);
      for (Eigen::Index i = 0; i < n_; ++i) {
        ComputeRow(i, full_.row(i).data());
      }
    } else {
      slots_[0].resize(n_);
      slots_[1].resize(n_);
    }
  }

  const double* Row(Eigen::Index i) {
    if (full_.size() > 0) return full_.row(i).data();
    for (int s = 0; s < 2; ++s) {
      if (slot_index_[s] == i) return slots_[s].data();
    }
    const int s = next_slot_;
    next_slot_ ^= 1;
    slot_index_[s] = i;
    ComputeRow(i, slots_[s].data());
    return slots_[s].data();
  }

  double Diag(Eigen::Index i) const { return diag_(i); }

 private:
  void ComputeRow(Eigen::Index i, double* out) {
    const std::span<double> dst(out, static_cast<std::size_t>(n_));
    const std::span<const double> rows(x_.data(), static_cast<std::size_t>(x_.size()));
    const auto dim = static_cast<std::size_t>(x_.cols());
    if (spec_.kind == KernelKind::kRbf) {
      simd::SquaredDistanceRows(rows, dim, RowSpan(x_, i), dst);
      for (Eigen::Index t = 0; t < n_; ++t) out[t] = std::exp(-gamma_ * out[t]);
    } else {
      simd::DotRows(rows, dim, RowSpan(x_, i), dst);
      if (spec_.kind == KernelKind::kSigmoid) {
        for (Eigen::Index t = 0; t < n_; ++t) out[t] = std::tanh(gamma_ * out[t] + spec_.coef0);
      }
    }
    const double yi = y_(i);
    for (Eigen::Index t = 0; t < n_; ++t) out[t] *= yi * y_(t);
  }

  const RowMatrix& x_;
  const Vector& y_;
  KernelSpec spec_;
  double gamma_;
  Eigen::Index n_;
  Vector diag_;
  RowMatrix full_;
  Vector slots_[2];
  Eigen::Index slot_index_[2] = {-1, -1};
  int next_slot_ = 0;
};

}  // namespace

std::string_view KernelKindName(KernelKind kind) {
  switch (kind) {
    case KernelKind::kRbf: return "rbf";
    case KernelKind::kSigmoid: return "sigmoid";
    case KernelKind::kLinear: return "linear";
  }
  return "rbf";
}

KernelKind ParseKernelKind(std::string_view name) {
  if (name == "rbf") return KernelKind::kRbf;
  if (name == "sigmoid") return KernelKind::kSigmoid;
  if (name == "linear") return KernelKind::kLinear;
  throw Error(ErrorCode::kConfigError, "unknown kernel '" + std::string(name) + "'");
}

std::string_view ClassifierKindName(ClassifierKind kind) {
  return kind == ClassifierKind::kSvm ? "svm" : "logreg";
}

double ResolveGamma(const KernelSpec& spec, const Matrix& x_train) {
  const double d = static_cast<double>(x_train.cols());
  switch (spec.gamma_rule) {
    case GammaRule::kValue:
      if (!(spec.gamma > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
      }
      return spec.gamma;
    case GammaRule::kAuto:
      return 1.0 / d;
    case GammaRule::kScale: {
      const double mean = x_train.mean();
      const double var = (x_train.array() - mean).square().mean();
      return var > 0.0 ? 1.0 / (d * var) : 1.0;
    }
  }
  return 1.0;
}

double KernelValue(const KernelSpec& spec, double gamma, const double* a,
                   const double* b, Eigen::Index dim) {
  const std::span<const double> sa(a, static_cast<std::size_t>(dim));
  const std::span<const double> sb(b, static_cast<std::size_t>(dim));
  switch (spec.kind) {
    case KernelKind::kRbf:
      return std::exp(-gamma * simd::SquaredDistance(sa, sb));
    case KernelKind::kSigmoid:
      return std::tanh(gamma * simd::Dot(sa, sb) + spec.coef0);
    case KernelKind::kLinear:
      return simd::Dot(sa, sb);
  }
  return 0.0;
}

TrainedClassifier TrainSvm(const Matrix& x, const BinaryVector& labels,
                           double c, const KernelSpec& kernel,
                           const SvmOptions& options) {
  const Eigen::Index n = x.rows();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw Error(ErrorCode::kShapeMismatch, "label count differs from rows");
  }
  if (!(c > 0.0)) throw Error(ErrorCode::kInvalidArgument, "C must be positive");
  Vector y(n);
  bool has_pos = false, has_neg = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (l != 0 && l != 1) throw Error(ErrorCode::kInvalidArgument, "labels must be 0/1");
    y(i) = l == 1 ? 1.0 : -1.0;
    has_pos |= l == 1;
    has_neg |= l == 0;
  }
  if (!has_pos || !has_neg) {
    throw Error(ErrorCode::kSingleClass, "SVM training needs both classes");
  }

  TrainedClassifier model;
  model.kind = ClassifierKind::kSvm;
  model.kernel = kernel;
  model.gamma = ResolveGamma(kernel, x);
  model.c = c;
  model.n_features = x.cols();

  const RowMatrix xr = x;
  SignedKernel q(xr, y, kernel, model.gamma);
  Vector alpha = Vector::Zero(n);
  Vector grad = Vector::Constant(n, -1.0);  // Q alpha - e

  auto is_upper = [&](Eigen::Index t) { return alpha(t) >= c; };
  auto is_lower = [&](Eigen::Index t) { return alpha(t) <= 0.0; };
  auto dual_objective = [&]() { return -0.5 * alpha.dot(grad - Vector::Ones(n)); };

  const long max_iter = static_cast<long>(options.max_passes) * std::max<Eigen::Index>(n, 1);
  long iter = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (;; ++iter) {
    if (options.record_objective && iter % n == 0) {
      model.svm.dual_objective.push_back(dual_objective());
    }
    // Working set: i maximizes -y_t G_t over I_up; j minimizes the
    // second-order decrease -b^2 / a over violating t in I_low.
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      const bool up = y(t) > 0 ? !is_upper(t) : !is_lower(t);
      if (up && -y(t) * grad(t) >= gmax) {
        gmax = -y(t) * grad(t);
        i = t;
      }
    }
    Eigen::Index j = -1;
    double best_decrease = std::numeric_limits<double>::infinity();
    if (i >= 0) {
      const double* qi = q.Row(i);
      for (Eigen::Index t = 0; t < n; ++t) {
        const bool low = y(t) > 0 ? !is_lower(t) : !is_upper(t);
        if (!low) continue;
        const double yg = y(t) * grad(t);
        gmax2 = std::max(gmax2, yg);
        const double b = gmax + yg;
        if (b > 0.0) {
          double a = q.Diag(i) + q.Diag(t) - 2.0 * y(i) * y(t) * qi[t];
          if (a <= 0.0) a = kTau;
          const double decrease = -(b * b) / a;
          if (decrease <= best_decrease) {
            best_decrease = decrease;
            j = t;
          }
        }
      }
    }
    gap = gmax + gmax2;
    if (i < 0 || j < 0 || gap < options.tolerance) break;
    if (iter >= max_iter) {
      throw Error(ErrorCode::kNonConvergence,
                  "SMO did not reach KKT tolerance within " +
                      std::to_string(options.max_passes) + " passes");
    }

    const double* qi = q.Row(i);
    const double* qj = q.Row(j);
    const double old_ai = alpha(i);
    const double old_aj = alpha(j);
    double ai = old_ai;
    double aj = old_aj;
    if (y(i) != y(j)) {
      double quad = q.Diag(i) + q.Diag(j) + 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) { aj = 0.0; ai = diff; }
      } else {
        if (ai < 0.0) { ai = 0.0; aj = -diff; }
      }
      if (diff > 0.0) {
        if (ai > c) { ai = c; aj = c - diff; }
      } else {
        if (aj > c) { aj = c; ai = c + diff; }
      }
    } else {
      double quad = q.Diag(i) + q.Diag(j) - 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c) {
        if (ai > c) { ai = c; aj = sum - c; }
      } else {
        if (aj < 0.0) { aj = 0.0; ai = sum; }
      }
      if (sum > c) {
        if (aj > c) { aj = c; ai = sum - c; }
      } else {
        if (ai < 0.0) { ai = 0.0; aj = sum; }
      }
    }
    alpha(i) = ai;
    alpha(j) = aj;
    const std::span<double> g(grad.data(), static_cast<std::size_t>(n));
    simd::Axpy(ai - old_ai, std::span<const double>(qi, static_cast<std::size_t>(n)), g);
    simd::Axpy(aj - old_aj, std::span<const double>(qj, static_cast<std::size_t>(n)), g);
  }

  // Bias from free vectors, or the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  int n_free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y(t) * grad(t);
    if (is_upper(t)) {
      if (y(t) < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (is_lower(t)) {
      if (y(t) > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      free_sum += yg;
    }
  }
  const double rho = n_free > 0 ? free_sum / n_free : 0.5 * (ub + lb);
  model.bias = -rho;

  Eigen::Index n_sv = 0;
  for (Eigen::Index t = 0; t < n; ++t) n_sv += alpha(t) > 0.0;
  model.support.resize(n_sv, x.cols());
  model.coef.resize(n_sv);
  for (Eigen::Index t = 0, k = 0; t < n; ++t) {
    if (alpha(t) <= 0.0) continue;
    model.support.row(k) = xr.row(t);
    model.coef(k) = alpha(t) * y(t);
    ++k;
  }
  model.svm.iterations = iter;
  model.svm.kkt_gap = gap;
  model.svm.alpha = alpha;
  if (options.record_objective) model.svm.dual_objective.push_back(dual_objective());
  return model;
}

Vector PredictScores(const TrainedClassifier& model, const Matrix& x) {
  if (x.cols() != model.n_features) {
    throw Error(ErrorCode::kShapeMismatch,
                "classifier expects " + std::to_string(model.n_features) +
                    " features, got " + std::to_string(x.cols()));
  }
  const RowMatrix xr = x;
  Vector out(x.rows());
  if (model.kind == ClassifierKind::kLogreg) {
    const std::span<const double> w(model.weights.data(), static_cast<std::size_t>(model.weights.size()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double m = simd::Dot(RowSpan(xr, i), w) + model.bias;
      out(i) = 1.0 / (1.0 + std::exp(-m));
    }
    return out;
  }
  const Eigen::Index n_sv = model.support.rows();
  const std::span<const double> rows(model.support.data(), static_cast<std::size_t>(model.support.size()));
  const auto dim = static_cast<std::size_t>(model.support.cols());
  Vector k(n_sv);
  const std::span<double> ks(k.data(), static_cast<std::size_t>(n_sv));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (model.kernel.kind == KernelKind::kRbf) {
      simd::SquaredDistanceRows(rows, dim, RowSpan(xr, i), ks);
      k = (-model.gamma * k.array()).exp();
    } else {
      simd::DotRows(rows, dim, RowSpan(xr, i), ks);
      if (model.kernel.kind == KernelKind::kSigmoid) {
        k = (model.gamma * k.array() + model.kernel.coef0).tanh();
      }
    }
    out(i) = model.coef.dot(k) + model.bias;
  }
  return out;
}

BinaryVector PredictLabels(const TrainedClassifier& model, const Matrix& x) {
  const Vector s = PredictScores(model, x);
  const double threshold = model.kind == ClassifierKind::kLogreg ? 0.5 : 0.0;
  BinaryVector out(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    out[static_cast<std::size_t>(i)] = s(i) > threshold ? 1 : 0;
  }
  return out;
}

Vector PredictUnitScores(const TrainedClassifier& model, const Matrix& x) {
  Vector s = PredictScores(model, x);
  if (model.kind == ClassifierKind::kSvm) {
    s = (1.0 + (-s.array()).exp()).inverse();
  }
  return s;
}

}  // namespace faircca
