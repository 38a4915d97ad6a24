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

#ifndef FAIRCCA_CLASSIFY_HPP_
#define FAIRCCA_CLASSIFY_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "faircca/linalg.hpp"

namespace faircca {

enum class KernelKind { kRbf, kSigmoid, kLinear };
enum class GammaRule { kValue, kScale, kAuto };

std::string_view KernelKindName(KernelKind kind);
KernelKind ParseKernelKind(std::string_view name);

struct KernelSpec {
  KernelKind kind = KernelKind::kRbf;
  GammaRule gamma_rule = GammaRule::kScale;
  double gamma = 1.0;  // used when gamma_rule == kValue
  double coef0 = 0.0;  // sigmoid only
};

// scale -> 1 / (D * Var(all training entries)), auto -> 1 / D.
double ResolveGamma(const KernelSpec& spec, const Matrix& x_train);

enum class ClassifierKind { kSvm, kLogreg };

std::string_view ClassifierKindName(ClassifierKind kind);

struct SvmOptions {
  double tolerance = 1e-3;  // KKT violation bound for the maximal pair
  // One pass is n_samples working-set updates.
  int max_passes = 10000;
  bool record_objective = false;
};

struct SvmDiagnostics {
  long iterations = 0;
  double kkt_gap = 0.0;  // m(alpha) - M(alpha) at exit
  // Dual objective sum(alpha) - alpha^T Q alpha / 2 after every pass, plus
  // the final value.
  std::vector<double> dual_objective;
  Vector alpha;  // full dual vector, training order
};

struct TrainedClassifier {
  ClassifierKind kind = ClassifierKind::kSvm;
  // SVM: f(x) = sum_i coef_i k(sv_i, x) + bias, coef_i = alpha_i y_i.
  KernelSpec kernel;
  double gamma = 0.0;  // resolved
  double c = 1.0;
  RowMatrix support;
  Vector coef;
  // Logistic regression: p(x) = sigmoid(w^T x + bias).
  Vector weights;
  double lambda = 1.0;
  double bias = 0.0;
  Eigen::Index n_features = 0;
  SvmDiagnostics svm;
};

// C-SVC dual solved by SMO with second-order working-set selection.
// Labels are 0/1 (1 = positive). Throws SingleClass, NonConvergence.
TrainedClassifier TrainSvm(const Matrix& x, const BinaryVector& labels,
                           double c, const KernelSpec& kernel,
                           const SvmOptions& options = {});

// Minimizes sum_i log(1 + exp(-s_i (w^T x_i + b))) + lambda / 2 ||w||^2 with
// s_i = +-1, by damped Newton until ||grad|| <= 1e-8.
TrainedClassifier TrainLogreg(const Matrix& x, const BinaryVector& labels,
                              double lambda);

double LogregObjective(const Matrix& x, const BinaryVector& labels,
                       const Vector& weights, double bias, double lambda);
// Gradient w.r.t. (weights, bias), bias last.
Vector LogregGradient(const Matrix& x, const BinaryVector& labels,
                      const Vector& weights, double bias, double lambda);

// SVM: decision values. Logreg: probabilities.
Vector PredictScores(const TrainedClassifier& model, const Matrix& x);
// SVM: score > 0 -> 1. Logreg: probability > 0.5 -> 1. Ties go to label 0.
BinaryVector PredictLabels(const TrainedClassifier& model, const Matrix& x);
// Scores mapped monotonically into [0, 1]; SVM uses 1 / (1 + exp(-s)).
Vector PredictUnitScores(const TrainedClassifier& model, const Matrix& x);

double KernelValue(const KernelSpec& spec, double gamma, const double* a,
                   const double* b, Eigen::Index dim);

}  // namespace faircca

#endif  // FAIRCCA_CLASSIFY_HPP_
