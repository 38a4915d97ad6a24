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

#ifndef FAIRCCA_FAIR_PROJECTION_HPP_
#define FAIRCCA_FAIR_PROJECTION_HPP_

#include "faircca/cca.hpp"
#include "faircca/linalg.hpp"

namespace faircca {

// Two-group attribute and its centered form z - mean(z).
struct SensitiveVector {
  BinaryVector groups;
  Vector centered;
};

// `groups` must hold 0/1 with both values present (else DegenerateAttribute).
// With `standardize` the centered vector is also divided by its population
// standard deviation; the nullspace it induces is unchanged.
SensitiveVector CenterSensitive(const BinaryVector& groups,
                                bool standardize = false);

// Orthonormal basis of the complement of span(Xt zc) in R^D.
struct NullspaceBasis {
  Matrix basis;              // D x (D-1)
  Vector removed_direction;  // unit vector along Xt zc
};

// `xhat` is the standardized view. Throws AttributeOrthogonal when
// ||xhat^T zc|| < 1e-10, i.e. the view is already linearly uncorrelated with
// the attribute.
NullspaceBasis ComputeNullspaceBasis(const Matrix& xhat,
                                     const SensitiveVector& zc);

struct FairCanonicalModel {
  CanonicalModel model;  // lifted projections U = Rx Lx, V = Ry Ly
  CanonicalModel inner;  // CCA on the reduced views xhat Rx, yhat Ry
  NullspaceBasis rx;
  NullspaceBasis ry;
};

struct FairFitOptions {
  double ridge = kDefaultRidge;
  bool standardize_attribute = false;
};

// CCA restricted to projections whose every linear functional has zero
// sample covariance with the attribute on the training rows.
FairCanonicalModel FitFrcca(const Matrix& x, const Matrix& y,
                            const BinaryVector& groups, int rank,
                            const FairFitOptions& options = {});

enum class GammaMode { kAbsolute, kSigned };

// gamma_r = (|[Ut Xt zc]_r| + |[Vt Yt zc]_r|) / 2 on standardized views.
Vector FairnessGamma(const CanonicalModel& model, const Matrix& x,
                     const Matrix& y, const SensitiveVector& zc,
                     GammaMode mode = GammaMode::kAbsolute);

// max over both views of ||Ut Xt zc||_inf.
double ConstraintResidual(const CanonicalModel& model, const Matrix& x,
                          const Matrix& y, const SensitiveVector& zc);

enum class ChangeKind { kCorrelation, kFairness };

// Percentage change against the baseline; the fairness variant is negated so
// that a reduction in gamma reads as a positive gain.
Vector PctChange(const Vector& proposed, const Vector& baseline,
                 ChangeKind kind);

}  // namespace faircca

#endif  // FAIRCCA_FAIR_PROJECTION_HPP_
