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

#ifndef FAIRCCA_CCA_HPP_
#define FAIRCCA_CCA_HPP_

#include <string_view>

#include "faircca/linalg.hpp"

namespace faircca {

inline constexpr double kDefaultRidge = 1e-8;
// Eigenvalues of a whitening covariance below this are treated as singular.
inline constexpr double kEigenFloor = 1e-12;

// Throws ShapeMismatch / InvalidArgument on empty or non-finite input, or
// when fewer than `min_rows` rows are present.
void ValidateDataMatrix(const Matrix& data, std::string_view name,
                        Eigen::Index min_rows = 2);

// Per-column affine map to zero mean, unit population standard deviation.
struct Standardizer {
  Vector means;
  Vector stds;

  Eigen::Index dim() const { return means.size(); }
  Matrix Apply(const Matrix& data) const;
  Matrix Inverse(const Matrix& standardized) const;

  static Standardizer Identity(Eigen::Index dim);
};

struct Standardized {
  Matrix data;
  Standardizer standardizer;
};

// Throws ConstantColumn(j) when column j has std < 1e-12.
Standardized Standardize(const Matrix& data);

// Paired projections for the two views. `u` acts on the x-side standardized
// coordinates, `v` on the y-side ones. With C = Zt Z / N + ridge I on the
// standardized training view Z, the fit guarantees Ut Cxx U = Vt Cyy V = I.
struct CanonicalModel {
  Matrix u;
  Matrix v;
  Vector rho;  // non-increasing, clipped to [0, 1]
  int rank = 0;
  Standardizer x_standardizer;
  Standardizer y_standardizer;
  double ridge = kDefaultRidge;
};

// Whitened-SVD CCA on standardized copies of x and y.
CanonicalModel FitCca(const Matrix& x, const Matrix& y, int rank,
                      double ridge = kDefaultRidge);

// Same solver on views that are already centered; no rescaling is applied and
// the returned standardizers are identities. Used for the reduced problem
// inside the fair projection.
CanonicalModel SolveCcaCentered(const Matrix& xc, const Matrix& yc, int rank,
                                double ridge = kDefaultRidge);

// C^{-1/2} for symmetric C via eigendecomposition. Eigenvalues below
// kEigenFloor raise SingularCovariance when `allow_floor` is false and are
// floored otherwise.
Matrix InverseSqrtSymmetric(const Matrix& c, bool allow_floor);

enum class Side { kX, kY };

// Standardizes with the model's stored parameters, then applies U or V.
Matrix Project(const Matrix& data, const CanonicalModel& model, Side side);

// Per-direction correlation of the projected views, evaluated on (x, y).
Vector CanonicalCorrelations(const CanonicalModel& model, const Matrix& x,
                             const Matrix& y);

// Flip each column of `primary` so its largest-magnitude entry is positive;
// the paired column of `secondary` (if non-null) is flipped along with it.
void CanonicalizeSigns(Matrix& primary, Matrix* secondary);

}  // namespace faircca

#endif  // FAIRCCA_CCA_HPP_
