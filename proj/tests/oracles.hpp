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

#ifndef FAIRCCA_TESTS_ORACLES_HPP_
#define FAIRCCA_TESTS_ORACLES_HPP_

// Reference implementations that share no code with the library: plain
// loops, Cramer's rule, enumeration and quadrature.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline double Det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Vec3 Solve3(const Mat3& m, const Vec3& b) {
  const double d = Det3(m);
  Vec3 x{};
  for (int k = 0; k < 3; ++k) {
    Mat3 mk = m;
    for (int i = 0; i < 3; ++i) mk[i][k] = b[i];
    x[k] = Det3(mk) / d;
  }
  return x;
}

inline double Dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 MatVec(const Mat3& m, const Vec3& v) {
  return {Dot3(m[0], v), Dot3(m[1], v), Dot3(m[2], v)};
}

inline Vec3 MatTVec(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[j] += m[i][j] * v[i];
  return out;
}

// Column-standardized copy of an n x 3 row list (population std).
inline std::vector<Vec3> Standardize3(const std::vector<Vec3>& rows) {
  const double n = static_cast<double>(rows.size());
  Vec3 mean{}, sd{};
  for (const auto& r : rows)
    for (int j = 0; j < 3; ++j) mean[j] += r[j] / n;
  for (const auto& r : rows)
    for (int j = 0; j < 3; ++j) sd[j] += (r[j] - mean[j]) * (r[j] - mean[j]) / n;
  std::vector<Vec3> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = (rows[i][j] - mean[j]) / std::sqrt(sd[j]);
  return out;
}

inline Mat3 Cross3(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double ridge) {
  Mat3 c{};
  const double n = static_cast<double>(a.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c[i][j] += a[k][i] * b[k][j] / n;
  for (int i = 0; i < 3; ++i) c[i][i] += ridge;
  return c;
}

// argmax over a of a^T g subject to a^T C a = 1 and (optionally) a^T c = 0.
inline Vec3 ConstrainedAscent(const Mat3& cov, const Vec3& g, const Vec3* constraint) {
  Vec3 a = Solve3(cov, g);
  if (constraint != nullptr) {
    const Vec3 ci = Solve3(cov, *constraint);
    const double mu = Dot3(*constraint, a) / Dot3(*constraint, ci);
    for (int i = 0; i < 3; ++i) a[i] -= mu * ci[i];
  }
  const double norm = std::sqrt(Dot3(a, MatVec(cov, a)));
  for (double& v : a) v /= norm;
  return a;
}

// Largest correlation a^T Cxy b / sqrt(a^T Cxx a b^T Cyy b) over 3-vectors,
// optionally restricted to directions whose projections have zero sample
// covariance with the 0/1 `groups`, by random restarts of alternating exact
// maximization.
inline double MaxCorrelation(const std::vector<Vec3>& x, const std::vector<Vec3>& y,
                             double ridge, const std::vector<int>* groups,
                             int restarts, std::uint64_t seed) {
  const auto xs = Standardize3(x);
  const auto ys = Standardize3(y);
  Vec3 cx_store{}, cy_store{};
  const Vec3* cx = nullptr;
  const Vec3* cy = nullptr;
  if (groups != nullptr) {
    double mean = 0.0;
    for (int g : *groups) mean += g;
    mean /= static_cast<double>(groups->size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double zc = (*groups)[k] - mean;
      for (int j = 0; j < 3; ++j) {
        cx_store[j] += xs[k][j] * zc;
        cy_store[j] += ys[k][j] * zc;
      }
    }
    cx = &cx_store;
    cy = &cy_store;
  }
  const Mat3 cxx = Cross3(xs, xs, ridge);
  const Mat3 cyy = Cross3(ys, ys, ridge);
  const Mat3 cxy = Cross3(xs, ys, 0.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double best = -1.0;
  for (int r = 0; r < restarts; ++r) {
    Vec3 b{normal(rng), normal(rng), normal(rng)};
    b = ConstrainedAscent(cyy, b, cy);
    Vec3 a{};
    double value = 0.0;
    for (int it = 0; it < 2000; ++it) {
      a = ConstrainedAscent(cxx, MatVec(cxy, b), cx);
      b = ConstrainedAscent(cyy, MatTVec(cxy, a), cy);
      const double next = Dot3(a, MatVec(cxy, b));
      if (it > 10 && std::abs(next - value) < 1e-15) {
        value = next;
        break;
      }
      value = next;
    }
    best = std::max(best, value);
  }
  return best;
}

// Average ranks (1-based) of |d| for nonzero d.
inline std::vector<double> AverageRanks(const std::vector<double>& d) {
  std::vector<double> ranks(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    double less = 0.0, equal = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (std::abs(d[j]) < std::abs(d[i])) less += 1.0;
      if (std::abs(d[j]) == std::abs(d[i])) equal += 1.0;
    }
    ranks[i] = less + (equal + 1.0) / 2.0;
  }
  return ranks;
}

// P(W+ <= observed) by enumerating all 2^n sign patterns of nonzero d.
inline double WilcoxonBruteForce(const std::vector<double>& diffs) {
  std::vector<double> d;
  for (double v : diffs)
    if (v != 0.0) d.push_back(v);
  const auto ranks = AverageRanks(d);
  double observed = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 0.0) observed += ranks[i];
  const std::uint64_t patterns = std::uint64_t{1} << d.size();
  std::uint64_t hits = 0;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) w += ranks[i];
    if (w <= observed + 1e-9) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(patterns);
}

inline double StudentTPdf(double t, double nu) {
  const double logc = std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
                      0.5 * std::log(nu * M_PI);
  return std::exp(logc - (nu + 1.0) / 2.0 * std::log1p(t * t / nu));
}

// Composite Simpson on [0, |t|] plus the symmetric half.
inline double StudentTCdf(double t, double nu, int panels = 200000) {
  const double h = std::abs(t) / panels;
  double s = StudentTPdf(0.0, nu) + StudentTPdf(std::abs(t), nu);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * StudentTPdf(i * h, nu);
  const double half = s * h / 3.0;
  return t < 0.0 ? 0.5 - half : 0.5 + half;
}

}  // namespace oracle

#endif  // FAIRCCA_TESTS_ORACLES_HPP_
