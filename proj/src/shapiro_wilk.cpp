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

// Shapiro-Wilk W test, after Royston's algorithm AS R94 (Applied Statistics
// 44(4), 1995).

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "faircca/error.hpp"
#include "faircca/stats_tests.hpp"

namespace faircca {

namespace {

// cc[0] + cc[1] x + ... + cc[n-1] x^(n-1)
double Poly(const double* cc, int n, double x) {
  double result = 0.0;
  for (int i = n - 1; i >= 0; --i) result = result * x + cc[i];
  return result;
}

constexpr double kSmall = 1e-19;

constexpr double kG[2] = {-2.273, 0.459};
constexpr double kC1[6] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr double kC2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kC3[4] = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[3] = {-0.4803, -0.082676, 0.0030302};

// Coefficients a_1..a_{n/2} for the lower half of the order statistics.
std::vector<double> Coefficients(int n) {
  const int half = n / 2;
  std::vector<double> a(static_cast<std::size_t>(half));
  if (n == 3) {
    a[0] = std::sqrt(0.5);
    return a;
  }
  const boost::math::normal_distribution<double> std_normal;
  const double an25 = n + 0.25;
  std::vector<double> m(static_cast<std::size_t>(half));
  double summ2 = 0.0;
  for (int i = 0; i < half; ++i) {
    m[static_cast<std::size_t>(i)] = boost::math::quantile(std_normal, (i + 1 - 0.375) / an25);
    summ2 += m[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(i)];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
  const double a1 = Poly(kC1, 6, rsn) - m[0] / ssumm2;

  int first = 1;
  double fac = 0.0;
  if (n > 5) {
    first = 2;
    const double a2 = -m[1] / ssumm2 + Poly(kC2, 6, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
  } else {
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
  }
  a[0] = a1;
  for (int i = first; i < half; ++i) a[static_cast<std::size_t>(i)] = -m[static_cast<std::size_t>(i)] / fac;
  return a;
}

}  // namespace

TestResult ShapiroWilk(std::span<const double> sample) {
  const int n = static_cast<int>(sample.size());
  if (n < 3) throw Error(ErrorCode::kSampleTooSmall, "Shapiro-Wilk needs n >= 3");
  if (n > 5000) throw Error(ErrorCode::kInvalidArgument, "Shapiro-Wilk supports n <= 5000");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range >= kSmall)) throw Error(ErrorCode::kConstantSample, "sample has no spread");

  const std::vector<double> a = Coefficients(n);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double ssq = 0.0;
  for (double v : x) ssq += (v - mean) * (v - mean);
  double lin = 0.0;
  for (int i = 0; i < n / 2; ++i) {
    lin += a[static_cast<std::size_t>(i)] * (x[static_cast<std::size_t>(n - 1 - i)] - x[static_cast<std::size_t>(i)]);
  }
  const double w = std::min(1.0, lin * lin / ssq);
  const double w1 = 1.0 - w;

  TestResult result;
  result.statistic = w;
  if (n == 3) {
    constexpr double kPi6 = 1.90985931710274;   // 6 / pi
    constexpr double kStqr = 1.04719755119660;  // pi / 3
    result.p_value = std::max(0.0, kPi6 * (std::asin(std::sqrt(w)) - kStqr));
    return result;
  }
  if (w1 <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  const double an = n;
  double y = std::log(w1);
  double m = 0.0;
  double s = 0.0;
  if (n <= 11) {
    const double gamma = Poly(kG, 2, an);
    if (y >= gamma) {
      result.p_value = 1e-99;
      return result;
    }
    y = -std::log(gamma - y);
    m = Poly(kC3, 4, an);
    s = std::exp(Poly(kC4, 4, an));
  } else {
    const double xx = std::log(an);
    m = Poly(kC5, 4, xx);
    s = std::exp(Poly(kC6, 3, xx));
  }
  const boost::math::normal_distribution<double> std_normal;
  result.p_value = boost::math::cdf(boost::math::complement(std_normal, (y - m) / s));
  return result;
}

}  // namespace faircca
