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

#include "faircca/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define FAIRCCA_HAVE_AVX2_UNIT 1
#endif

namespace faircca::simd {

bool Avx2UnitCompiled() {
#ifdef FAIRCCA_HAVE_AVX2_UNIT
  return true;
#else
  return false;
#endif
}

}  // namespace faircca::simd

namespace faircca::simd::avx2 {

#ifdef FAIRCCA_HAVE_AVX2_UNIT

namespace {

inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

double Dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4),
                           _mm256_loadu_pd(pb + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    i += 4;
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += pa[i] * pb[i];
  return sum;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
    const __m256d d1 =
        _mm256_sub_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  if (i + 4 <= n) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    i += 4;
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = pa[i] - pb[i];
    sum += d * d;
  }
  return sum;
}

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(py + i,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i)));
  }
  for (; i < n; ++i) py[i] += alpha * px[i];
}

#else  // !FAIRCCA_HAVE_AVX2_UNIT

// Not reachable: dispatch never selects this backend when the unit is absent.
double Dot(std::span<const double> a, std::span<const double> b) {
  return scalar::Dot(a, b);
}
double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  return scalar::SquaredDistance(a, b);
}
void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  scalar::Axpy(alpha, x, y);
}

#endif

}  // namespace faircca::simd::avx2
