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

#ifndef FAIRCCA_KERNELS_HPP_
#define FAIRCCA_KERNELS_HPP_

// Data-parallel inner loops used by the classifiers. Each primitive has a
// portable scalar reference and an AVX2/FMA variant; the variant is picked at
// runtime from CPUID (override with FAIRCCA_SIMD=scalar|avx2). The two paths
// agree to rounding, not bit-for-bit, because the vector path reassociates
// the reductions.

#include <cstddef>
#include <span>
#include <string_view>

namespace faircca::simd {

enum class Backend { kScalar, kAvx2 };

std::string_view BackendName(Backend backend);

// True when the CPU supports AVX2 and FMA and the AVX2 unit was compiled in.
bool Avx2Available();

Backend ActiveBackend();

// Throws Error(kInvalidArgument) if the requested backend is unavailable.
void SetBackend(Backend backend);

double Dot(std::span<const double> a, std::span<const double> b);
double SquaredDistance(std::span<const double> a, std::span<const double> b);
// y += alpha * x
void Axpy(double alpha, std::span<const double> x, std::span<double> y);

// out[i] = <row_i, x> for a row-major n_rows x dim block.
void DotRows(std::span<const double> rows, std::size_t dim,
             std::span<const double> x, std::span<double> out);
// out[i] = ||row_i - x||^2
void SquaredDistanceRows(std::span<const double> rows, std::size_t dim,
                         std::span<const double> x, std::span<double> out);

namespace scalar {
double Dot(std::span<const double> a, std::span<const double> b);
double SquaredDistance(std::span<const double> a, std::span<const double> b);
void Axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace scalar

namespace avx2 {
// Callers must check Avx2Available() first.
double Dot(std::span<const double> a, std::span<const double> b);
double SquaredDistance(std::span<const double> a, std::span<const double> b);
void Axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace avx2

}  // namespace faircca::simd

#endif  // FAIRCCA_KERNELS_HPP_
