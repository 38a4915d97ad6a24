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

#include <atomic>
#include <cstdlib>
#include <string>

#include "faircca/error.hpp"
#include "faircca/kernels.hpp"

namespace faircca::simd {

bool Avx2UnitCompiled();  // kernels_avx2.cpp

namespace {

struct KernelTable {
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*sqdist)(std::span<const double>, std::span<const double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
};

constexpr KernelTable kScalarTable{&scalar::Dot, &scalar::SquaredDistance,
                                   &scalar::Axpy};
constexpr KernelTable kAvx2Table{&avx2::Dot, &avx2::SquaredDistance,
                                 &avx2::Axpy};

bool CpuHasAvx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend InitialBackend() {
  const bool avx2 = Avx2Available();
  if (const char* env = std::getenv("FAIRCCA_SIMD")) {
    const std::string value(env);
    if (value == "scalar") return Backend::kScalar;
    if (value == "avx2" && avx2) return Backend::kAvx2;
  }
  return avx2 ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& BackendSlot() {
  static std::atomic<Backend> slot{InitialBackend()};
  return slot;
}

const KernelTable& Table() {
  return BackendSlot().load(std::memory_order_relaxed) == Backend::kAvx2
             ? kAvx2Table
             : kScalarTable;
}

}  // namespace

std::string_view BackendName(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

bool Avx2Available() {
  static const bool available = Avx2UnitCompiled() && CpuHasAvx2();
  return available;
}

Backend ActiveBackend() { return BackendSlot().load(std::memory_order_relaxed); }

void SetBackend(Backend backend) {
  if (backend == Backend::kAvx2 && !Avx2Available()) {
    throw Error(ErrorCode::kInvalidArgument, "AVX2 backend not available");
  }
  BackendSlot().store(backend, std::memory_order_relaxed);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  return Table().dot(a, b);
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  return Table().sqdist(a, b);
}

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  Table().axpy(alpha, x, y);
}

void DotRows(std::span<const double> rows, std::size_t dim,
             std::span<const double> x, std::span<double> out) {
  const auto& table = Table();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = table.dot(rows.subspan(i * dim, dim), x);
  }
}

void SquaredDistanceRows(std::span<const double> rows, std::size_t dim,
                         std::span<const double> x, std::span<double> out) {
  const auto& table = Table();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = table.sqdist(rows.subspan(i * dim, dim), x);
  }
}

}  // namespace faircca::simd
