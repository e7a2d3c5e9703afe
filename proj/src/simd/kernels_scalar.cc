// Copyright 2026 The ReRo Bounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstddef>

#include "rero/simd/kernels.h"

namespace rero::simd {
namespace {

void AccumulateScalar(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

std::size_t CountGreaterScalar(const double* x, std::size_t n, double c) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += x[i] > c ? 1 : 0;
  return count;
}

void ComplexSquareScalar(double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = z[2 * i], im = z[2 * i + 1];
    z[2 * i] = re * re - im * im;
    z[2 * i + 1] = re * im + im * re;
  }
}

void ComplexMultiplyScalar(double* z, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = z[2 * i], b = z[2 * i + 1];
    const double c = w[2 * i], d = w[2 * i + 1];
    z[2 * i] = a * c - b * d;
    z[2 * i + 1] = b * c + a * d;
  }
}

double ClampNegativeScalar(double* x, std::size_t n) {
  double removed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < 0.0) {
      removed -= x[i];
      x[i] = 0.0;
    }
  }
  return removed;
}

// Four interleaved partial sums, mirroring the lane layout of the AVX2 path.
double SumScalar(const double* x, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s[0] += x[i];
    s[1] += x[i + 1];
    s[2] += x[i + 2];
    s[3] += x[i + 3];
  }
  double total = (s[0] + s[2]) + (s[1] + s[3]);
  for (; i < n; ++i) total += x[i];
  return total;
}

void ScaleScalar(double* x, std::size_t n, double factor) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= factor;
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable table = {
      Isa::kScalar,         AccumulateScalar,      CountGreaterScalar,
      ComplexSquareScalar,  ComplexMultiplyScalar, ClampNegativeScalar,
      SumScalar,            ScaleScalar,
  };
  return table;
}

}  // namespace rero::simd
