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

#ifndef RERO_SIMD_KERNELS_H_
#define RERO_SIMD_KERNELS_H_

#include <complex>
#include <cstddef>
#include <span>

#include "absl/strings/string_view.h"

namespace rero::simd {

enum class Isa { kScalar, kAvx2 };

absl::string_view IsaName(Isa isa);

// Inner loops shared by the PLD convolution and the Monte Carlo estimator.
// Complex buffers are interleaved (re, im) pairs.
struct KernelTable {
  Isa isa;
  void (*accumulate)(double* acc, const double* x, std::size_t n);
  std::size_t (*count_greater)(const double* x, std::size_t n, double c);
  void (*complex_square)(double* z, std::size_t n_complex);
  void (*complex_multiply)(double* z, const double* w, std::size_t n_complex);
  // Zeroes negative entries; returns the total magnitude removed.
  double (*clamp_negative)(double* x, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  void (*scale)(double* x, std::size_t n, double factor);
};

const KernelTable& ScalarKernels();
// nullptr when the binary was built without AVX2 support.
const KernelTable* Avx2Kernels();

// Table selected at first use: AVX2 when both compiled in and supported by
// the CPU, unless RERO_SIMD=scalar is set in the environment.
const KernelTable& Kernels();
bool CpuSupportsAvx2();

inline void Accumulate(std::span<double> acc, std::span<const double> x) {
  Kernels().accumulate(acc.data(), x.data(), acc.size());
}
inline std::size_t CountGreater(std::span<const double> x, double c) {
  return Kernels().count_greater(x.data(), x.size(), c);
}
inline void ComplexSquare(std::span<std::complex<double>> z) {
  Kernels().complex_square(reinterpret_cast<double*>(z.data()), z.size());
}
inline void ComplexMultiply(std::span<std::complex<double>> z,
                            std::span<const std::complex<double>> w) {
  Kernels().complex_multiply(reinterpret_cast<double*>(z.data()),
                             reinterpret_cast<const double*>(w.data()),
                             z.size());
}
inline double ClampNegative(std::span<double> x) {
  return Kernels().clamp_negative(x.data(), x.size());
}
inline double Sum(std::span<const double> x) {
  return Kernels().sum(x.data(), x.size());
}
inline void Scale(std::span<double> x, double factor) {
  Kernels().scale(x.data(), x.size(), factor);
}

}  // namespace rero::simd

#endif  // RERO_SIMD_KERNELS_H_
