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

// AVX2 variants of the kernels in kernels_scalar.cc. This translation unit
// is the only one compiled with -mavx2; callers reach it through the
// dispatch table after a CPU check.

#include <cstddef>

#include "rero/simd/kernels.h"

#if defined(__AVX2__)
#include <immintrin.h>

namespace rero::simd {
namespace {

void AccumulateAvx2(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(acc + i);
    const __m256d b = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(a, b));
  }
  for (; i < n; ++i) acc[i] += x[i];
}

std::size_t CountGreaterAvx2(const double* x, std::size_t n, double c) {
  const __m256d threshold = _mm256_set1_pd(c);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(v, threshold, _CMP_GT_OQ));
    count += static_cast<std::size_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) count += x[i] > c ? 1 : 0;
  return count;
}

// (a + ib)(c + id) on two interleaved complex numbers per register.
inline __m256d ComplexMul(__m256d z, __m256d w) {
  const __m256d w_re = _mm256_movedup_pd(w);
  const __m256d w_im = _mm256_permute_pd(w, 0xF);
  const __m256d t1 = _mm256_mul_pd(z, w_re);
  const __m256d z_swapped = _mm256_permute_pd(z, 0x5);
  const __m256d t2 = _mm256_mul_pd(z_swapped, w_im);
  return _mm256_addsub_pd(t1, t2);
}

void ComplexMultiplyAvx2(double* z, const double* w, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(z + 2 * i);
    const __m256d b = _mm256_loadu_pd(w + 2 * i);
    _mm256_storeu_pd(z + 2 * i, ComplexMul(a, b));
  }
  for (; i < n; ++i) {
    const double a = z[2 * i], b = z[2 * i + 1];
    const double c = w[2 * i], d = w[2 * i + 1];
    z[2 * i] = a * c - b * d;
    z[2 * i + 1] = b * c + a * d;
  }
}

void ComplexSquareAvx2(double* z, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(z + 2 * i);
    _mm256_storeu_pd(z + 2 * i, ComplexMul(a, a));
  }
  for (; i < n; ++i) {
    const double re = z[2 * i], im = z[2 * i + 1];
    z[2 * i] = re * re - im * im;
    z[2 * i + 1] = re * im + im * re;
  }
}

double ClampNegativeAvx2(double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d removed = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    removed = _mm256_sub_pd(removed, _mm256_min_pd(v, zero));
    _mm256_storeu_pd(x + i, _mm256_max_pd(v, zero));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, removed);
  double total = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
  for (; i < n; ++i) {
    if (x[i] < 0.0) {
      total -= x[i];
      x[i] = 0.0;
    }
  }
  return total;
}

double SumAvx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  const __m128d folded =
      _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double total = _mm_cvtsd_f64(folded) +
                 _mm_cvtsd_f64(_mm_unpackhi_pd(folded, folded));
  for (; i < n; ++i) total += x[i];
  return total;
}

void ScaleAvx2(double* x, std::size_t n, double factor) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), f));
  }
  for (; i < n; ++i) x[i] *= factor;
}

}  // namespace

const KernelTable* Avx2Kernels() {
  static const KernelTable table = {
      Isa::kAvx2,         AccumulateAvx2,      CountGreaterAvx2,
      ComplexSquareAvx2,  ComplexMultiplyAvx2, ClampNegativeAvx2,
      SumAvx2,            ScaleAvx2,
  };
  return &table;
}

}  // namespace rero::simd

#else

namespace rero::simd {
const KernelTable* Avx2Kernels() { return nullptr; }
}  // namespace rero::simd

#endif
