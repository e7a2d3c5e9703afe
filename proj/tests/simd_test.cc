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


#include "rero/simd/kernels.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace rero::simd {
namespace {

constexpr std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 1001};

std::vector<double> Random(std::size_t n, uint64_t seed, double lo = -1.0,
                           double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

class KernelEquivalenceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (Avx2Kernels() == nullptr || !CpuSupportsAvx2()) {
      GTEST_SKIP() << "AVX2 kernels unavailable";
    }
  }
  const KernelTable& scalar_ = ScalarKernels();
  const KernelTable& avx2() const { return *Avx2Kernels(); }
};

TEST_F(KernelEquivalenceTest, Accumulate) {
  for (std::size_t n : kLengths) {
    std::vector<double> a = Random(n, 1), b = a;
    const std::vector<double> x = Random(n, 2);
    scalar_.accumulate(a.data(), x.data(), n);
    avx2().accumulate(b.data(), x.data(), n);
    EXPECT_EQ(a, b) << n;
  }
}

TEST_F(KernelEquivalenceTest, CountGreater) {
  for (std::size_t n : kLengths) {
    std::vector<double> x = Random(n, 3);
    if (n > 4) x[n / 2] = 0.25;  // exact tie stays uncounted
    for (double c : {-2.0, -0.5, 0.0, 0.25, 0.9, 2.0}) {
      EXPECT_EQ(scalar_.count_greater(x.data(), n, c),
                avx2().count_greater(x.data(), n, c))
          << n << " " << c;
    }
  }
  const std::vector<double> x = {1.0, 2.0, 3.0, 3.0, 4.0};
  EXPECT_EQ(scalar_.count_greater(x.data(), x.size(), 3.0), 1u);
}

TEST_F(KernelEquivalenceTest, ComplexSquare) {
  for (std::size_t n : kLengths) {
    std::vector<double> a = Random(2 * n, 4), b = a;
    const std::vector<double> original = a;
    scalar_.complex_square(a.data(), n);
    avx2().complex_square(b.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::complex<double> z(original[2 * i], original[2 * i + 1]);
      const std::complex<double> expected = z * z;
      const double tol = 4e-16 * std::norm(z) + 1e-300;
      EXPECT_NEAR(a[2 * i], expected.real(), tol);
      EXPECT_NEAR(a[2 * i + 1], expected.imag(), tol);
      EXPECT_NEAR(b[2 * i], a[2 * i], tol);
      EXPECT_NEAR(b[2 * i + 1], a[2 * i + 1], tol);
    }
  }
}

TEST_F(KernelEquivalenceTest, ComplexMultiply) {
  for (std::size_t n : kLengths) {
    std::vector<double> a = Random(2 * n, 5), b = a;
    const std::vector<double> w = Random(2 * n, 6);
    scalar_.complex_multiply(a.data(), w.data(), n);
    avx2().complex_multiply(b.data(), w.data(), n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      EXPECT_NEAR(a[i], b[i], 1e-15) << n << " " << i;
    }
  }
}

TEST_F(KernelEquivalenceTest, ClampNegative) {
  for (std::size_t n : kLengths) {
    std::vector<double> a = Random(n, 7), b = a;
    double removed = 0.0;
    for (double v : a) removed += std::max(0.0, -v);
    const double ra = scalar_.clamp_negative(a.data(), n);
    const double rb = avx2().clamp_negative(b.data(), n);
    EXPECT_EQ(a, b) << n;
    const double tol = 1e-15 * static_cast<double>(n + 1);
    EXPECT_NEAR(ra, removed, tol);
    EXPECT_NEAR(rb, removed, tol);
    for (double v : a) EXPECT_GE(v, 0.0);
  }
}

TEST_F(KernelEquivalenceTest, Sum) {
  for (std::size_t n : kLengths) {
    const std::vector<double> x = Random(n, 8, 0.0, 1.0);
    long double exact = 0.0L;
    for (double v : x) exact += v;
    const double tol = 1e-15 * static_cast<double>(n + 1);
    EXPECT_NEAR(scalar_.sum(x.data(), n), static_cast<double>(exact), tol);
    EXPECT_NEAR(avx2().sum(x.data(), n), static_cast<double>(exact), tol);
  }
}

TEST_F(KernelEquivalenceTest, Scale) {
  for (std::size_t n : kLengths) {
    std::vector<double> a = Random(n, 9), b = a;
    scalar_.scale(a.data(), n, 1.0 / 3.0);
    avx2().scale(b.data(), n, 1.0 / 3.0);
    EXPECT_EQ(a, b) << n;
  }
}

TEST(KernelDispatchTest, NamesAndSelection) {
  EXPECT_EQ(IsaName(Isa::kScalar), "scalar");
  EXPECT_EQ(IsaName(Isa::kAvx2), "avx2");
  EXPECT_EQ(ScalarKernels().isa, Isa::kScalar);
  const KernelTable& active = Kernels();
  if (active.isa == Isa::kAvx2) {
    EXPECT_TRUE(CpuSupportsAvx2());
  }
}

}  // namespace
}  // namespace rero::simd
