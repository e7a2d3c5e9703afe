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


#include "rero/dp_convert.h"

#include <cmath>

#include "boost/math/special_functions/erf.hpp"
#include "boost/multiprecision/cpp_bin_float.hpp"
#include "gtest/gtest.h"
#include "rero/closed_form.h"

namespace rero {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

Big Phi(const Big& x) {
  return boost::math::erfc(-x / boost::multiprecision::sqrt(Big(2))) / 2;
}

// delta(eps) of N(mu, 1) against N(0, 1).
double OracleGaussDelta(double mu, double eps) {
  const Big m = mu, e = eps;
  const Big value = Phi(-e / m + m / 2) - exp(e) * Phi(-e / m - m / 2);
  return static_cast<double>(value);
}

// Larger of the two hockey-stick divergences between N(0, 1) and
// p N(m, 1) + (1 - p) N(0, 1), from the crossing points of the densities.
double OracleSubsampledDelta(double m, double p, double eps) {
  const Big bm = m, bp = p, ee = exp(Big(eps));
  // Add-one: mixture over null on y > y1.
  const Big a = ee - 1 + bp;
  const Big y1 = bm / 2 + log(a / bp) / bm;
  const Big add = bp * Phi(bm - y1) - a * Phi(-y1);
  // Remove-one: null over mixture on y < y2.
  Big remove = 0;
  const Big c = 1 - ee * (1 - bp);
  if (c > 0) {
    const Big y2 = (log(c / (ee * bp)) + bm * bm / 2) / bm;
    remove = c * Phi(y2) - ee * bp * Phi(y2 - bm);
  }
  return static_cast<double>(add > remove ? add : remove);
}

TEST(EpsLaplaceTest, Examples) {
  EXPECT_DOUBLE_EQ(EpsLaplace(LaplaceSpec(2.0))->eps, 0.5);
  EXPECT_DOUBLE_EQ(EpsLaplace(LaplaceSpec(2.0))->delta, 0.0);
  EXPECT_NEAR(EpsLaplace(LaplaceSpec(10.0, 1.0, 1.0, 10))->eps, 1.0, 1e-15);
  EXPECT_EQ(EpsLaplace(LaplaceSpec(1.0, 0.0))->eps, 0.0);
  EXPECT_FALSE(EpsLaplace(GaussianSpec(1.0)).ok());
  EXPECT_FALSE(EpsLaplace(LaplaceSpec(1.0, 1.0, 0.5)).ok());
}

TEST(EpsLaplaceTest, SubsampledExamples) {
  EXPECT_NEAR(EpsSubsampledLaplace(LaplaceSpec(1.0, 1.0, 0.5))->eps, 0.62011,
              1e-5);
  EXPECT_NEAR(EpsSubsampledLaplace(LaplaceSpec(1.0, 1.0, 0.5))->eps,
              std::log1p(0.5 * std::expm1(1.0)), 1e-15);
  EXPECT_EQ(EpsSubsampledLaplace(LaplaceSpec(1.0, 0.0, 0.3))->eps, 0.0);
  EXPECT_FALSE(EpsSubsampledLaplace(GaussianSpec(1.0)).ok());
  for (double b : {0.3, 1.0, 4.0}) {
    const MechanismSpec spec = LaplaceSpec(b, 1.0, 1.0, 3);
    EXPECT_NEAR(EpsSubsampledLaplace(spec)->eps, EpsLaplace(spec)->eps, 1e-12);
  }
}

TEST(DeltaOfEpsGaussTest, Examples) {
  EXPECT_NEAR(*DeltaOfEpsGauss({1.0}, 0.0), 0.38292, 1e-5);
  EXPECT_LT(*DeltaOfEpsGauss({1.0}, 40.0), 1e-100);
  EXPECT_LT(*DeltaOfEpsGauss({1e-6}, 0.1), 1e-12);
  EXPECT_FALSE(DeltaOfEpsGauss({1.0}, -1.0).ok());
}

TEST(DeltaOfEpsGaussTest, MatchesOracle) {
  for (double mu : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    for (double eps : {0.0, 0.01, 0.5, 1.0, 3.0, 8.0}) {
      const double oracle = OracleGaussDelta(mu, eps);
      EXPECT_NEAR(*DeltaOfEpsGauss({mu}, eps), oracle, 1e-12 + 1e-9 * oracle)
          << mu << " " << eps;
    }
  }
}

TEST(DeltaOfEpsGaussTest, NonIncreasing) {
  double previous = 1.0;
  for (double eps = 0.0; eps < 10.0; eps += 0.05) {
    const double d = *DeltaOfEpsGauss({1.5}, eps);
    EXPECT_LE(d, previous);
    previous = d;
  }
}

TEST(EpsOfDeltaGaussTest, Roundtrip) {
  for (double mu : {0.2, 1.0, 3.0}) {
    for (double eps : {0.05, 0.5, 2.0, 6.0}) {
      const double delta = *DeltaOfEpsGauss({mu}, eps);
      if (delta < 1e-300) continue;
      EXPECT_NEAR(*EpsOfDeltaGauss({mu}, delta), eps, 1e-8) << mu << " " << eps;
    }
  }
}

TEST(EpsOfDeltaGaussTest, EdgeCases) {
  EXPECT_NEAR(*EpsOfDeltaGauss({1.0}, 0.38292), 0.0, 1e-4);
  EXPECT_EQ(*EpsOfDeltaGauss({1.0}, 0.999), 0.0);
  EXPECT_FALSE(EpsOfDeltaGauss({1.0}, 0.0).ok());
  EXPECT_FALSE(EpsOfDeltaGauss({1.0}, 1.0).ok());
}

TEST(EpsOfDeltaGaussTest, NonIncreasingInDelta) {
  double previous = INFINITY;
  for (double delta : {1e-12, 1e-8, 1e-5, 1e-3, 0.1}) {
    const double e = *EpsOfDeltaGauss({2.0}, delta);
    EXPECT_LT(e, previous);
    previous = e;
  }
}

TEST(PrivacyProfileTest, SingleStepMatchesOracle) {
  for (double p : {0.1, 0.5, 0.9}) {
    for (double sigma : {0.5, 1.0}) {
      auto profile =
          PrivacyProfile::Create(GaussianSpec(sigma, 1.0, p), Engine::kExact);
      ASSERT_TRUE(profile.ok()) << profile.status();
      for (double eps : {0.0, 0.3, 1.0, 2.5}) {
        const double oracle = OracleSubsampledDelta(1.0 / sigma, p, eps);
        EXPECT_NEAR(profile->Delta(eps).delta, oracle, 1e-10 + 1e-7 * oracle)
            << p << " " << sigma << " " << eps;
      }
    }
  }
}

TEST(PrivacyProfileTest, PldBracketsExact) {
  const MechanismSpec spec = GaussianSpec(0.8, 1.0, 0.3);
  auto pld = PrivacyProfile::Create(spec, Engine::kPld);
  ASSERT_TRUE(pld.ok());
  for (double eps : {0.1, 1.0, 2.0}) {
    const double oracle = OracleSubsampledDelta(1.25, 0.3, eps);
    const DeltaBracket d = pld->Delta(eps);
    EXPECT_LE(d.lower, oracle + 1e-12);
    EXPECT_GE(d.upper, oracle - 1e-12);
  }
}

TEST(PrivacyProfileTest, DefaultEngines) {
  EXPECT_EQ(PrivacyProfile::Create(GaussianSpec(1.0, 1.0, 1.0, 5))->engine(),
            Engine::kClosedForm);
  EXPECT_EQ(PrivacyProfile::Create(GaussianSpec(1.0, 1.0, 0.5))->engine(),
            Engine::kExact);
  EXPECT_EQ(PrivacyProfile::Create(GaussianSpec(1.0, 1.0, 0.5, 50))->engine(),
            Engine::kEdgeworth);
}

TEST(EpsDeltaSgmTest, FullRateDelegates) {
  auto e = EpsDeltaSgm(GaussianSpec(0.7, 1.0, 1.0, 3), 1e-5);
  ASSERT_TRUE(e.ok());
  EXPECT_NEAR(e->eps, *EpsOfDeltaGauss({std::sqrt(3.0) / 0.7}, 1e-5), 1e-8);
}

TEST(EpsDeltaSgmTest, ZeroEffect) {
  auto e = EpsDeltaSgm(GaussianSpec(1.0, 0.0, 0.5, 10), 1e-5);
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e->eps, 0.0);
}

TEST(EpsDeltaSgmTest, EnginesAgree) {
  for (double p : {0.05, 0.2}) {
    const MechanismSpec spec = GaussianSpec(1.0, 1.0, p, 100);
    auto edgeworth = EpsDeltaSgm(spec, 1e-5, Engine::kEdgeworth);
    auto pld = EpsDeltaSgm(spec, 1e-5, Engine::kPld);
    ASSERT_TRUE(edgeworth.ok() && pld.ok());
    EXPECT_GE(edgeworth->eps, pld->lower - 1e-3 - 0.02 * pld->eps) << p;
    EXPECT_LE(edgeworth->eps, pld->upper + 1e-3 + 0.02 * pld->eps) << p;
  }
}

TEST(CalibrateSigmaTest, Roundtrip) {
  for (double p : {0.1, 0.5, 0.9}) {
    auto sigma = CalibrateSigma({4.0, 1e-5}, 1, p);
    ASSERT_TRUE(sigma.ok()) << sigma.status();
    auto e = EpsDeltaSgm(GaussianSpec(*sigma, 1.0, p), 1e-5);
    ASSERT_TRUE(e.ok());
    EXPECT_NEAR(e->eps, 4.0, 1e-6) << p;
    EXPECT_NEAR(OracleSubsampledDelta(1.0 / *sigma, p, 4.0), 1e-5, 1e-8) << p;
  }
}

TEST(CalibrateSigmaTest, DistinctAndOrdered) {
  const double a = *CalibrateSigma({4.0, 1e-5}, 1, 0.1);
  const double b = *CalibrateSigma({4.0, 1e-5}, 1, 0.5);
  const double c = *CalibrateSigma({4.0, 1e-5}, 1, 0.9);
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
}

TEST(CalibrateSigmaTest, FullRateMatchesGaussian) {
  auto sigma = CalibrateSigma({1.0, 1e-5}, 1, 1.0);
  ASSERT_TRUE(sigma.ok());
  // Bisection on the oracle for mu with delta(1) = 1e-5.
  double lo = 0.01, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (OracleGaussDelta(mid, 1.0) > 1e-5 ? hi : lo) = mid;
  }
  EXPECT_NEAR(1.0 / *sigma, 0.5 * (lo + hi), 1e-6);
}

TEST(CalibrateSigmaTest, LargerSigmaSmallerEps) {
  double previous = INFINITY;
  for (double sigma : {0.6, 0.9, 1.5, 3.0}) {
    const double e = EpsDeltaSgm(GaussianSpec(sigma, 1.0, 0.5), 1e-5)->eps;
    EXPECT_LT(e, previous);
    previous = e;
  }
}

TEST(CalibrateSigmaTest, RejectsBadTargets) {
  EXPECT_FALSE(CalibrateSigma({0.0, 1e-5}, 1, 0.5).ok());
  EXPECT_FALSE(CalibrateSigma({1.0, 0.0}, 1, 0.5).ok());
  EXPECT_FALSE(CalibrateSigma({1.0, 1e-5}, 0, 0.5).ok());
}

}  // namespace
}  // namespace rero
