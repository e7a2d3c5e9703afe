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


#include "rero/pld.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "rero/closed_form.h"
#include "rero/cumulants.h"
#include "rero/mechanisms.h"
#include "rero/normal.h"

namespace rero {
namespace {

PrivacyLossModel Model(const MechanismSpec& spec) {
  return *PrivacyLossModel::Create(spec, Adjacency::kAddOne);
}

double FullTotal(const DiscretePld& pld) {
  return std::accumulate(pld.masses.begin(), pld.masses.end(), 0.0) +
         pld.h1_infinity + pld.h1_dropped;
}

TEST(DiscretizePldTest, DegenerateLossIsOneAtom) {
  for (Rounding mode : {Rounding::kPessimistic, Rounding::kOptimistic}) {
    auto pld = DiscretizePld(Model(GaussianSpec(1.0, 0.0)), Hypothesis::kH1,
                             1e-3, 1e-12, mode);
    ASSERT_TRUE(pld.ok()) << pld.status();
    ASSERT_EQ(pld->masses.size(), 1u);
    EXPECT_EQ(pld->Loss(0), 0.0);
    EXPECT_NEAR(pld->masses[0], 1.0, 1e-15);
  }
}

TEST(DiscretizePldTest, MassesSumToOne) {
  for (const MechanismSpec& spec :
       {GaussianSpec(1.0), GaussianSpec(0.5, 1.0, 0.3), LaplaceSpec(1.0),
        LaplaceSpec(0.7, 1.0, 0.4)}) {
    for (Rounding mode : {Rounding::kPessimistic, Rounding::kOptimistic}) {
      auto pld = DiscretizePld(Model(spec), Hypothesis::kH1, 1e-3, 1e-12, mode);
      ASSERT_TRUE(pld.ok()) << pld.status();
      EXPECT_NEAR(FullTotal(*pld), 1.0, 1e-12);
      for (double m : pld->masses) EXPECT_GE(m, 0.0);
    }
  }
}

TEST(DiscretizePldTest, GaussianCdfAtZero) {
  // Under H1 the loss is N(1/2, 1): P(T <= 0) = Phi(-1/2) = 1 - Phi(1/2).
  auto pld = DiscretizePld(Model(GaussianSpec(1.0)), Hypothesis::kH0, 1e-3,
                           1e-12, Rounding::kPessimistic);
  ASSERT_TRUE(pld.ok());
  // Under H0 the loss is N(-1/2, 1): P(T <= 0) = Phi(1/2) = 0.69146.
  EXPECT_NEAR(pld->Cdf(0.0), NormalCdf(0.5), 1e-3);
  EXPECT_NEAR(NormalCdf(0.5), 0.69146, 1e-5);
}

TEST(DiscretizePldTest, MeansAreOrdered) {
  for (const MechanismSpec& spec :
       {GaussianSpec(1.0), GaussianSpec(0.6, 1.0, 0.2), LaplaceSpec(1.0, 1.0, 0.5)}) {
    const PrivacyLossModel model = Model(spec);
    auto c = Cumulants(model);
    ASSERT_TRUE(c.ok());
    auto pess = DiscretizePld(model, Hypothesis::kH1, 1e-2, 1e-12,
                              Rounding::kPessimistic);
    auto opt = DiscretizePld(model, Hypothesis::kH1, 1e-2, 1e-12,
                             Rounding::kOptimistic);
    ASSERT_TRUE(pess.ok() && opt.ok());
    // Dropped optimistic mass counts as -inf; use the lowest grid point as a
    // finite stand-in, which only raises the optimistic mean.
    const double opt_mean = opt->FiniteMean() + opt->h1_dropped * opt->origin;
    EXPECT_GE(pess->FiniteMean(), c->h1[0] - 1e-9);
    EXPECT_LE(opt_mean, c->h1[0] + 1e-9);
  }
}

TEST(DiscretizePldTest, RejectsBadSpacing) {
  const PrivacyLossModel model = Model(GaussianSpec(1.0));
  EXPECT_FALSE(DiscretizePld(model, Hypothesis::kH1, 0.0, 1e-12,
                             Rounding::kPessimistic).ok());
  EXPECT_FALSE(DiscretizePld(model, Hypothesis::kH1, 1.0, 1e-12,
                             Rounding::kPessimistic).ok());
  EXPECT_FALSE(DiscretizePld(model, Hypothesis::kH1, 1e-3, 0.0,
                             Rounding::kPessimistic).ok());
}

TEST(ComposePldTest, OneStepIsIdentity) {
  auto pld = DiscretizePld(Model(GaussianSpec(1.0, 1.0, 0.5)), Hypothesis::kH1,
                           1e-3, 1e-12, Rounding::kPessimistic);
  ASSERT_TRUE(pld.ok());
  auto once = ComposePld(*pld, 1);
  ASSERT_TRUE(once.ok());
  EXPECT_EQ(once->masses, pld->masses);
  EXPECT_EQ(once->origin, pld->origin);
}

TEST(ComposePldTest, BernoulliSquares) {
  DiscretePld coin;
  coin.origin = 0.0;
  coin.spacing = 1.0;
  coin.masses = {0.5, 0.5};
  auto two = ComposePld(coin, 2);
  ASSERT_TRUE(two.ok());
  ASSERT_EQ(two->masses.size(), 3u);
  EXPECT_NEAR(two->masses[0], 0.25, 1e-15);
  EXPECT_NEAR(two->masses[1], 0.5, 1e-15);
  EXPECT_NEAR(two->masses[2], 0.25, 1e-15);
  EXPECT_EQ(two->origin, 0.0);
}

TEST(ComposePldTest, LongVectorsUseTransform) {
  DiscretePld law;
  law.origin = -1.0;
  law.spacing = 0.5;
  law.masses.assign(300, 1.0 / 300.0);
  auto three = ComposePld(law, 3);
  ASSERT_TRUE(three.ok());
  EXPECT_NEAR(three->origin, -3.0, 1e-12);
  EXPECT_NEAR(FullTotal(*three), 1.0, 1e-12);
  // Uniform on 300 points: the composed middle mass matches a direct count.
  // Number of ways to reach sum 448 with three draws from 0..299.
  double ways = 0.0;
  for (int a = 0; a < 300; ++a) {
    for (int b = 0; b < 300; ++b) {
      const int c = 448 - a - b;
      if (c >= 0 && c < 300) ways += 1.0;
    }
  }
  EXPECT_NEAR(three->masses[448], ways / (300.0 * 300.0 * 300.0), 1e-14);
}

TEST(ComposePldTest, MeanIsAdditive) {
  auto pld = DiscretizePld(Model(GaussianSpec(1.0, 1.0, 0.5)), Hypothesis::kH1,
                           1e-3, 1e-12, Rounding::kPessimistic);
  ASSERT_TRUE(pld.ok());
  auto composed = ComposePld(*pld, 20);
  ASSERT_TRUE(composed.ok());
  EXPECT_NEAR(composed->FiniteMean(), 20.0 * pld->FiniteMean(), 1e-9);
}

TEST(ComposePldTest, CumulantsAdd) {
  const PrivacyLossModel model = Model(GaussianSpec(0.8, 1.0, 0.4));
  auto c = Cumulants(model);
  ASSERT_TRUE(c.ok());
  auto pld = DiscretizePld(model, Hypothesis::kH1, 1e-4, 1e-14,
                           Rounding::kPessimistic);
  ASSERT_TRUE(pld.ok());
  const int n = 16;
  auto composed = ComposePld(*pld, n);
  ASSERT_TRUE(composed.ok());
  double mean = 0.0, total = 0.0;
  for (std::size_t i = 0; i < composed->masses.size(); ++i) {
    mean += composed->masses[i] * composed->Loss(i);
    total += composed->masses[i];
  }
  mean /= total;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < composed->masses.size(); ++i) {
    const double d = composed->Loss(i) - mean;
    m2 += composed->masses[i] * d * d;
    m3 += composed->masses[i] * d * d * d;
    m4 += composed->masses[i] * d * d * d * d;
  }
  m2 /= total;
  m3 /= total;
  m4 /= total;
  // Pessimistic splitting adds at most spacing^2 / 4 variance per step.
  const double grid = n * 1e-8;
  EXPECT_NEAR(mean, n * c->h1[0], 1e-6 * std::fabs(n * c->h1[0]) + n * 1e-4);
  EXPECT_NEAR(m2, n * c->h1[1], 1e-6 * n * c->h1[1] + grid);
  EXPECT_NEAR(m3, n * c->h1[2], 1e-4 * std::fabs(n * c->h1[2]) + 1e-6);
  EXPECT_NEAR(m4 - 3.0 * m2 * m2, n * c->h1[3],
              1e-3 * std::fabs(n * c->h1[3]) + 1e-5);
}

TEST(GammaPldBracketTest, GaussianContainsClosedForm) {
  auto bound = GammaPldBracket(GaussianSpec(1.0), 0.05);
  ASSERT_TRUE(bound.ok()) << bound.status();
  const double truth = GaussianReRo(0.05, 1.0)->gamma;
  EXPECT_LE(bound->gamma_lower, truth);
  EXPECT_GE(bound->gamma_upper, truth);
  EXPECT_LE(bound->gamma_upper - bound->gamma_lower, 1e-3);
  EXPECT_NEAR(truth, 0.25951, 1e-5);
}

TEST(GammaPldBracketTest, KappaOneIsOne) {
  auto bound = GammaPldBracket(GaussianSpec(1.0, 1.0, 0.5, 3), 1.0);
  ASSERT_TRUE(bound.ok());
  EXPECT_EQ(bound->gamma_lower, 1.0);
  EXPECT_EQ(bound->gamma_upper, 1.0);
}

TEST(GammaPldBracketTest, ClosedFormsInsideBrackets) {
  PldOptions options;
  options.grid_spacing = 1e-3;
  for (double kappa : {1e-4, 0.01, 0.2}) {
    auto g = GammaPldBracket(GaussianSpec(2.0, 1.0, 1.0, 4), kappa, options);
    ASSERT_TRUE(g.ok());
    const double truth = GaussianReRo(kappa, 1.0)->gamma;
    EXPECT_LE(g->gamma_lower, truth + 1e-12);
    EXPECT_GE(g->gamma_upper, truth - 1e-12);
    auto l = GammaPldBracket(LaplaceSpec(0.8), kappa, options);
    ASSERT_TRUE(l.ok());
    const double lap = LaplaceReRo(kappa, 1.25)->gamma;
    EXPECT_LE(l->gamma_lower, lap + 1e-12);
    EXPECT_GE(l->gamma_upper, lap - 1e-12);
  }
}

TEST(GammaPldBracketTest, RefinementNeverWidens) {
  for (const MechanismSpec& spec :
       {GaussianSpec(1.0, 1.0, 0.3, 10), LaplaceSpec(1.0, 1.0, 0.5, 5)}) {
    double previous = INFINITY;
    for (double h : {4e-3, 2e-3, 1e-3}) {
      PldOptions options;
      options.grid_spacing = h;
      auto g = GammaPldBracket(spec, 0.01, options);
      ASSERT_TRUE(g.ok()) << g.status();
      const double width = g->gamma_upper - g->gamma_lower;
      EXPECT_LE(width, previous + 1e-12) << h;
      previous = width;
    }
  }
}

TEST(GammaPldBracketTest, FullRateSubsampledMatchesGaussian) {
  auto a = GammaPldBracket(GaussianSpec(1.0, 1.0, 1.0, 2), 0.05);
  ASSERT_TRUE(a.ok());
  const double truth = GaussianReRo(0.05, std::sqrt(2.0))->gamma;
  EXPECT_LE(a->gamma_lower, truth);
  EXPECT_GE(a->gamma_upper, truth);
}

TEST(DiscretizePldTest, SubsampledFloorKeepsMass) {
  const PrivacyLossModel model = Model(GaussianSpec(0.25, 1.0, 0.01));
  for (Rounding mode : {Rounding::kPessimistic, Rounding::kOptimistic}) {
    auto pld = DiscretizePld(model, Hypothesis::kH1, 1e-3, 1e-12, mode);
    ASSERT_TRUE(pld.ok()) << pld.status();
    EXPECT_LT(pld->h1_dropped, 1e-9);
    EXPECT_LT(pld->h0_infinity, 1e-9);
    EXPECT_NEAR(FullTotal(*pld), 1.0, 1e-9);
  }
}

TEST(GammaPldBracketTest, SmallRateManyStepsIsTight) {
  PldOptions options;
  options.grid_spacing = 1e-3;
  for (double sigma : {1.0, 0.5, 1.0 / 3.0, 0.25}) {
    auto g = GammaPldBracket(GaussianSpec(sigma, 1.0, 0.01, 1000), 1e-3,
                             options);
    ASSERT_TRUE(g.ok()) << g.status();
    EXPECT_LE(g->gamma_lower, g->gamma_upper);
    EXPECT_LT(g->gamma_upper - g->gamma_lower, 1e-4) << sigma;
  }
}

TEST(HockeyStickFromPldTest, GaussianDelta) {
  auto pair = ComposedPldPair(GaussianSpec(1.0), Adjacency::kAddOne);
  ASSERT_TRUE(pair.ok());
  // delta(eps) = Phi(-eps + 1/2) - e^eps Phi(-eps - 1/2) for mu = 1.
  for (double eps : {0.0, 0.5, 1.5}) {
    const double truth = NormalCdf(-eps + 0.5) - std::exp(eps) * NormalCdf(-eps - 0.5);
    EXPECT_GE(HockeyStickFromPld(pair->pessimistic, eps), truth - 1e-12);
    EXPECT_LE(HockeyStickFromPld(pair->optimistic, eps), truth + 1e-12);
    EXPECT_NEAR(HockeyStickFromPld(pair->pessimistic, eps), truth, 1e-4);
  }
}

}  // namespace
}  // namespace rero
