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


#include "rero/cumulants.h"

#include <cmath>

#include "boost/math/quadrature/tanh_sinh.hpp"
#include "gtest/gtest.h"
#include "rero/mechanisms.h"

namespace rero {
namespace {

// Independent reference: tanh-sinh in long double over the whole line.
long double OracleMoment(const PrivacyLossModel& model, bool alternative,
                         int power, long double shift) {
  boost::math::quadrature::tanh_sinh<long double> integrator;
  const NoiseMixture& law =
      alternative ? model.alternative_dist() : model.null_dist();
  auto f = [&](long double y) -> long double {
    const double d = law.Pdf(static_cast<double>(y));
    if (d == 0.0) return 0.0L;
    const long double t = model.LogRatio(static_cast<double>(y)) - shift;
    return d * std::pow(t, power);
  };
  long double total = 0.0L;
  // Split at the kinks and component locations for the oracle too.
  const double pts[] = {-60.0, 0.0, model.effect_size(), 60.0 + model.effect_size()};
  for (int i = 0; i < 3; ++i) {
    total += integrator.integrate(f, static_cast<long double>(pts[i]),
                                  static_cast<long double>(pts[i + 1]));
  }
  return total;
}

TEST(CumulantsTest, GaussianIsExact) {
  auto model = PrivacyLossModel::Create(GaussianSpec(1.0), Adjacency::kAddOne);
  ASSERT_TRUE(model.ok());
  auto c = Cumulants(*model);
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_NEAR(c->h0[0], -0.5, 1e-12);
  EXPECT_NEAR(c->h0[1], 1.0, 1e-12);
  EXPECT_NEAR(c->h1[0], 0.5, 1e-12);
  for (int k = 2; k < 6; ++k) {
    EXPECT_NEAR(c->h0[k], 0.0, 1e-11) << k;
    EXPECT_NEAR(c->h1[k], 0.0, 1e-11) << k;
  }
  EXPECT_NEAR(c->h0_exp_moment, 1.0, 1e-10);
}

TEST(CumulantsTest, SubsampledMatchesOracle) {
  for (const MechanismSpec& spec :
       {GaussianSpec(1.0, 1.0, 0.3), GaussianSpec(0.5, 1.0, 0.05),
        LaplaceSpec(1.0, 1.0, 0.4), LaplaceSpec(0.5)}) {
    auto model = PrivacyLossModel::Create(spec, Adjacency::kAddOne);
    ASSERT_TRUE(model.ok());
    auto c = Cumulants(*model);
    ASSERT_TRUE(c.ok()) << c.status();
    for (bool alt : {false, true}) {
      const double mean = static_cast<double>(OracleMoment(*model, alt, 1, 0.0L));
      const auto& got = alt ? c->h1 : c->h0;
      EXPECT_NEAR(got[0], mean, 1e-10 * std::max(1.0, std::fabs(mean)));
      const double var = static_cast<double>(OracleMoment(*model, alt, 2, mean));
      EXPECT_NEAR(got[1], var, 1e-10 * std::max(1.0, var));
      const double m3 = static_cast<double>(OracleMoment(*model, alt, 3, mean));
      EXPECT_NEAR(got[2], m3, 1e-9 * std::max(1.0, std::fabs(m3)));
      const double m4 = static_cast<double>(OracleMoment(*model, alt, 4, mean));
      EXPECT_NEAR(got[3], m4 - 3.0 * var * var,
                  1e-9 * std::max(1.0, std::fabs(m4)));
    }
  }
}

TEST(CumulantsTest, LikelihoodRatioNormalization) {
  for (const MechanismSpec& spec :
       {GaussianSpec(0.8, 1.0, 0.2), LaplaceSpec(1.0, 1.0, 0.7),
        GaussianSpec(0.1, 1.0, 0.5)}) {
    auto model = PrivacyLossModel::Create(spec, Adjacency::kAddOne);
    ASSERT_TRUE(model.ok());
    auto c = Cumulants(*model);
    ASSERT_TRUE(c.ok()) << c.status();
    EXPECT_NEAR(c->h0_exp_moment, 1.0, 1e-10);
    // Direct check of E_0[exp T] by the oracle.
    boost::math::quadrature::tanh_sinh<long double> integrator;
    auto f = [&](long double y) -> long double {
      const double d = model->null_dist().Pdf(static_cast<double>(y));
      if (d == 0.0) return 0.0L;
      return std::exp(std::log(static_cast<long double>(d)) +
                      model->LogRatio(static_cast<double>(y)));
    };
    const long double m = model->effect_size();
    const long double e = integrator.integrate(f, -80.0L, 0.0L) +
                          integrator.integrate(f, 0.0L, m) +
                          integrator.integrate(f, m, m + 80.0L);
    EXPECT_NEAR(static_cast<double>(e), 1.0, 1e-10);
  }
}

TEST(CumulantsTest, LargeEffectStaysFast) {
  auto model = PrivacyLossModel::Create(GaussianSpec(1.0 / 300.0, 1.0, 0.5),
                                        Adjacency::kAddOne);
  ASSERT_TRUE(model.ok());
  auto c = Cumulants(*model);
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_GT(c->h1[1], 0.0);
}

TEST(CumulantsTest, RejectsBadOrder) {
  auto model = PrivacyLossModel::Create(GaussianSpec(1.0), Adjacency::kAddOne);
  EXPECT_FALSE(Cumulants(*model, 0).ok());
  EXPECT_FALSE(Cumulants(*model, 7).ok());
}

TEST(CumulantsFromCentralMomentsTest, KnownValues) {
  // Exponential(1): cumulants (k - 1)!.
  const std::array<double, 6> central = {0.0, 1.0, 2.0, 9.0, 44.0, 265.0};
  const auto k = CumulantsFromCentralMoments(1.0, central);
  EXPECT_NEAR(k[0], 1.0, 1e-12);
  EXPECT_NEAR(k[1], 1.0, 1e-12);
  EXPECT_NEAR(k[2], 2.0, 1e-12);
  EXPECT_NEAR(k[3], 6.0, 1e-12);
  EXPECT_NEAR(k[4], 24.0, 1e-12);
  EXPECT_NEAR(k[5], 120.0, 1e-12);
}

}  // namespace
}  // namespace rero
