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

#ifndef RERO_MECHANISMS_H_
#define RERO_MECHANISMS_H_

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "absl/status/statusor.h"
#include "rero/types.h"

namespace rero {

// Counter-style stream generator: (seed, stream) fully determines output.
using Rng = std::mt19937_64;
Rng MakeStream(uint64_t seed, uint64_t stream);

// Mixture of at most two unit-family components with a common scale.
struct NoiseMixture {
  struct Component {
    double weight;
    double location;
  };
  Family family = Family::kGaussian;
  double scale = 1.0;
  std::vector<Component> components;

  double Cdf(double y) const;
  double Sf(double y) const;
  double Pdf(double y) const;
  // P(a < Y <= b).
  double IntervalMass(double a, double b) const;
  // y with Sf(y) = q.
  double UpperQuantile(double q) const;
  double Sample(Rng& rng) const;
};

struct DominatingPair {
  NoiseMixture null_dist;         // nu, law of the output under H0
  NoiseMixture alternative_dist;  // mu, law of the output under H1
};

// Worst-case pair of output laws for the mechanism and adjacency, in the
// mechanism's own units.
absl::StatusOr<DominatingPair> MakeDominatingPair(const MechanismSpec& spec,
                                                  Adjacency adjacency);

// Privacy loss random variable of a single (uncomposed) step. The output y is
// expressed in units of the noise scale, so the pair is
// (nu, mu) with unit scale and shift equal to the effect size.
class PrivacyLossModel {
 public:
  static absl::StatusOr<PrivacyLossModel> Create(const MechanismSpec& spec,
                                                 Adjacency adjacency);

  Family family() const { return family_; }
  Adjacency adjacency() const { return adjacency_; }
  double effect_size() const { return effect_; }
  double sampling_rate() const { return rate_; }

  // log(d mu / d nu)(y); non-decreasing in y.
  double LogRatio(double y) const;
  // sup{y : LogRatio(y) <= l}, possibly +-inf.
  double ThresholdFor(double l) const;
  // Infimum / supremum of LogRatio over the real line.
  double LogRatioMin() const;
  double LogRatioMax() const;
  // Points where the densities are not smooth.
  std::vector<double> Kinks() const;

  const NoiseMixture& null_dist() const { return null_; }
  const NoiseMixture& alternative_dist() const { return alt_; }

  double SampleNullStatistic(Rng& rng) const {
    return LogRatio(null_.Sample(rng));
  }
  double SampleAlternativeStatistic(Rng& rng) const {
    return LogRatio(alt_.Sample(rng));
  }

 private:
  PrivacyLossModel(Family family, Adjacency adjacency, double effect,
                   double rate, NoiseMixture null_dist, NoiseMixture alt);

  // Log density ratio of the unsubsampled pair.
  double BaseLogRatio(double y) const;
  // sup{y : BaseLogRatio(y) <= g}.
  double BaseThreshold(double g) const;

  Family family_;
  Adjacency adjacency_;
  double effect_;
  double rate_;
  NoiseMixture null_;
  NoiseMixture alt_;
};

}  // namespace rero

#endif  // RERO_MECHANISMS_H_
