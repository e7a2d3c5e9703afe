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

#ifndef RERO_TYPES_H_
#define RERO_TYPES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace rero {

enum class Family { kLaplace, kGaussian };

// Adjacency relation of the dominating pair. Reconstruction bounds only ever
// need kAddOne; kRemoveOne is used for symmetrization and DP conversion.
enum class Adjacency { kAddOne, kRemoveOne };

enum class Engine { kClosedForm, kExact, kEdgeworth, kClt, kPld, kMonteCarlo };

absl::string_view FamilyName(Family family);
absl::string_view AdjacencyName(Adjacency adjacency);
absl::string_view EngineName(Engine engine);
absl::StatusOr<Family> ParseFamily(absl::string_view name);
absl::StatusOr<Engine> ParseEngine(absl::string_view name);

// An additive-noise mechanism, optionally Poisson subsampled and composed.
// Sensitivity is measured in L1 for the Laplace family and L2 for the
// Gaussian family; noise_scale is b or sigma respectively.
struct MechanismSpec {
  Family family = Family::kGaussian;
  double noise_scale = 1.0;
  double sensitivity = 1.0;
  double sampling_rate = 1.0;
  int64_t steps = 1;

  // Per-step effect size sensitivity / noise_scale. All trade-off quantities
  // depend on the mechanism only through this value, sampling_rate and steps.
  double EffectSize() const { return sensitivity / noise_scale; }
  bool IsSubsampled() const { return sampling_rate < 1.0; }
};

absl::Status ValidateSpec(const MechanismSpec& spec);

MechanismSpec GaussianSpec(double sigma, double sensitivity = 1.0,
                           double sampling_rate = 1.0, int64_t steps = 1);
MechanismSpec LaplaceSpec(double scale, double sensitivity = 1.0,
                          double sampling_rate = 1.0, int64_t steps = 1);

// Gaussian-DP effect size; 0 is perfect privacy.
struct GaussianEffect {
  double mu = 0.0;
};

struct EpsDelta {
  double eps = 0.0;
  double delta = 0.0;
};

// Result of a reconstruction-robustness computation: the adversary with prior
// success probability kappa succeeds with probability at most gamma.
struct ReRoBound {
  double kappa = 0.0;
  double gamma = 0.0;
  // Equal to gamma for point estimates; a guaranteed bracket for the PLD
  // engine and a 95% interval for Monte Carlo.
  double gamma_lower = 0.0;
  double gamma_upper = 0.0;
  Engine engine = Engine::kClosedForm;
  Adjacency direction = Adjacency::kAddOne;
  // Bracket width or Monte Carlo half-width.
  double error = 0.0;
  std::vector<std::string> warnings;
};

ReRoBound PointBound(double kappa, double gamma, Engine engine);

absl::Status CheckProbability(double value, absl::string_view name);
absl::Status CheckPrior(double kappa);

}  // namespace rero

#endif  // RERO_TYPES_H_
