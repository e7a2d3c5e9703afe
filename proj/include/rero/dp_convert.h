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

#ifndef RERO_DP_CONVERT_H_
#define RERO_DP_CONVERT_H_

#include <cstdint>
#include <functional>
#include <optional>

#include "absl/status/statusor.h"
#include "rero/pld.h"
#include "rero/types.h"

namespace rero {

// (N Delta / b, 0) for the unsubsampled Laplace mechanism.
absl::StatusOr<EpsDelta> EpsLaplace(const MechanismSpec& spec);
// (log(1 + p (e^{N Delta / b} - 1)), 0).
absl::StatusOr<EpsDelta> EpsSubsampledLaplace(const MechanismSpec& spec);

// Phi(-eps/mu + mu/2) - e^eps Phi(-eps/mu - mu/2), clamped to [0, 1].
absl::StatusOr<double> DeltaOfEpsGauss(GaussianEffect mu, double eps);
// Smallest eps with DeltaOfEpsGauss(mu, eps) <= delta; 0 when delta is at
// least delta(0).
absl::StatusOr<double> EpsOfDeltaGauss(GaussianEffect mu, double delta);

struct DeltaBracket {
  double delta = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct EpsBracket {
  double eps = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Privacy profile delta(eps) of the symmetrized trade-off curve, which is the
// larger of the add-one and remove-one hockey-stick divergences.
class PrivacyProfile {
 public:
  // Engines: kClosedForm (Gaussian, p = 1), kExact (one step), kEdgeworth,
  // kPld. std::nullopt picks closed form, then exact, then Edgeworth.
  static absl::StatusOr<PrivacyProfile> Create(
      const MechanismSpec& spec, std::optional<Engine> engine = std::nullopt,
      const PldOptions& pld_options = {});

  Engine engine() const { return engine_; }
  DeltaBracket Delta(double eps) const;
  // Bisection on each side of the bracket.
  absl::StatusOr<EpsBracket> Eps(double delta) const;

 private:
  PrivacyProfile(Engine engine, std::function<DeltaBracket(double)> delta)
      : engine_(engine), delta_(std::move(delta)) {}

  Engine engine_;
  std::function<DeltaBracket(double)> delta_;
};

// eps of the subsampled Gaussian mechanism at the given delta.
absl::StatusOr<EpsBracket> EpsDeltaSgm(
    const MechanismSpec& spec, double delta,
    std::optional<Engine> engine = std::nullopt);

// sigma whose mechanism is (target.eps, target.delta)-DP with equality,
// to within 1e-6 in eps.
absl::StatusOr<double> CalibrateSigma(
    EpsDelta target, int64_t steps, double sampling_rate,
    double sensitivity = 1.0, std::optional<Engine> engine = std::nullopt);

}  // namespace rero

#endif  // RERO_DP_CONVERT_H_
