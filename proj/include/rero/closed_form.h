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

#ifndef RERO_CLOSED_FORM_H_
#define RERO_CLOSED_FORM_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "rero/types.h"

namespace rero {

// Trade-off function of the Laplace mechanism with effect size mu.
absl::StatusOr<double> LaplaceTradeoff(double alpha, double mu);

// Trade-off function of Gaussian differential privacy,
// Phi(Phi^{-1}(1 - alpha) - mu). Exact at alpha = 0 and alpha = 1.
absl::StatusOr<double> GaussianTradeoff(double alpha, double mu);

// Effect size of `steps` homogeneous Gaussian steps: sqrt(steps) * mu.
GaussianEffect ComposeGaussian(GaussianEffect per_step, int64_t steps);

// Effect size of heterogeneous Gaussian steps: root of the sum of squares.
absl::StatusOr<GaussianEffect> ComposeGaussianHeterogeneous(
    std::span<const double> mus);

// gamma = 1 - LaplaceTradeoff(kappa, mu).
absl::StatusOr<ReRoBound> LaplaceReRo(double kappa, double mu);

// gamma = 1 - GaussianTradeoff(kappa, mu). Pass the composed effect size for
// N-fold composition.
absl::StatusOr<ReRoBound> GaussianReRo(double kappa, double mu);

// True when the mechanism reduces to a closed form: Gaussian without
// subsampling (any N), or Laplace without subsampling at N = 1.
bool HasClosedForm(const MechanismSpec& spec);

// Closed-form AddOne bound; requires HasClosedForm(spec).
absl::StatusOr<ReRoBound> ClosedFormReRo(const MechanismSpec& spec,
                                         double kappa);

}  // namespace rero

#endif  // RERO_CLOSED_FORM_H_
