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

#include "rero/closed_form.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "rero/normal.h"

namespace rero {
namespace {

absl::Status CheckEffect(double mu) {
  if (!(mu >= 0.0) || std::isnan(mu)) {
    return absl::OutOfRangeError(
        absl::StrCat("effect size must be non-negative, got ", mu));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> LaplaceTradeoff(double alpha, double mu) {
  if (absl::Status s = CheckProbability(alpha, "alpha"); !s.ok()) return s;
  if (absl::Status s = CheckEffect(mu); !s.ok()) return s;
  if (std::isinf(mu)) return alpha > 0.0 ? 0.0 : 1.0;
  const double knee = 0.5 * std::exp(-mu);
  if (alpha < knee) return 1.0 - alpha * std::exp(mu);
  if (alpha <= 0.5) return std::exp(-mu) / (4.0 * alpha);
  return (1.0 - alpha) * std::exp(-mu);
}

absl::StatusOr<double> GaussianTradeoff(double alpha, double mu) {
  if (absl::Status s = CheckProbability(alpha, "alpha"); !s.ok()) return s;
  if (absl::Status s = CheckEffect(mu); !s.ok()) return s;
  if (alpha == 0.0) return 1.0;
  if (alpha == 1.0) return 0.0;
  return NormalCdf(NormalUpperQuantile(alpha) - mu);
}

GaussianEffect ComposeGaussian(GaussianEffect per_step, int64_t steps) {
  return {std::sqrt(static_cast<double>(steps)) * per_step.mu};
}

absl::StatusOr<GaussianEffect> ComposeGaussianHeterogeneous(
    std::span<const double> mus) {
  if (mus.empty()) {
    return absl::InvalidArgumentError("heterogeneous composition needs at "
                                      "least one effect size");
  }
  // Scaled sum of squares avoids overflow for very large effects.
  double scale = 0.0;
  for (double mu : mus) {
    if (absl::Status s = CheckEffect(mu); !s.ok()) return s;
    scale = std::max(scale, mu);
  }
  if (scale == 0.0) return GaussianEffect{0.0};
  double sum = 0.0;
  for (double mu : mus) sum += (mu / scale) * (mu / scale);
  return GaussianEffect{scale * std::sqrt(sum)};
}

absl::StatusOr<ReRoBound> LaplaceReRo(double kappa, double mu) {
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  absl::StatusOr<double> beta = LaplaceTradeoff(kappa, mu);
  if (!beta.ok()) return beta.status();
  return PointBound(kappa, std::clamp(1.0 - *beta, kappa, 1.0),
                    Engine::kClosedForm);
}

absl::StatusOr<ReRoBound> GaussianReRo(double kappa, double mu) {
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  if (absl::Status s = CheckEffect(mu); !s.ok()) return s;
  // Power of the level-kappa test, formed directly to keep relative accuracy
  // for tiny priors.
  const double gamma =
      kappa == 1.0 ? 1.0 : NormalSf(NormalUpperQuantile(kappa) - mu);
  return PointBound(kappa, std::clamp(gamma, kappa, 1.0), Engine::kClosedForm);
}

bool HasClosedForm(const MechanismSpec& spec) {
  if (spec.sampling_rate < 1.0) return false;
  return spec.family == Family::kGaussian || spec.steps == 1;
}

absl::StatusOr<ReRoBound> ClosedFormReRo(const MechanismSpec& spec,
                                         double kappa) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  if (!HasClosedForm(spec)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "no closed form for subsampled or composed ", FamilyName(spec.family),
        " noise"));
  }
  if (spec.family == Family::kGaussian) {
    return GaussianReRo(
        kappa, ComposeGaussian({spec.EffectSize()}, spec.steps).mu);
  }
  return LaplaceReRo(kappa, spec.EffectSize());
}

}  // namespace rero
