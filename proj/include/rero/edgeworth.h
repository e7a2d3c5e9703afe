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

#ifndef RERO_EDGEWORTH_H_
#define RERO_EDGEWORTH_H_

#include <array>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "rero/cumulants.h"
#include "rero/rero_core.h"
#include "rero/types.h"

namespace rero {

// Edgeworth series for the standardized sum of `steps` i.i.d. copies of a
// privacy loss with the given per-step cumulants.
struct EdgeworthExpansion {
  double mean = 0.0;  // of the sum
  double sd = 1.0;    // of the sum
  // Standardized cumulants lambda_3 .. lambda_6 of the sum.
  std::array<double, 4> lambda{};
  int64_t steps = 1;
  // 0: normal shape only; 2: terms through 1/N; 4: terms through 1/N^2.
  int order = 4;
};

absl::StatusOr<EdgeworthExpansion> MakeExpansion(
    const std::array<double, 6>& per_step, int64_t steps, int order = 4);

// Series value of P(Z <= z) for the standardized sum, clamped to [0, 1].
double EdgeworthCdf(const EdgeworthExpansion& expansion, double z);
// 1 - EdgeworthCdf, evaluated without cancellation in the upper tail.
double EdgeworthSf(const EdgeworthExpansion& expansion, double z);

struct QuantileResult {
  double z = 0.0;
  // Set when the level falls where the series had to be made monotone.
  bool repaired = false;
  double repair_width = 0.0;
};

// Standardized z with EdgeworthCdf(z) = q after isotonic repair.
absl::StatusOr<QuantileResult> EdgeworthQuantile(
    const EdgeworthExpansion& expansion, double q);
// Standardized z with EdgeworthSf(z) = tail after isotonic repair.
absl::StatusOr<QuantileResult> EdgeworthUpperQuantile(
    const EdgeworthExpansion& expansion, double tail);

// Law of the composed (unstandardized) privacy loss under one hypothesis.
// The repaired survival function is tabulated once; evaluation cost does not
// depend on the number of steps.
class EdgeworthLaw : public StatisticLaw {
 public:
  explicit EdgeworthLaw(EdgeworthExpansion expansion);

  double Sf(double x) const override;
  absl::StatusOr<double> UpperQuantile(double tail) const override;
  const EdgeworthExpansion& expansion() const { return expansion_; }
  // Total width of table cells where the series had to be made monotone.
  double repaired_width() const { return repaired_width_; }

 private:
  EdgeworthExpansion expansion_;
  std::vector<double> grid_;
  std::vector<double> repaired_;  // non-increasing survival values
  double repaired_width_ = 0.0;
};

struct EdgeworthPair {
  EdgeworthLaw null_law;
  EdgeworthLaw alt_law;
};
absl::StatusOr<EdgeworthPair> MakeEdgeworthPair(const MechanismSpec& spec,
                                                Adjacency adjacency,
                                                int order = 4);

// gamma from Edgeworth approximations of both hypotheses. Gaussian p = 1 and
// single-step Laplace p = 1 are answered in closed form.
absl::StatusOr<ReRoBound> GammaEdgeworth(const MechanismSpec& spec,
                                         double kappa, int order = 4);

// Trade-off curve on `alphas` from the Edgeworth laws, made monotone.
absl::StatusOr<GridCurve> EdgeworthTradeoff(const MechanismSpec& spec,
                                            Adjacency adjacency,
                                            const std::vector<double>& alphas,
                                            int order = 4);

// Limiting Gaussian-DP parameter p sqrt(N (e^{mu^2} - 1)), mu the per-step
// effect size.
absl::StatusOr<GaussianEffect> CltMuTilde(const MechanismSpec& spec);

// gamma = 1 - GaussianTradeoff(kappa, CltMuTilde(spec)).
absl::StatusOr<ReRoBound> GammaClt(const MechanismSpec& spec, double kappa);

}  // namespace rero

#endif  // RERO_EDGEWORTH_H_
