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

#ifndef RERO_RERO_CORE_H_
#define RERO_RERO_CORE_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "rero/mechanisms.h"
#include "rero/types.h"

namespace rero {

// A trade-off curve alpha -> beta on [0, 1], non-increasing and convex for
// exact and bracketed engines.
struct TradeoffCurve {
  std::function<double(double)> beta;
  Adjacency direction = Adjacency::kAddOne;
  Engine engine = Engine::kClosedForm;
  // Symmetrized curves bound both adjacency directions at once.
  bool symmetrized = false;
  // Optional guaranteed envelopes: beta_lower <= true curve <= beta_upper.
  std::function<double(double)> beta_lower;
  std::function<double(double)> beta_upper;
};

// Piecewise-linear curve through (alpha_i, beta_i). Alphas are increasing
// and span [0, 1].
class GridCurve {
 public:
  GridCurve() = default;
  GridCurve(std::vector<double> alphas, std::vector<double> betas);

  double operator()(double alpha) const;
  // inf{alpha : curve(alpha) <= beta}.
  double Inverse(double beta) const;

  std::span<const double> alphas() const { return alphas_; }
  std::span<const double> betas() const { return betas_; }
  std::size_t size() const { return alphas_.size(); }

 private:
  std::vector<double> alphas_;
  std::vector<double> betas_;
};

// 0, 1 and `points - 2` interior nodes: log-spaced towards both ends with a
// uniform middle section. `points` must be at least 9.
std::vector<double> DefaultAlphaGrid(std::size_t points = 4097);

GridCurve Tabulate(const TradeoffCurve& curve, std::span<const double> alphas);
TradeoffCurve CurveFromGrid(GridCurve grid, Adjacency direction, Engine engine,
                            bool symmetrized = false);

struct IsotonicResult {
  std::vector<double> values;
  // Number of entries changed by the repair.
  std::size_t repaired = 0;
};

// Enforces a non-increasing sequence clipped to [0, 1] by running minimum.
IsotonicResult IsotonicClamp(std::span<const double> raw);

// Trade-off curve of (eps, delta)-DP.
TradeoffCurve EpsDeltaTradeoff(double eps, double delta);

// gamma = 1 - curve(kappa). RemoveOne curves are rejected unless symmetrized.
absl::StatusOr<ReRoBound> GammaFromTradeoff(const TradeoffCurve& curve,
                                            double kappa);

// gamma = min(e^eps kappa + delta, 1).
absl::StatusOr<ReRoBound> GammaFromEpsDelta(double eps, double delta,
                                            double kappa);

// Law of a continuous test statistic, as needed by the level-kappa test.
class StatisticLaw {
 public:
  virtual ~StatisticLaw() = default;
  virtual double Sf(double x) const = 0;
  // x with Sf(x) = tail.
  virtual absl::StatusOr<double> UpperQuantile(double tail) const = 0;
};

class GaussianLaw : public StatisticLaw {
 public:
  GaussianLaw(double mean, double sd) : mean_(mean), sd_(sd) {}
  double Sf(double x) const override;
  absl::StatusOr<double> UpperQuantile(double tail) const override;

 private:
  double mean_;
  double sd_;
};

// Power of the most powerful level-kappa test that rejects for large values:
// the critical value is the (1 - kappa) quantile of the null law, the power is
// the alternative's survival function there.
// Never below kappa.
absl::StatusOr<double> SupremumPower(const StatisticLaw& null_law,
                                     const StatisticLaw& alt_law,
                                     double kappa);

// Randomized Neyman-Pearson power for a lattice statistic whose likelihood
// ratio grows with the index. `alt_at_infinity` is alternative-only mass that
// any test rejects for free. Masses may be sub-normalized.
double SupremumPowerDiscrete(std::span<const double> null_mass,
                             std::span<const double> alt_mass,
                             double alt_at_infinity, double kappa);

// Convex symmetric curve C(T, T^{-1}) on the common grid of both inputs.
absl::StatusOr<GridCurve> Symmetrize(const GridCurve& add_curve,
                                     const GridCurve& remove_curve);

// Exact single-step trade-off curve of a privacy loss model, by thresholding
// the output y (equivalent to thresholding the monotone log-ratio, including
// randomization on flat stretches).
TradeoffCurve ExactTradeoff(const PrivacyLossModel& model);

// Exact single-step bound for spec.steps == 1.
absl::StatusOr<ReRoBound> ExactReRo(const MechanismSpec& spec, double kappa);

}  // namespace rero

#endif  // RERO_RERO_CORE_H_
