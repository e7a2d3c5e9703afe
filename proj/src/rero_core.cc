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

#include "rero/rero_core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "rero/normal.h"

namespace rero {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Cross(std::pair<double, double> o, std::pair<double, double> a,
             std::pair<double, double> b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

}  // namespace

GridCurve::GridCurve(std::vector<double> alphas, std::vector<double> betas)
    : alphas_(std::move(alphas)), betas_(std::move(betas)) {}

double GridCurve::operator()(double alpha) const {
  if (alpha <= alphas_.front()) return betas_.front();
  if (alpha >= alphas_.back()) return betas_.back();
  const auto it = std::upper_bound(alphas_.begin(), alphas_.end(), alpha);
  const std::size_t j = static_cast<std::size_t>(it - alphas_.begin());
  const double a0 = alphas_[j - 1], a1 = alphas_[j];
  const double t = (alpha - a0) / (a1 - a0);
  return betas_[j - 1] + t * (betas_[j] - betas_[j - 1]);
}

double GridCurve::Inverse(double beta) const {
  if (betas_.front() <= beta) return alphas_.front();
  // First node at or below beta; betas are non-increasing.
  const auto it = std::partition_point(betas_.begin(), betas_.end(),
                                       [beta](double b) { return b > beta; });
  if (it == betas_.end()) return alphas_.back();
  const std::size_t j = static_cast<std::size_t>(it - betas_.begin());
  const double b0 = betas_[j - 1], b1 = betas_[j];
  const double t = (b0 - beta) / (b0 - b1);
  return alphas_[j - 1] + t * (alphas_[j] - alphas_[j - 1]);
}

std::vector<double> DefaultAlphaGrid(std::size_t points) {
  points = std::max<std::size_t>(points, 9);
  const std::size_t interior = points - 2;
  const std::size_t tail = interior / 4;
  const std::size_t middle = interior - 2 * tail;
  constexpr double kTailStart = -12.0;  // log10 of the smallest node
  constexpr double kTailEnd = -2.0;
  std::vector<double> grid;
  grid.reserve(points);
  grid.push_back(0.0);
  for (std::size_t i = 0; i < tail; ++i) {
    const double e =
        kTailStart + (kTailEnd - kTailStart) * static_cast<double>(i) /
                         static_cast<double>(tail);
    grid.push_back(std::pow(10.0, e));
  }
  const double lo = std::pow(10.0, kTailEnd);
  for (std::size_t i = 0; i < middle; ++i) {
    grid.push_back(lo + (1.0 - 2.0 * lo) * static_cast<double>(i) /
                            static_cast<double>(middle - 1));
  }
  for (std::size_t i = tail; i-- > 0;) {
    const double e =
        kTailStart + (kTailEnd - kTailStart) * static_cast<double>(i) /
                         static_cast<double>(tail);
    grid.push_back(1.0 - std::pow(10.0, e));
  }
  grid.push_back(1.0);
  return grid;
}

GridCurve Tabulate(const TradeoffCurve& curve, std::span<const double> alphas) {
  std::vector<double> betas;
  betas.reserve(alphas.size());
  for (double a : alphas) betas.push_back(curve.beta(a));
  return GridCurve(std::vector<double>(alphas.begin(), alphas.end()),
                   std::move(betas));
}

TradeoffCurve CurveFromGrid(GridCurve grid, Adjacency direction, Engine engine,
                            bool symmetrized) {
  TradeoffCurve curve;
  curve.beta = [g = std::move(grid)](double a) { return g(a); };
  curve.direction = direction;
  curve.engine = engine;
  curve.symmetrized = symmetrized;
  return curve;
}

IsotonicResult IsotonicClamp(std::span<const double> raw) {
  IsotonicResult result;
  result.values.reserve(raw.size());
  double running = 1.0;
  for (double v : raw) {
    const double clamped = std::clamp(std::min(v, running), 0.0, 1.0);
    if (clamped != v) ++result.repaired;
    running = clamped;
    result.values.push_back(clamped);
  }
  return result;
}

TradeoffCurve EpsDeltaTradeoff(double eps, double delta) {
  TradeoffCurve curve;
  const double scale = std::exp(eps);
  curve.beta = [eps, delta, scale](double a) {
    return std::max({0.0, 1.0 - delta - scale * a,
                     std::exp(-eps) * (1.0 - delta - a)});
  };
  curve.direction = Adjacency::kAddOne;
  curve.engine = Engine::kClosedForm;
  curve.symmetrized = true;
  return curve;
}

absl::StatusOr<ReRoBound> GammaFromTradeoff(const TradeoffCurve& curve,
                                            double kappa) {
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  if (curve.direction == Adjacency::kRemoveOne && !curve.symmetrized) {
    return absl::FailedPreconditionError(
        "reconstruction bounds need the add-one curve; symmetrize a "
        "remove-one curve first");
  }
  ReRoBound bound =
      PointBound(kappa, std::clamp(1.0 - curve.beta(kappa), 0.0, 1.0),
                 curve.engine);
  bound.direction = curve.direction;
  if (curve.beta_lower && curve.beta_upper) {
    bound.gamma_lower = std::clamp(1.0 - curve.beta_upper(kappa), 0.0, 1.0);
    bound.gamma_upper = std::clamp(1.0 - curve.beta_lower(kappa), 0.0, 1.0);
    bound.error = bound.gamma_upper - bound.gamma_lower;
  }
  return bound;
}

absl::StatusOr<ReRoBound> GammaFromEpsDelta(double eps, double delta,
                                            double kappa) {
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  if (!(eps >= 0.0)) {
    return absl::OutOfRangeError(absl::StrCat("eps must be >= 0, got ", eps));
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("delta must lie in [0, 1), got ", delta));
  }
  return PointBound(kappa, std::min(std::exp(eps) * kappa + delta, 1.0),
                    Engine::kClosedForm);
}

double GaussianLaw::Sf(double x) const { return NormalSf((x - mean_) / sd_); }

absl::StatusOr<double> GaussianLaw::UpperQuantile(double tail) const {
  return mean_ + sd_ * NormalUpperQuantile(tail);
}

absl::StatusOr<double> SupremumPower(const StatisticLaw& null_law,
                                     const StatisticLaw& alt_law,
                                     double kappa) {
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  if (kappa == 1.0) return 1.0;
  absl::StatusOr<double> critical = null_law.UpperQuantile(kappa);
  if (!critical.ok()) return critical.status();
  if (std::isnan(*critical)) {
    return absl::InternalError("null quantile inversion failed");
  }
  // The randomized trivial test already achieves kappa.
  return std::clamp(alt_law.Sf(*critical), kappa, 1.0);
}

double SupremumPowerDiscrete(std::span<const double> null_mass,
                             std::span<const double> alt_mass,
                             double alt_at_infinity, double kappa) {
  double power = alt_at_infinity;
  double budget = kappa;
  for (std::size_t i = null_mass.size(); i-- > 0;) {
    const double cost = null_mass[i];
    if (cost <= budget) {
      power += alt_mass[i];
      budget -= cost;
    } else {
      power += alt_mass[i] * (budget / cost);
      break;
    }
  }
  return std::clamp(power, 0.0, 1.0);
}

absl::StatusOr<GridCurve> Symmetrize(const GridCurve& add_curve,
                                     const GridCurve& remove_curve) {
  if (add_curve.size() != remove_curve.size() || add_curve.size() < 2) {
    return absl::InvalidArgumentError("curves must share one alpha grid");
  }
  const auto alphas = add_curve.alphas();
  const auto other = remove_curve.alphas();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (std::fabs(alphas[i] - other[i]) > 1e-15) {
      return absl::InvalidArgumentError(
          absl::StrCat("alpha grids differ at node ", i));
    }
  }
  // Lower hull of both graphs and their reflections about beta = alpha.
  std::vector<std::pair<double, double>> points;
  points.reserve(4 * alphas.size() + 2);
  for (const GridCurve* c : {&add_curve, &remove_curve}) {
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double b = std::clamp(c->betas()[i], 0.0, 1.0);
      points.emplace_back(alphas[i], b);
      points.emplace_back(b, alphas[i]);
    }
  }
  points.emplace_back(0.0, 1.0);
  points.emplace_back(1.0, 0.0);
  std::sort(points.begin(), points.end());
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : points) {
    while (hull.size() >= 2 &&
           Cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  std::vector<double> hx, hy;
  for (const auto& [x, y] : hull) {
    if (!hx.empty() && x == hx.back()) continue;
    hx.push_back(x);
    hy.push_back(y);
  }
  GridCurve envelope(std::move(hx), std::move(hy));
  std::vector<double> betas;
  betas.reserve(alphas.size());
  for (double a : alphas) betas.push_back(envelope(a));
  return GridCurve(std::vector<double>(alphas.begin(), alphas.end()),
                   std::move(betas));
}

TradeoffCurve ExactTradeoff(const PrivacyLossModel& model) {
  TradeoffCurve curve;
  curve.beta = [null = model.null_dist(),
                alt = model.alternative_dist()](double a) {
    if (a <= 0.0) return 1.0;
    if (a >= 1.0) return 0.0;
    return std::clamp(alt.Cdf(null.UpperQuantile(a)), 0.0, 1.0);
  };
  curve.direction = model.adjacency();
  curve.engine = Engine::kExact;
  return curve;
}

absl::StatusOr<ReRoBound> ExactReRo(const MechanismSpec& spec, double kappa) {
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  if (spec.steps != 1) {
    return absl::InvalidArgumentError(
        "the exact engine handles single-step mechanisms only");
  }
  absl::StatusOr<PrivacyLossModel> model =
      PrivacyLossModel::Create(spec, Adjacency::kAddOne);
  if (!model.ok()) return model.status();
  double gamma = 1.0;
  if (kappa < 1.0) {
    const double t = model->null_dist().UpperQuantile(kappa);
    gamma = model->alternative_dist().Sf(t);
  }
  return PointBound(kappa, std::clamp(gamma, kappa, 1.0), Engine::kExact);
}

}  // namespace rero
