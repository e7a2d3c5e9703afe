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

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "absl/strings/str_format.h"
#include "boost/math/quadrature/gauss_kronrod.hpp"

namespace rero {
namespace {

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr int kMaxDepth = 30;
constexpr double kRoundoff = 1e-12;
constexpr double kPieceTolerance = 1e-16;

// Bisection on the Kronrod error estimate against an absolute budget.
template <typename F>
double Adaptive(const F& f, double a, double b, double tol, int depth,
                double& error, double& norm) {
  double err = 0.0;
  double l1 = 0.0;
  const double value = Quadrature::integrate(f, a, b, 0, 0.0, &err, &l1);
  if (err <= tol || err <= kRoundoff * l1 || depth == 0 ||
      !std::isfinite(err)) {
    error += err;
    norm += l1;
    return value;
  }
  const double mid = 0.5 * (a + b);
  return Adaptive(f, a, mid, 0.5 * tol, depth - 1, error, norm) +
         Adaptive(f, mid, b, 0.5 * tol, depth - 1, error, norm);
}

// Integration pieces for a law: windows around each component where the
// density is not negligible against any polynomial in T, split at kinks.
std::vector<std::pair<double, double>> Pieces(const PrivacyLossModel& model,
                                              const NoiseMixture& law) {
  const double pad = model.family() == Family::kGaussian ? 40.0 : 80.0;
  std::vector<std::pair<double, double>> windows;
  for (const auto& c : law.components) {
    windows.emplace_back(c.location - pad, c.location + pad);
  }
  std::sort(windows.begin(), windows.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& w : windows) {
    if (!merged.empty() && w.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, w.second);
    } else {
      merged.push_back(w);
    }
  }
  std::vector<double> cuts = model.Kinks();
  cuts.push_back(0.0);
  cuts.push_back(model.effect_size());
  for (const auto& c : law.components) cuts.push_back(c.location);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> pieces;
  for (const auto& [lo, hi] : merged) {
    double left = lo;
    for (double c : cuts) {
      if (c > left && c < hi) {
        pieces.emplace_back(left, c);
        left = c;
      }
    }
    pieces.emplace_back(left, hi);
  }
  return pieces;
}

class Integrator {
 public:
  Integrator(const PrivacyLossModel& model, const NoiseMixture& law)
      : model_(model), law_(law), pieces_(Pieces(model, law)) {}

  template <typename F>
  double Integrate(F&& g) {
    double total = 0.0, err = 0.0, norm = 0.0;
    for (const auto& [lo, hi] : pieces_) {
      total += Adaptive(
          [&](double y) {
            const double density = law_.Pdf(y);
            return density > 0.0 ? g(model_.LogRatio(y), density) : 0.0;
          },
          lo, hi, kPieceTolerance, kMaxDepth, err, norm);
    }
    error_ = std::max(error_, err / std::max(1.0, norm));
    if (!std::isfinite(total)) error_ = total;
    return total;
  }

  double error() const { return error_; }

 private:
  const PrivacyLossModel& model_;
  const NoiseMixture& law_;
  std::vector<std::pair<double, double>> pieces_;
  double error_ = 0.0;
};

std::array<double, 6> LawCumulants(Integrator& integrator, int max_order) {
  const double mean =
      integrator.Integrate([](double t, double d) { return d * t; });
  std::array<double, 6> central{};
  for (int k = 2; k <= max_order; ++k) {
    central[k - 1] = integrator.Integrate(
        [mean, k](double t, double d) { return d * std::pow(t - mean, k); });
  }
  std::array<double, 6> out = CumulantsFromCentralMoments(mean, central);
  for (int k = max_order; k < 6; ++k) out[k] = 0.0;
  return out;
}

}  // namespace

std::array<double, 6> CumulantsFromCentralMoments(
    double mean, const std::array<double, 6>& central) {
  const double m2 = central[1], m3 = central[2], m4 = central[3],
               m5 = central[4], m6 = central[5];
  return {mean,
          m2,
          m3,
          m4 - 3.0 * m2 * m2,
          m5 - 10.0 * m3 * m2,
          m6 - 15.0 * m4 * m2 - 10.0 * m3 * m3 + 30.0 * m2 * m2 * m2};
}

absl::StatusOr<CumulantSet> Cumulants(const PrivacyLossModel& model,
                                      int max_order, double abs_tolerance) {
  if (max_order < 1 || max_order > 6) {
    return absl::InvalidArgumentError(
        absl::StrFormat("max_order must lie in [1, 6], got %d", max_order));
  }
  CumulantSet set;
  set.max_order = max_order;
  Integrator null_side(model, model.null_dist());
  Integrator alt_side(model, model.alternative_dist());
  set.h0 = LawCumulants(null_side, max_order);
  set.h1 = LawCumulants(alt_side, max_order);
  // E_0[e^T] is the H1 mass.
  set.h0_exp_moment =
      alt_side.Integrate([](double, double d) { return d; });
  set.error = std::max(null_side.error(), alt_side.error());
  if (!(set.error <= abs_tolerance)) {
    return absl::InternalError(absl::StrFormat(
        "cumulant quadrature reached only %.3g (wanted %.3g)", set.error,
        abs_tolerance));
  }
  return set;
}

}  // namespace rero
