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

#include "rero/dp_convert.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <utility>

#include "absl/strings/str_format.h"
#include "boost/math/quadrature/gauss_kronrod.hpp"
#include "rero/closed_form.h"
#include "rero/edgeworth.h"
#include "rero/mechanisms.h"
#include "rero/normal.h"

namespace rero {
namespace {

constexpr double kEpsCap = 1e4;
// exp(-kLossWindow) is below any delta of interest.
constexpr double kLossWindow = 60.0;

absl::Status RequireLaplace(const MechanismSpec& spec) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  if (spec.family != Family::kLaplace) {
    return absl::InvalidArgumentError("expected the Laplace family");
  }
  return absl::OkStatus();
}

// delta(eps) = E_1[(1 - e^{eps - T})_+] = int_eps^inf e^{eps - t} P_1(T > t) dt
// for the approximate H1 law of T.
double HockeyStick(const EdgeworthPair& pair, double eps) {
  const auto integrand = [&](double u) {
    return std::exp(-u) * pair.alt_law.Sf(eps + u);
  };
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          integrand, 0.0, kLossWindow, 12, 1e-10);
  return std::clamp(value, 0.0, 1.0);
}

// Exact single-step hockey stick: reject where the log-ratio exceeds eps.
double HockeyStick(const PrivacyLossModel& model, double eps) {
  const double t = model.ThresholdFor(eps);
  const double value = model.alternative_dist().Sf(t) -
                       std::exp(eps) * model.null_dist().Sf(t);
  return std::clamp(value, 0.0, 1.0);
}

// Smallest eps >= 0 with delta(eps) <= target for non-increasing delta.
template <typename F>
double SolveEps(const F& delta, double target) {
  if (delta(0.0) <= target) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (delta(hi) > target && hi < kEpsCap) {
    lo = hi;
    hi *= 2.0;
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, hi);
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (delta(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

DeltaBracket Point(double delta) { return {delta, delta, delta}; }

}  // namespace

absl::StatusOr<EpsDelta> EpsLaplace(const MechanismSpec& spec) {
  if (absl::Status s = RequireLaplace(spec); !s.ok()) return s;
  if (spec.IsSubsampled()) {
    return absl::InvalidArgumentError(
        "subsampled Laplace: use EpsSubsampledLaplace");
  }
  return EpsDelta{static_cast<double>(spec.steps) * spec.EffectSize(), 0.0};
}

absl::StatusOr<EpsDelta> EpsSubsampledLaplace(const MechanismSpec& spec) {
  if (absl::Status s = RequireLaplace(spec); !s.ok()) return s;
  const double eps = static_cast<double>(spec.steps) * spec.EffectSize();
  return EpsDelta{std::log1p(spec.sampling_rate * std::expm1(eps)), 0.0};
}

absl::StatusOr<double> DeltaOfEpsGauss(GaussianEffect mu, double eps) {
  if (!(mu.mu >= 0.0)) {
    return absl::OutOfRangeError(
        absl::StrFormat("mu must be non-negative, got %g", mu.mu));
  }
  if (!(eps >= 0.0)) {
    return absl::OutOfRangeError(
        absl::StrFormat("eps must be non-negative, got %g", eps));
  }
  if (mu.mu == 0.0 || std::isinf(eps)) return 0.0;
  const double a = -eps / mu.mu + 0.5 * mu.mu;
  const double b = -eps / mu.mu - 0.5 * mu.mu;
  const double delta = NormalCdf(a) - std::exp(eps + LogNormalCdf(b));
  return std::clamp(delta, 0.0, 1.0);
}

absl::StatusOr<double> EpsOfDeltaGauss(GaussianEffect mu, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::OutOfRangeError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  if (!(mu.mu >= 0.0)) {
    return absl::OutOfRangeError(
        absl::StrFormat("mu must be non-negative, got %g", mu.mu));
  }
  return SolveEps([mu](double e) { return *DeltaOfEpsGauss(mu, e); }, delta);
}

absl::StatusOr<PrivacyProfile> PrivacyProfile::Create(
    const MechanismSpec& spec, std::optional<Engine> engine,
    const PldOptions& pld_options) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  const bool gaussian_closed =
      spec.family == Family::kGaussian && !spec.IsSubsampled();
  Engine chosen = Engine::kEdgeworth;
  if (engine.has_value()) {
    chosen = *engine;
  } else if (gaussian_closed) {
    chosen = Engine::kClosedForm;
  } else if (spec.steps == 1) {
    chosen = Engine::kExact;
  }

  if (spec.EffectSize() == 0.0) {
    return PrivacyProfile(chosen, [](double) { return Point(0.0); });
  }
  switch (chosen) {
    case Engine::kClosedForm: {
      if (!gaussian_closed) {
        return absl::InvalidArgumentError(
            "closed-form profile needs the Gaussian family with p = 1");
      }
      const GaussianEffect mu =
          ComposeGaussian({spec.EffectSize()}, spec.steps);
      return PrivacyProfile(chosen, [mu](double eps) {
        return Point(*DeltaOfEpsGauss(mu, eps));
      });
    }
    case Engine::kClt: {
      absl::StatusOr<GaussianEffect> mu = CltMuTilde(spec);
      if (!mu.ok()) return mu.status();
      return PrivacyProfile(chosen, [mu = *mu](double eps) {
        return Point(*DeltaOfEpsGauss(mu, eps));
      });
    }
    case Engine::kExact: {
      if (spec.steps != 1) {
        return absl::InvalidArgumentError(
            "the exact profile handles single-step mechanisms only");
      }
      absl::StatusOr<PrivacyLossModel> add =
          PrivacyLossModel::Create(spec, Adjacency::kAddOne);
      if (!add.ok()) return add.status();
      absl::StatusOr<PrivacyLossModel> remove =
          PrivacyLossModel::Create(spec, Adjacency::kRemoveOne);
      if (!remove.ok()) return remove.status();
      return PrivacyProfile(
          chosen, [add = *std::move(add), remove = *std::move(remove)](
                      double eps) {
            return Point(
                std::max(HockeyStick(add, eps), HockeyStick(remove, eps)));
          });
    }
    case Engine::kEdgeworth: {
      absl::StatusOr<EdgeworthPair> add =
          MakeEdgeworthPair(spec, Adjacency::kAddOne);
      if (!add.ok()) return add.status();
      absl::StatusOr<EdgeworthPair> remove =
          MakeEdgeworthPair(spec, Adjacency::kRemoveOne);
      if (!remove.ok()) return remove.status();
      auto pairs = std::make_shared<std::array<EdgeworthPair, 2>>(
          std::array<EdgeworthPair, 2>{*std::move(add), *std::move(remove)});
      return PrivacyProfile(chosen, [pairs](double eps) {
        return Point(std::max(HockeyStick((*pairs)[0], eps),
                              HockeyStick((*pairs)[1], eps)));
      });
    }
    case Engine::kPld: {
      absl::StatusOr<PldPair> add =
          ComposedPldPair(spec, Adjacency::kAddOne, pld_options);
      if (!add.ok()) return add.status();
      absl::StatusOr<PldPair> remove =
          ComposedPldPair(spec, Adjacency::kRemoveOne, pld_options);
      if (!remove.ok()) return remove.status();
      auto pairs = std::make_shared<std::array<PldPair, 2>>(
          std::array<PldPair, 2>{*std::move(add), *std::move(remove)});
      return PrivacyProfile(chosen, [pairs](double eps) {
        const auto& [add, remove] = *pairs;
        DeltaBracket b;
        b.lower = std::max(HockeyStickFromPld(add.optimistic, eps),
                           HockeyStickFromPld(remove.optimistic, eps));
        b.upper = std::max(HockeyStickFromPld(add.pessimistic, eps),
                           HockeyStickFromPld(remove.pessimistic, eps));
        b.upper = std::max(b.upper, b.lower);
        b.delta = 0.5 * (b.lower + b.upper);
        return b;
      });
    }
    case Engine::kMonteCarlo:
      break;
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "engine %s cannot produce a privacy profile", EngineName(chosen)));
}

DeltaBracket PrivacyProfile::Delta(double eps) const { return delta_(eps); }

absl::StatusOr<EpsBracket> PrivacyProfile::Eps(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::OutOfRangeError(
        absl::StrFormat("delta must lie in (0, 1), got %g", delta));
  }
  EpsBracket out;
  out.eps = SolveEps([this](double e) { return delta_(e).delta; }, delta);
  if (engine_ == Engine::kPld) {
    out.lower = SolveEps([this](double e) { return delta_(e).lower; }, delta);
    out.upper = SolveEps([this](double e) { return delta_(e).upper; }, delta);
  } else {
    out.lower = out.upper = out.eps;
  }
  return out;
}

absl::StatusOr<EpsBracket> EpsDeltaSgm(const MechanismSpec& spec,
                                       double delta,
                                       std::optional<Engine> engine) {
  absl::StatusOr<PrivacyProfile> profile = PrivacyProfile::Create(spec, engine);
  if (!profile.ok()) return profile.status();
  return profile->Eps(delta);
}

absl::StatusOr<double> CalibrateSigma(EpsDelta target, int64_t steps,
                                      double sampling_rate,
                                      double sensitivity,
                                      std::optional<Engine> engine) {
  if (!(target.eps > 0.0) || !(target.delta > 0.0 && target.delta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "target needs eps > 0 and delta in (0, 1), got (%g, %g)", target.eps,
        target.delta));
  }
  if (!(sensitivity > 0.0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  auto excess = [&](double log_sigma) -> absl::StatusOr<double> {
    const MechanismSpec spec = GaussianSpec(std::exp(log_sigma), sensitivity,
                                            sampling_rate, steps);
    absl::StatusOr<EpsBracket> eps = EpsDeltaSgm(spec, target.delta, engine);
    if (!eps.ok()) return eps.status();
    return eps->eps - target.eps;
  };
  // eps falls as sigma grows.
  double lo = std::log(1e-3), hi = std::log(1e3);
  absl::StatusOr<double> f_lo = excess(lo);
  // Very small sigma can leave an approximate engine undefined.
  while (!f_lo.ok() && lo + std::log(10.0) < hi) {
    lo += std::log(10.0);
    f_lo = excess(lo);
  }
  if (!f_lo.ok()) return f_lo.status();
  while (*f_lo < 0.0 && lo > std::log(1e-12)) {
    hi = lo;
    lo -= std::log(10.0);
    f_lo = excess(lo);
    if (!f_lo.ok()) return f_lo.status();
  }
  absl::StatusOr<double> f_hi = excess(hi);
  if (!f_hi.ok()) return f_hi.status();
  while (*f_hi > 0.0 && hi < std::log(1e12)) {
    lo = hi;
    hi += std::log(10.0);
    f_hi = excess(hi);
    if (!f_hi.ok()) return f_hi.status();
  }
  if (*f_lo < 0.0 || *f_hi > 0.0) {
    return absl::OutOfRangeError(absl::StrFormat(
        "no sigma in [1e-12, 1e12] reaches (%g, %g)-DP", target.eps,
        target.delta));
  }
  double best = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    best = 0.5 * (lo + hi);
    absl::StatusOr<double> f = excess(best);
    if (!f.ok()) return f.status();
    if (std::fabs(*f) <= 1e-8 || hi - lo < 1e-14) break;
    if (*f > 0.0) {
      lo = best;
    } else {
      hi = best;
    }
  }
  return std::exp(best);
}

}  // namespace rero
