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

#include "rero/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "boost/math/tools/roots.hpp"
#include "rero/normal.h"

namespace rero {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double UnitCdf(Family family, double z) {
  if (family == Family::kGaussian) return NormalCdf(z);
  return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}

double UnitSf(Family family, double z) { return UnitCdf(family, -z); }

double UnitPdf(Family family, double z) {
  if (family == Family::kGaussian) return NormalPdf(z);
  return 0.5 * std::exp(-std::fabs(z));
}

double UnitIntervalMass(Family family, double a, double b) {
  if (!(b > a)) return 0.0;
  if (family == Family::kGaussian) return NormalIntervalMass(a, b);
  if (a >= 0.0) return 0.5 * (std::exp(-a) - std::exp(-b));
  if (b <= 0.0) return 0.5 * (std::exp(b) - std::exp(a));
  return 1.0 - 0.5 * std::exp(a) - 0.5 * std::exp(-b);
}

double UnitUpperQuantile(Family family, double q) {
  if (family == Family::kGaussian) return NormalUpperQuantile(q);
  if (q <= 0.0) return kInf;
  if (q >= 1.0) return -kInf;
  return q < 0.5 ? -std::log(2.0 * q) : std::log(2.0 * (1.0 - q));
}

// log(1 - p + p e^g), the log-ratio after mixing with the null component.
double LogMix(double rate, double g) {
  if (rate >= 1.0) return g;
  if (g > 0.0) return g + std::log(rate + (1.0 - rate) * std::exp(-g));
  return std::log1p(rate * std::expm1(g));
}

// Inverse of LogMix for l > log(1 - p).
double InverseLogMix(double rate, double l) {
  if (rate >= 1.0) return l;
  if (l > 1.0) {
    return l + std::log1p(-(1.0 - rate) * std::exp(-l)) - std::log(rate);
  }
  return std::log(std::expm1(l) + rate) - std::log(rate);
}

}  // namespace

Rng MakeStream(uint64_t seed, uint64_t stream) {
  return Rng(SplitMix64(seed ^ SplitMix64(stream + 0x632be59bd9b4e019ULL)));
}

double NoiseMixture::Cdf(double y) const {
  double total = 0.0;
  for (const auto& c : components) {
    total += c.weight * UnitCdf(family, (y - c.location) / scale);
  }
  return total;
}

double NoiseMixture::Sf(double y) const {
  double total = 0.0;
  for (const auto& c : components) {
    total += c.weight * UnitSf(family, (y - c.location) / scale);
  }
  return total;
}

double NoiseMixture::Pdf(double y) const {
  double total = 0.0;
  for (const auto& c : components) {
    total += c.weight * UnitPdf(family, (y - c.location) / scale);
  }
  return total / scale;
}

double NoiseMixture::IntervalMass(double a, double b) const {
  double total = 0.0;
  for (const auto& c : components) {
    total += c.weight * UnitIntervalMass(family, (a - c.location) / scale,
                                         (b - c.location) / scale);
  }
  return total;
}

double NoiseMixture::UpperQuantile(double q) const {
  if (q <= 0.0) return kInf;
  if (q >= 1.0) return -kInf;
  if (components.size() == 1) {
    return components[0].location +
           scale * UnitUpperQuantile(family, q);
  }
  // The mixture quantile lies between the component quantiles.
  double lo = kInf, hi = -kInf;
  for (const auto& c : components) {
    const double x = c.location + scale * UnitUpperQuantile(family, q);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi - lo <= 0.0) return lo;
  auto f = [&](double y) { return Sf(y) - q; };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi), tol,
                                                  iters);
  return 0.5 * (a + b);
}

double NoiseMixture::Sample(Rng& rng) const {
  double location = components[0].location;
  if (components.size() > 1) {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0.0;
    for (const auto& c : components) {
      acc += c.weight;
      location = c.location;
      if (u < acc) break;
    }
  }
  if (family == Family::kGaussian) {
    return location + scale * std::normal_distribution<double>(0.0, 1.0)(rng);
  }
  const double u = std::uniform_real_distribution<double>(-0.5, 0.5)(rng);
  const double z = u < 0.0 ? std::log1p(2.0 * u) : -std::log1p(-2.0 * u);
  return location + scale * z;
}

absl::StatusOr<DominatingPair> MakeDominatingPair(const MechanismSpec& spec,
                                                  Adjacency adjacency) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  const double p = spec.sampling_rate;
  const double shift = spec.sensitivity;
  DominatingPair pair;
  pair.null_dist.family = pair.alternative_dist.family = spec.family;
  pair.null_dist.scale = pair.alternative_dist.scale = spec.noise_scale;
  auto add = [](NoiseMixture& m, double w, double loc) {
    if (w > 0.0) m.components.push_back({w, loc});
  };
  if (adjacency == Adjacency::kAddOne) {
    add(pair.null_dist, 1.0, 0.0);
    add(pair.alternative_dist, 1.0 - p, 0.0);
    add(pair.alternative_dist, p, shift);
  } else {
    add(pair.null_dist, 1.0 - p, shift);
    add(pair.null_dist, p, 0.0);
    add(pair.alternative_dist, 1.0, shift);
  }
  return pair;
}

absl::StatusOr<PrivacyLossModel> PrivacyLossModel::Create(
    const MechanismSpec& spec, Adjacency adjacency) {
  MechanismSpec unit = spec;
  unit.noise_scale = 1.0;
  unit.sensitivity = spec.EffectSize();
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  absl::StatusOr<DominatingPair> pair = MakeDominatingPair(unit, adjacency);
  if (!pair.ok()) return pair.status();
  return PrivacyLossModel(spec.family, adjacency, unit.sensitivity,
                          spec.sampling_rate, std::move(pair->null_dist),
                          std::move(pair->alternative_dist));
}

PrivacyLossModel::PrivacyLossModel(Family family, Adjacency adjacency,
                                   double effect, double rate,
                                   NoiseMixture null_dist, NoiseMixture alt)
    : family_(family),
      adjacency_(adjacency),
      effect_(effect),
      rate_(rate),
      null_(std::move(null_dist)),
      alt_(std::move(alt)) {}

double PrivacyLossModel::BaseLogRatio(double y) const {
  const double m = effect_;
  if (family_ == Family::kGaussian) return m * y - 0.5 * m * m;
  return std::fabs(y) - std::fabs(y - m);
}

double PrivacyLossModel::BaseThreshold(double g) const {
  const double m = effect_;
  if (m <= 0.0) return g >= 0.0 ? kInf : -kInf;
  if (family_ == Family::kGaussian) return (g + 0.5 * m * m) / m;
  if (g < -m) return -kInf;
  if (g >= m) return kInf;
  return 0.5 * (g + m);
}

double PrivacyLossModel::LogRatio(double y) const {
  const double g = BaseLogRatio(y);
  if (adjacency_ == Adjacency::kAddOne) return LogMix(rate_, g);
  return -LogMix(rate_, -g);
}

double PrivacyLossModel::ThresholdFor(double l) const {
  const double floor_ratio = std::log1p(-std::min(rate_, 1.0));
  if (adjacency_ == Adjacency::kAddOne) {
    if (rate_ < 1.0 && l <= floor_ratio) return -kInf;
    return BaseThreshold(InverseLogMix(rate_, l));
  }
  if (rate_ < 1.0 && -l <= floor_ratio) return kInf;
  return BaseThreshold(-InverseLogMix(rate_, -l));
}

double PrivacyLossModel::LogRatioMin() const {
  double g = -kInf;
  if (effect_ <= 0.0) g = 0.0;
  else if (family_ == Family::kLaplace) g = -effect_;
  return adjacency_ == Adjacency::kAddOne ? LogMix(rate_, g)
                                          : -LogMix(rate_, -g);
}

double PrivacyLossModel::LogRatioMax() const {
  double g = kInf;
  if (effect_ <= 0.0) g = 0.0;
  else if (family_ == Family::kLaplace) g = effect_;
  return adjacency_ == Adjacency::kAddOne ? LogMix(rate_, g)
                                          : -LogMix(rate_, -g);
}

std::vector<double> PrivacyLossModel::Kinks() const {
  if (family_ == Family::kLaplace) return {0.0, effect_};
  return {};
}

}  // namespace rero
