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

#include "rero/edgeworth.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"
#include "rero/closed_form.h"
#include "rero/mechanisms.h"
#include "rero/normal.h"

namespace rero {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTableLo = -40.0;
constexpr double kTableHi = 40.0;
constexpr int kTableCells = 16000;
constexpr int kMinStepsForSeries = 20;

double TableZ(int i) {
  return kTableLo + (kTableHi - kTableLo) * i / kTableCells;
}

// phi(z)-weighted correction: F(z) = Phi(z) - phi(z) * Correction(z).
double Correction(const EdgeworthExpansion& e, double z) {
  if (e.order <= 0) return 0.0;
  std::array<double, 12> he{};
  he[0] = 1.0;
  he[1] = z;
  for (int n = 1; n < 11; ++n) he[n + 1] = z * he[n] - n * he[n - 1];
  const double l3 = e.lambda[0], l4 = e.lambda[1], l5 = e.lambda[2],
               l6 = e.lambda[3];
  double c = l3 / 6.0 * he[2];
  if (e.order >= 2) c += l4 / 24.0 * he[3] + l3 * l3 / 72.0 * he[5];
  if (e.order >= 3) {
    c += l5 / 120.0 * he[4] + l3 * l4 / 144.0 * he[6] +
         l3 * l3 * l3 / 1296.0 * he[8];
  }
  if (e.order >= 4) {
    c += l6 / 720.0 * he[5] + (l4 * l4 / 1152.0 + l3 * l5 / 720.0) * he[7] +
         l3 * l3 * l4 / 1728.0 * he[9] +
         l3 * l3 * l3 * l3 / 31104.0 * he[11];
  }
  return c;
}

// Running extremum of a tabulated series: the monotone version used for
// inversion.
struct MonotoneTable {
  std::vector<double> raw;
  std::vector<double> fixed;
};

MonotoneTable Tabulate(const std::function<double(double)>& f,
                       bool decreasing) {
  MonotoneTable t;
  t.raw.resize(kTableCells + 1);
  t.fixed.resize(kTableCells + 1);
  for (int i = 0; i <= kTableCells; ++i) {
    t.raw[i] = f(TableZ(i));
    if (i == 0) {
      t.fixed[i] = t.raw[i];
    } else {
      t.fixed[i] = decreasing ? std::min(t.fixed[i - 1], t.raw[i])
                              : std::max(t.fixed[i - 1], t.raw[i]);
    }
  }
  return t;
}

double RepairedWidth(const MonotoneTable& t) {
  int cells = 0;
  for (std::size_t i = 0; i < t.raw.size(); ++i) {
    if (t.raw[i] != t.fixed[i]) ++cells;
  }
  return cells * (kTableHi - kTableLo) / kTableCells;
}

// z with f(z) = target, f the raw series, using the table to bracket.
absl::StatusOr<QuantileResult> Invert(const std::function<double(double)>& f,
                                      const MonotoneTable& t, bool decreasing,
                                      double target) {
  auto beyond = [&](double v) {
    return decreasing ? v <= target : v >= target;
  };
  const auto it = std::partition_point(
      t.fixed.begin(), t.fixed.end(), [&](double v) { return !beyond(v); });
  QuantileResult out;
  if (it == t.fixed.begin()) {
    out.z = kTableLo;
    return out;
  }
  if (it == t.fixed.end()) {
    out.z = kInf;
    return out;
  }
  const int i = static_cast<int>(it - t.fixed.begin());
  double lo = TableZ(i - 1), hi = TableZ(i);
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo));
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (beyond(f(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.z = hi;
  if (t.raw[i - 1] != t.fixed[i - 1]) {
    out.repaired = true;
    int a = i - 1;
    while (a > 0 && t.raw[a - 1] != t.fixed[a - 1]) --a;
    out.repair_width = (i - a) * (kTableHi - kTableLo) / kTableCells;
  }
  return out;
}

absl::Status CheckLevel(double q, const char* name) {
  if (!(q > 0.0 && q < 1.0)) {
    return absl::OutOfRangeError(
        absl::StrFormat("%s must lie in (0, 1), got %g", name, q));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<EdgeworthExpansion> MakeExpansion(
    const std::array<double, 6>& per_step, int64_t steps, int order) {
  if (steps < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("steps must be positive, got %d", steps));
  }
  if (order < 0 || order > 4) {
    return absl::InvalidArgumentError(
        absl::StrFormat("order must lie in [0, 4], got %d", order));
  }
  if (!(per_step[1] > 0.0)) {
    return absl::InvalidArgumentError(
        "degenerate privacy loss: variance is not positive");
  }
  EdgeworthExpansion e;
  const double n = static_cast<double>(steps);
  e.steps = steps;
  e.order = order;
  e.mean = n * per_step[0];
  const double var = n * per_step[1];
  e.sd = std::sqrt(var);
  for (int r = 3; r <= 6; ++r) {
    e.lambda[r - 3] = n * per_step[r - 1] / std::pow(var, 0.5 * r);
  }
  return e;
}

double EdgeworthCdf(const EdgeworthExpansion& expansion, double z) {
  if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
  return std::clamp(
      NormalCdf(z) - NormalPdf(z) * Correction(expansion, z), 0.0, 1.0);
}

double EdgeworthSf(const EdgeworthExpansion& expansion, double z) {
  if (std::isinf(z)) return z > 0 ? 0.0 : 1.0;
  return std::clamp(NormalSf(z) + NormalPdf(z) * Correction(expansion, z),
                    0.0, 1.0);
}

absl::StatusOr<QuantileResult> EdgeworthQuantile(
    const EdgeworthExpansion& expansion, double q) {
  if (absl::Status s = CheckLevel(q, "q"); !s.ok()) return s;
  if (q > 0.5) return EdgeworthUpperQuantile(expansion, 1.0 - q);
  auto f = [&](double z) { return EdgeworthCdf(expansion, z); };
  return Invert(f, Tabulate(f, false), false, q);
}

absl::StatusOr<QuantileResult> EdgeworthUpperQuantile(
    const EdgeworthExpansion& expansion, double tail) {
  if (absl::Status s = CheckLevel(tail, "tail"); !s.ok()) return s;
  auto f = [&](double z) { return EdgeworthSf(expansion, z); };
  return Invert(f, Tabulate(f, true), true, tail);
}

EdgeworthLaw::EdgeworthLaw(EdgeworthExpansion expansion)
    : expansion_(std::move(expansion)) {
  MonotoneTable t = Tabulate(
      [this](double z) { return EdgeworthSf(expansion_, z); }, true);
  repaired_width_ = RepairedWidth(t);
  grid_ = std::move(t.raw);
  repaired_ = std::move(t.fixed);
}

double EdgeworthLaw::Sf(double x) const {
  const double z = (x - expansion_.mean) / expansion_.sd;
  if (z <= kTableLo) return std::min(repaired_.front(), EdgeworthSf(expansion_, z));
  if (z >= kTableHi) return std::min(repaired_.back(), EdgeworthSf(expansion_, z));
  const int i = static_cast<int>(
      std::floor((z - kTableLo) / (kTableHi - kTableLo) * kTableCells));
  return std::min(repaired_[std::clamp(i, 0, kTableCells)],
                  EdgeworthSf(expansion_, z));
}

absl::StatusOr<double> EdgeworthLaw::UpperQuantile(double tail) const {
  if (absl::Status s = CheckLevel(tail, "tail"); !s.ok()) return s;
  MonotoneTable t{grid_, repaired_};
  absl::StatusOr<QuantileResult> r = Invert(
      [this](double z) { return EdgeworthSf(expansion_, z); }, t, true, tail);
  if (!r.ok()) return r.status();
  return expansion_.mean + expansion_.sd * r->z;
}

absl::StatusOr<EdgeworthPair> MakeEdgeworthPair(const MechanismSpec& spec,
                                                Adjacency adjacency,
                                                int order) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  absl::StatusOr<PrivacyLossModel> model =
      PrivacyLossModel::Create(spec, adjacency);
  if (!model.ok()) return model.status();
  absl::StatusOr<CumulantSet> cumulants = Cumulants(*model);
  if (!cumulants.ok()) return cumulants.status();
  absl::StatusOr<EdgeworthExpansion> h0 =
      MakeExpansion(cumulants->h0, spec.steps, order);
  if (!h0.ok()) return h0.status();
  absl::StatusOr<EdgeworthExpansion> h1 =
      MakeExpansion(cumulants->h1, spec.steps, order);
  if (!h1.ok()) return h1.status();
  return EdgeworthPair{EdgeworthLaw(*std::move(h0)),
                       EdgeworthLaw(*std::move(h1))};
}

absl::StatusOr<ReRoBound> GammaEdgeworth(const MechanismSpec& spec,
                                         double kappa, int order) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  if (HasClosedForm(spec)) {
    absl::StatusOr<ReRoBound> bound = ClosedFormReRo(spec, kappa);
    if (bound.ok()) bound->warnings.push_back("answered in closed form");
    return bound;
  }
  if (spec.EffectSize() == 0.0) return PointBound(kappa, kappa, Engine::kEdgeworth);
  absl::StatusOr<EdgeworthPair> pair =
      MakeEdgeworthPair(spec, Adjacency::kAddOne, order);
  if (!pair.ok()) return pair.status();
  absl::StatusOr<double> gamma =
      SupremumPower(pair->null_law, pair->alt_law, kappa);
  if (!gamma.ok()) return gamma.status();
  ReRoBound bound = PointBound(kappa, *gamma, Engine::kEdgeworth);
  if (spec.steps < kMinStepsForSeries) {
    bound.warnings.push_back(absl::StrFormat(
        "Edgeworth series with N = %d < %d steps is unreliable; prefer the "
        "PLD engine",
        spec.steps, kMinStepsForSeries));
  }
  if (pair->null_law.repaired_width() > 0.0 ||
      pair->alt_law.repaired_width() > 0.0) {
    bound.warnings.push_back("series made monotone before inversion");
  }
  return bound;
}

absl::StatusOr<GridCurve> EdgeworthTradeoff(const MechanismSpec& spec,
                                            Adjacency adjacency,
                                            const std::vector<double>& alphas,
                                            int order) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  std::vector<double> raw;
  raw.reserve(alphas.size());
  if (HasClosedForm(spec) || spec.EffectSize() == 0.0) {
    // Single-hypothesis closed forms are symmetric in the two directions.
    for (double a : alphas) {
      absl::StatusOr<ReRoBound> b = ClosedFormReRo(spec, std::clamp(a, 1e-300, 1.0));
      if (!b.ok()) return b.status();
      raw.push_back(a <= 0.0 ? 1.0 : 1.0 - b->gamma);
    }
  } else {
    absl::StatusOr<EdgeworthPair> pair =
        MakeEdgeworthPair(spec, adjacency, order);
    if (!pair.ok()) return pair.status();
    for (double a : alphas) {
      if (a <= 0.0) {
        raw.push_back(1.0);
        continue;
      }
      if (a >= 1.0) {
        raw.push_back(0.0);
        continue;
      }
      absl::StatusOr<double> t = pair->null_law.UpperQuantile(a);
      if (!t.ok()) return t.status();
      raw.push_back(1.0 - pair->alt_law.Sf(*t));
    }
  }
  return GridCurve(alphas, IsotonicClamp(raw).values);
}

absl::StatusOr<GaussianEffect> CltMuTilde(const MechanismSpec& spec) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  if (spec.family != Family::kGaussian) {
    return absl::InvalidArgumentError(
        "the CLT approximation is defined for the Gaussian family only");
  }
  const double mu = spec.EffectSize();
  return GaussianEffect{spec.sampling_rate *
                        std::sqrt(static_cast<double>(spec.steps) *
                                  std::expm1(mu * mu))};
}

absl::StatusOr<ReRoBound> GammaClt(const MechanismSpec& spec, double kappa) {
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  absl::StatusOr<GaussianEffect> mu = CltMuTilde(spec);
  if (!mu.ok()) return mu.status();
  absl::StatusOr<ReRoBound> bound = GaussianReRo(kappa, mu->mu);
  if (bound.ok()) bound->engine = Engine::kClt;
  return bound;
}

}  // namespace rero
