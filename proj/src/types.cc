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

#include "rero/types.h"

#include <cmath>
#include <string>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace rero {

absl::string_view FamilyName(Family family) {
  return family == Family::kLaplace ? "laplace" : "gaussian";
}

absl::string_view AdjacencyName(Adjacency adjacency) {
  return adjacency == Adjacency::kAddOne ? "add" : "remove";
}

absl::string_view EngineName(Engine engine) {
  switch (engine) {
    case Engine::kClosedForm:
      return "closed_form";
    case Engine::kExact:
      return "exact";
    case Engine::kEdgeworth:
      return "edgeworth";
    case Engine::kClt:
      return "clt";
    case Engine::kPld:
      return "pld";
    case Engine::kMonteCarlo:
      return "mc";
  }
  return "unknown";
}

absl::StatusOr<Family> ParseFamily(absl::string_view name) {
  const std::string lower = absl::AsciiStrToLower(name);
  if (lower == "laplace" || lower == "lm" || lower == "slm") {
    return Family::kLaplace;
  }
  if (lower == "gaussian" || lower == "gm" || lower == "sgm") {
    return Family::kGaussian;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown family '", name, "'"));
}

absl::StatusOr<Engine> ParseEngine(absl::string_view name) {
  const std::string lower = absl::AsciiStrToLower(name);
  for (Engine e : {Engine::kClosedForm, Engine::kExact, Engine::kEdgeworth,
                   Engine::kClt, Engine::kPld, Engine::kMonteCarlo}) {
    if (lower == EngineName(e)) return e;
  }
  if (lower == "closedform" || lower == "closed") return Engine::kClosedForm;
  if (lower == "montecarlo") return Engine::kMonteCarlo;
  return absl::InvalidArgumentError(absl::StrCat("unknown engine '", name, "'"));
}

absl::Status ValidateSpec(const MechanismSpec& spec) {
  if (!(spec.noise_scale > 0.0) || !std::isfinite(spec.noise_scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise scale must be positive, got ", spec.noise_scale));
  }
  if (!(spec.sensitivity >= 0.0) || !std::isfinite(spec.sensitivity)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensitivity must be non-negative, got ",
                     spec.sensitivity));
  }
  if (!(spec.sampling_rate > 0.0 && spec.sampling_rate <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sampling rate must lie in (0, 1], got ",
                     spec.sampling_rate));
  }
  if (spec.steps < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("number of steps must be at least 1, got ", spec.steps));
  }
  return absl::OkStatus();
}

MechanismSpec GaussianSpec(double sigma, double sensitivity,
                           double sampling_rate, int64_t steps) {
  return {Family::kGaussian, sigma, sensitivity, sampling_rate, steps};
}

MechanismSpec LaplaceSpec(double scale, double sensitivity,
                          double sampling_rate, int64_t steps) {
  return {Family::kLaplace, scale, sensitivity, sampling_rate, steps};
}

ReRoBound PointBound(double kappa, double gamma, Engine engine) {
  ReRoBound bound;
  bound.kappa = kappa;
  bound.gamma = gamma;
  bound.gamma_lower = gamma;
  bound.gamma_upper = gamma;
  bound.engine = engine;
  return bound;
}

absl::Status CheckProbability(double value, absl::string_view name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat(name, " must lie in [0, 1], got ", value));
  }
  return absl::OkStatus();
}

absl::Status CheckPrior(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("prior kappa must lie in (0, 1], got ", kappa));
  }
  return absl::OkStatus();
}

}  // namespace rero
