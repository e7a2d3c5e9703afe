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

#ifndef RERO_CUMULANTS_H_
#define RERO_CUMULANTS_H_

#include <array>

#include "absl/status/statusor.h"
#include "rero/mechanisms.h"

namespace rero {

// Cumulants of the privacy loss T = LogRatio(Y) for Y ~ nu (H0) and Y ~ mu
// (H1). Index 0 holds kappa_1.
struct CumulantSet {
  std::array<double, 6> h0{};
  std::array<double, 6> h1{};
  int max_order = 6;
  // E_{H0}[exp(T)]; equals one up to quadrature error.
  double h0_exp_moment = 1.0;
  // Largest quadrature error estimate, relative to max(1, integral of |f|).
  double error = 0.0;
};

// First moment and central moments 2..6 -> cumulants 1..6.
std::array<double, 6> CumulantsFromCentralMoments(
    double mean, const std::array<double, 6>& central);

// Adaptive Gauss-Kronrod on the pieces between kinks of the densities.
absl::StatusOr<CumulantSet> Cumulants(const PrivacyLossModel& model,
                                      int max_order = 6,
                                      double abs_tolerance = 1e-10);

}  // namespace rero

#endif  // RERO_CUMULANTS_H_
