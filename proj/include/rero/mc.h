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

#ifndef RERO_MC_H_
#define RERO_MC_H_

#include <cstddef>
#include <cstdint>

#include "absl/status/statusor.h"
#include "rero/types.h"

namespace rero {

enum class McThreshold {
  // Critical value from the H0 sample: the ceil(kappa S)-th largest.
  kEmpirical,
  // Critical value from the exact H0 law (Gaussian p = 1 only).
  kAnalytic,
};

struct McConfig {
  int64_t samples = 1'000'000;
  uint64_t seed = 0;
  int workers = 1;
  // Sum per-step losses on the fly; otherwise the samples x steps array is
  // materialized first, subject to `memory_cap_bytes`.
  bool streaming = true;
  std::size_t memory_cap_bytes = std::size_t{1} << 30;
  McThreshold threshold = McThreshold::kEmpirical;
  // Samples per random stream. Results do not depend on `workers`.
  int64_t block_size = 1 << 16;
};

// Empirical power of the level-kappa test on the composed privacy loss.
// gamma_lower / gamma_upper hold the 95% binomial interval. Fails with
// kFailedPrecondition when kappa * samples < 1: the sample cannot resolve
// the level.
absl::StatusOr<ReRoBound> McGamma(const MechanismSpec& spec, double kappa,
                                  const McConfig& config = {});

// True when kappa * samples < 1.
bool McInfeasible(double kappa, int64_t samples);

}  // namespace rero

#endif  // RERO_MC_H_
