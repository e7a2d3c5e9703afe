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


#ifndef RERO_CLI_SWEEP_H_
#define RERO_CLI_SWEEP_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rero/cli/config.h"
#include "rero/cli/engines.h"

namespace rero::cli {

struct SweepResult {
  // Series-major, then axis order, then engine order.
  std::vector<Record> records;
  // Noise scale used by each series.
  std::vector<double> noise_scales;
};

// Thread count from RERO_THREADS, else the hardware concurrency.
int DefaultThreadCount();

// Fails only on an invalid config or a failed calibration. Engine failures
// become flagged records.
absl::StatusOr<SweepResult> RunSweep(const SweepConfig& config,
                                     int threads = DefaultThreadCount());

// True when no record has status kOk.
bool AllFailed(const std::vector<Record>& records);

struct ValidationRow {
  Record record;
  Engine reference = Engine::kPld;
  double reference_lower = 0.0;
  double reference_upper = 0.0;
  // Distance from the record's gamma to the reference interval.
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Checks every Edgeworth, CLT and Monte Carlo record against the closed form
// where one exists, else against the PLD bracket of the same point. Monte
// Carlo is allowed three binomial standard errors.
std::vector<ValidationRow> Validate(const std::vector<Record>& records,
                                    double tolerance = 1e-3);

}  // namespace rero::cli

#endif  // RERO_CLI_SWEEP_H_
