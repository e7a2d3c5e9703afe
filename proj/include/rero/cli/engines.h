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


#ifndef RERO_CLI_ENGINES_H_
#define RERO_CLI_ENGINES_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rero/cli/config.h"
#include "rero/pld.h"
#include "rero/types.h"

namespace rero::cli {

enum class RecordStatus { kOk, kInfeasible, kError };

absl::string_view StatusName(RecordStatus status);

// One engine's answer at one point.
struct Record {
  Engine engine = Engine::kClosedForm;
  Family family = Family::kGaussian;
  double sampling_rate = 1.0;
  int64_t steps = 1;
  double effect_size = 0.0;
  double noise_scale = 1.0;
  double kappa = 0.0;
  // NaN unless status is kOk.
  double gamma = 0.0;
  double gamma_lower = 0.0;
  double gamma_upper = 0.0;
  Adjacency direction = Adjacency::kAddOne;
  double wall_time_ms = 0.0;
  // Rough peak working-set estimate.
  std::size_t memory_bytes = 0;
  RecordStatus status = RecordStatus::kOk;
  // Error text or joined warnings.
  std::string message;
};

// Evaluates engines for one mechanism. PLD pairs are built once and shared
// across kappa values. Thread-safe.
class PointEvaluator {
 public:
  PointEvaluator(MechanismSpec spec, EngineOptions options);

  const MechanismSpec& spec() const { return spec_; }

  // `stream` separates Monte Carlo randomness between points.
  Record Run(Engine engine, double kappa, uint64_t stream) const;

 private:
  absl::StatusOr<ReRoBound> Evaluate(Engine engine, double kappa,
                                     uint64_t stream,
                                     std::size_t& memory) const;

  MechanismSpec spec_;
  EngineOptions options_;
  mutable std::mutex pld_mutex_;
  mutable std::shared_ptr<const absl::StatusOr<PldPair>> pld_;
};

// One record per engine, in the given order. Engine failures are recorded,
// not propagated.
std::vector<Record> RunPoint(const MechanismSpec& spec, double kappa,
                             std::span<const Engine> engines,
                             const EngineOptions& options, uint64_t stream = 0);

}  // namespace rero::cli

#endif  // RERO_CLI_ENGINES_H_
