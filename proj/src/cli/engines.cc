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


#include "rero/cli/engines.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "rero/closed_form.h"
#include "rero/edgeworth.h"
#include "rero/mc.h"
#include "rero/rero_core.h"

namespace rero::cli {
namespace {

constexpr std::size_t kEdgeworthTableBytes = 4 * 16001 * sizeof(double);

uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

absl::string_view StatusName(RecordStatus status) {
  switch (status) {
    case RecordStatus::kOk:
      return "ok";
    case RecordStatus::kInfeasible:
      return "infeasible";
    case RecordStatus::kError:
      return "error";
  }
  return "unknown";
}

PointEvaluator::PointEvaluator(MechanismSpec spec, EngineOptions options)
    : spec_(spec), options_(options) {}

absl::StatusOr<ReRoBound> PointEvaluator::Evaluate(Engine engine, double kappa,
                                                   uint64_t stream,
                                                   std::size_t& memory) const {
  switch (engine) {
    case Engine::kClosedForm:
      return ClosedFormReRo(spec_, kappa);
    case Engine::kExact:
      return ExactReRo(spec_, kappa);
    case Engine::kEdgeworth:
      memory = kEdgeworthTableBytes;
      return GammaEdgeworth(spec_, kappa, options_.edgeworth_order);
    case Engine::kClt:
      return GammaClt(spec_, kappa);
    case Engine::kPld: {
      if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
      std::shared_ptr<const absl::StatusOr<PldPair>> pair;
      {
        std::lock_guard<std::mutex> lock(pld_mutex_);
        if (pld_ == nullptr) {
          PldOptions pld_options;
          pld_options.grid_spacing = options_.pld_grid_spacing;
          pld_ = std::make_shared<const absl::StatusOr<PldPair>>(
              ComposedPldPair(spec_, Adjacency::kAddOne, pld_options));
        }
        pair = pld_;
      }
      if (!pair->ok()) return pair->status();
      // Both laws, plus transform buffers during composition.
      memory = 3 * sizeof(double) *
               ((*pair)->pessimistic.masses.size() +
                (*pair)->optimistic.masses.size());
      return GammaPldBracket(**pair, kappa);
    }
    case Engine::kMonteCarlo: {
      McConfig config;
      config.samples = options_.mc_samples;
      config.seed = MixSeed(options_.seed, stream);
      memory = static_cast<std::size_t>(config.block_size) * 2 * sizeof(double);
      return McGamma(spec_, kappa, config);
    }
  }
  return absl::InvalidArgumentError("unknown engine");
}

Record PointEvaluator::Run(Engine engine, double kappa, uint64_t stream) const {
  Record record;
  record.engine = engine;
  record.family = spec_.family;
  record.sampling_rate = spec_.sampling_rate;
  record.steps = spec_.steps;
  record.effect_size = spec_.EffectSize();
  record.noise_scale = spec_.noise_scale;
  record.kappa = kappa;
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<ReRoBound> bound;
  if (engine == Engine::kMonteCarlo &&
      McInfeasible(kappa, options_.mc_samples)) {
    bound = absl::FailedPreconditionError(absl::StrCat(
        "kappa * S = ", kappa * options_.mc_samples, " < 1"));
  } else {
    bound = Evaluate(engine, kappa, stream, record.memory_bytes);
  }
  record.wall_time_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  if (bound.ok()) {
    record.gamma = bound->gamma;
    record.gamma_lower = bound->gamma_lower;
    record.gamma_upper = bound->gamma_upper;
    record.direction = bound->direction;
    record.message = absl::StrJoin(bound->warnings, "; ");
    return record;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  record.gamma = record.gamma_lower = record.gamma_upper = nan;
  record.status = engine == Engine::kMonteCarlo &&
                          absl::IsFailedPrecondition(bound.status())
                      ? RecordStatus::kInfeasible
                      : RecordStatus::kError;
  record.message = std::string(bound.status().message());
  return record;
}

std::vector<Record> RunPoint(const MechanismSpec& spec, double kappa,
                             std::span<const Engine> engines,
                             const EngineOptions& options, uint64_t stream) {
  PointEvaluator evaluator(spec, options);
  std::vector<Record> records;
  records.reserve(engines.size());
  for (Engine e : engines) records.push_back(evaluator.Run(e, kappa, stream));
  return records;
}

}  // namespace rero::cli
