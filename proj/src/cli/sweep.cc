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


#include "rero/cli/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "rero/dp_convert.h"

namespace rero::cli {
namespace {

struct Task {
  const PointEvaluator* evaluator;
  Engine engine;
  double kappa;
  uint64_t stream;
};

template <typename F>
void ParallelFor(std::size_t count, int threads, const F& body) {
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(count)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
}

bool SamePoint(const Record& a, const Record& b) {
  return a.family == b.family && a.sampling_rate == b.sampling_rate &&
         a.steps == b.steps && a.effect_size == b.effect_size &&
         a.kappa == b.kappa;
}

}  // namespace

int DefaultThreadCount() {
  if (const char* env = std::getenv("RERO_THREADS"); env != nullptr) {
    int value = 0;
    if (absl::SimpleAtoi(env, &value) && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

absl::StatusOr<SweepResult> RunSweep(const SweepConfig& config, int threads) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) return s;
  const std::vector<double> axis = AxisValues(config);
  SweepResult result;

  std::vector<MechanismSpec> base;
  for (double p : config.sampling_rates) {
    MechanismSpec spec{config.family, config.noise_scale, config.sensitivity,
                       p, config.steps};
    if (config.calibrate) {
      absl::StatusOr<double> sigma = CalibrateSigma(
          *config.calibrate, config.steps, p, config.sensitivity);
      if (!sigma.ok()) {
        return absl::Status(sigma.status().code(),
                            absl::StrCat("calibrating the p = ", p,
                                         " series: ", sigma.status().message()));
      }
      spec.noise_scale = *sigma;
    }
    result.noise_scales.push_back(spec.noise_scale);
    base.push_back(spec);
  }

  // One evaluator per distinct mechanism so kappa sweeps share PLD work.
  std::vector<std::unique_ptr<PointEvaluator>> evaluators;
  std::vector<Task> tasks;
  uint64_t stream = 0;
  for (const MechanismSpec& series : base) {
    const PointEvaluator* shared = nullptr;
    if (config.axis == SweepAxis::kKappa) {
      evaluators.push_back(
          std::make_unique<PointEvaluator>(series, config.engine_options));
      shared = evaluators.back().get();
    }
    for (double x : axis) {
      double kappa = config.kappa;
      const PointEvaluator* evaluator = shared;
      if (config.axis == SweepAxis::kKappa) {
        kappa = x;
      } else {
        MechanismSpec spec = series;
        if (config.axis == SweepAxis::kEffectSize) {
          spec.noise_scale = spec.sensitivity / x;
        } else {
          spec.sampling_rate = x;
        }
        evaluators.push_back(
            std::make_unique<PointEvaluator>(spec, config.engine_options));
        evaluator = evaluators.back().get();
      }
      for (Engine e : config.engines) {
        tasks.push_back({evaluator, e, kappa, stream});
      }
      ++stream;
    }
  }

  result.records.resize(tasks.size());
  ParallelFor(tasks.size(), threads, [&](std::size_t i) {
    const Task& t = tasks[i];
    result.records[i] = t.evaluator->Run(t.engine, t.kappa, t.stream);
  });
  if (config.axis == SweepAxis::kEffectSize) {
    // Keep the exact axis values.
    std::size_t i = 0;
    for (std::size_t s = 0; s < base.size(); ++s) {
      for (double x : axis) {
        for (std::size_t e = 0; e < config.engines.size(); ++e) {
          result.records[i++].effect_size = x;
        }
      }
    }
  }
  return result;
}

bool AllFailed(const std::vector<Record>& records) {
  return std::none_of(records.begin(), records.end(), [](const Record& r) {
    return r.status == RecordStatus::kOk;
  });
}

std::vector<ValidationRow> Validate(const std::vector<Record>& records,
                                    double tolerance) {
  std::vector<ValidationRow> rows;
  for (const Record& r : records) {
    if (r.engine == Engine::kClosedForm || r.engine == Engine::kPld ||
        r.status != RecordStatus::kOk) {
      continue;
    }
    const Record* reference = nullptr;
    for (Engine want : {Engine::kClosedForm, Engine::kPld}) {
      for (const Record& other : records) {
        if (other.engine == want && other.status == RecordStatus::kOk &&
            SamePoint(other, r)) {
          reference = &other;
          break;
        }
      }
      if (reference != nullptr) break;
    }
    if (reference == nullptr) continue;
    ValidationRow row;
    row.record = r;
    row.reference = reference->engine;
    row.reference_lower = reference->gamma_lower;
    row.reference_upper = reference->gamma_upper;
    if (r.gamma < row.reference_lower) {
      row.deviation = row.reference_lower - r.gamma;
    } else if (r.gamma > row.reference_upper) {
      row.deviation = r.gamma - row.reference_upper;
    }
    row.tolerance = tolerance;
    if (r.engine == Engine::kMonteCarlo) {
      // The stored interval is 95%, i.e. 1.96 standard errors each side.
      row.tolerance = 3.0 * 0.5 * (r.gamma_upper - r.gamma_lower) / 1.96;
    }
    row.pass = row.deviation <= row.tolerance;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rero::cli
