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


#ifndef RERO_CLI_CONFIG_H_
#define RERO_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "rero/types.h"

namespace rero::cli {

enum class SweepAxis { kEffectSize, kKappa, kSamplingRate };
enum class Spacing { kLinear, kLog };
enum class OutputFormat { kCsv, kJson };

absl::string_view AxisName(SweepAxis axis);

struct EngineOptions {
  int64_t mc_samples = 1'000'000;
  uint64_t seed = 0;
  double pld_grid_spacing = 1e-4;
  int edgeworth_order = 4;
};

// A parameter sweep. Each sampling rate is its own series; the swept axis
// overrides the matching fixed parameter.
struct SweepConfig {
  std::string name;
  Family family = Family::kGaussian;
  // sigma or b.
  double noise_scale = 1.0;
  double sensitivity = 1.0;
  std::vector<double> sampling_rates = {1.0};
  int64_t steps = 1;
  double kappa = 0.05;

  SweepAxis axis = SweepAxis::kEffectSize;
  double from = 0.1;
  double to = 1.0;
  int points = 10;
  Spacing spacing = Spacing::kLinear;

  std::vector<Engine> engines = {Engine::kClosedForm};
  EngineOptions engine_options;
  // When set, the noise scale of every series is calibrated to this target.
  std::optional<EpsDelta> calibrate;

  OutputFormat format = OutputFormat::kCsv;
  // Relative paths resolve against RERO_OUTPUT_DIR. Empty: standard output.
  std::string output;
};

absl::Status ValidateConfig(const SweepConfig& config);

// Points along the swept axis, in output order.
std::vector<double> AxisValues(const SweepConfig& config);

// Line-oriented "key = value" text; '#' starts a comment. Errors carry
// "<origin>:<line>:" prefixes.
absl::StatusOr<SweepConfig> ParseConfig(absl::string_view text,
                                        absl::string_view origin = "<text>");

// A path to a config file, or the name of a file in the scenario directory
// (without the .conf suffix).
absl::StatusOr<SweepConfig> LoadScenario(absl::string_view name_or_path);

std::string ScenarioDirectory();
std::vector<std::string> ScenarioNames();

// Canonical text form. Parsing it gives back an equal config.
std::string Serialize(const SweepConfig& config);

}  // namespace rero::cli

#endif  // RERO_CLI_CONFIG_H_
