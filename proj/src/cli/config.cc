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


#include "rero/cli/config.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

#ifndef RERO_SCENARIO_DIR
#define RERO_SCENARIO_DIR "scenarios"
#endif

namespace rero::cli {
namespace {

std::string FormatDouble(double x) { return absl::StrFormat("%.17g", x); }

absl::StatusOr<double> ParseDouble(absl::string_view text) {
  double value = 0.0;
  if (!absl::SimpleAtod(text, &value) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected a finite number, got '", text, "'"));
  }
  return value;
}

absl::StatusOr<int64_t> ParseInt(absl::string_view text) {
  int64_t value = 0;
  if (!absl::SimpleAtoi(text, &value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected an integer, got '", text, "'"));
  }
  return value;
}

std::vector<std::string> SplitList(absl::string_view text) {
  std::vector<std::string> items;
  for (absl::string_view item :
       absl::StrSplit(text, absl::ByAnyChar(", "), absl::SkipWhitespace())) {
    items.emplace_back(item);
  }
  return items;
}

absl::StatusOr<SweepAxis> ParseAxis(absl::string_view text) {
  const std::string lower = absl::AsciiStrToLower(text);
  for (SweepAxis a :
       {SweepAxis::kEffectSize, SweepAxis::kKappa, SweepAxis::kSamplingRate}) {
    if (lower == AxisName(a)) return a;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown axis '", text, "' (effect_size, kappa or sampling_rate)"));
}

using Setter = absl::Status (*)(SweepConfig&, absl::string_view);

#define RERO_NUMBER_FIELD(field)                                    \
  [](SweepConfig& c, absl::string_view v) -> absl::Status {         \
    absl::StatusOr<double> x = ParseDouble(v);                      \
    if (!x.ok()) return x.status();                                 \
    c.field = *x;                                                   \
    return absl::OkStatus();                                        \
  }

#define RERO_INT_FIELD(field)                                       \
  [](SweepConfig& c, absl::string_view v) -> absl::Status {         \
    absl::StatusOr<int64_t> x = ParseInt(v);                        \
    if (!x.ok()) return x.status();                                 \
    c.field = static_cast<decltype(c.field)>(*x);                   \
    return absl::OkStatus();                                        \
  }

const std::map<std::string, Setter>& Setters() {
  static const auto* setters = new std::map<std::string, Setter>{
      {"name",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         c.name = std::string(v);
         return absl::OkStatus();
       }},
      {"family",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         absl::StatusOr<Family> f = ParseFamily(v);
         if (!f.ok()) return f.status();
         c.family = *f;
         return absl::OkStatus();
       }},
      {"noise_scale", RERO_NUMBER_FIELD(noise_scale)},
      {"sensitivity", RERO_NUMBER_FIELD(sensitivity)},
      {"sampling_rate",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         c.sampling_rates.clear();
         for (const std::string& item : SplitList(v)) {
           absl::StatusOr<double> x = ParseDouble(item);
           if (!x.ok()) return x.status();
           c.sampling_rates.push_back(*x);
         }
         return absl::OkStatus();
       }},
      {"steps", RERO_INT_FIELD(steps)},
      {"kappa", RERO_NUMBER_FIELD(kappa)},
      {"axis",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         absl::StatusOr<SweepAxis> a = ParseAxis(v);
         if (!a.ok()) return a.status();
         c.axis = *a;
         return absl::OkStatus();
       }},
      {"from", RERO_NUMBER_FIELD(from)},
      {"to", RERO_NUMBER_FIELD(to)},
      {"points", RERO_INT_FIELD(points)},
      {"spacing",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         if (v == "linear") {
           c.spacing = Spacing::kLinear;
         } else if (v == "log") {
           c.spacing = Spacing::kLog;
         } else {
           return absl::InvalidArgumentError(
               absl::StrCat("spacing must be linear or log, got '", v, "'"));
         }
         return absl::OkStatus();
       }},
      {"engines",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         c.engines.clear();
         for (const std::string& item : SplitList(v)) {
           absl::StatusOr<Engine> e = ParseEngine(item);
           if (!e.ok()) return e.status();
           c.engines.push_back(*e);
         }
         return absl::OkStatus();
       }},
      {"mc_samples", RERO_INT_FIELD(engine_options.mc_samples)},
      {"seed", RERO_INT_FIELD(engine_options.seed)},
      {"grid_spacing", RERO_NUMBER_FIELD(engine_options.pld_grid_spacing)},
      {"edgeworth_order", RERO_INT_FIELD(engine_options.edgeworth_order)},
      {"calibrate_eps",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         absl::StatusOr<double> x = ParseDouble(v);
         if (!x.ok()) return x.status();
         if (!c.calibrate) c.calibrate = EpsDelta{0.0, 0.0};
         c.calibrate->eps = *x;
         return absl::OkStatus();
       }},
      {"calibrate_delta",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         absl::StatusOr<double> x = ParseDouble(v);
         if (!x.ok()) return x.status();
         if (!c.calibrate) c.calibrate = EpsDelta{0.0, 0.0};
         c.calibrate->delta = *x;
         return absl::OkStatus();
       }},
      {"format",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         if (v == "csv") {
           c.format = OutputFormat::kCsv;
         } else if (v == "json") {
           c.format = OutputFormat::kJson;
         } else {
           return absl::InvalidArgumentError(
               absl::StrCat("format must be csv or json, got '", v, "'"));
         }
         return absl::OkStatus();
       }},
      {"output",
       [](SweepConfig& c, absl::string_view v) -> absl::Status {
         c.output = std::string(v);
         return absl::OkStatus();
       }},
  };
  return *setters;
}

#undef RERO_NUMBER_FIELD
#undef RERO_INT_FIELD

absl::Status CheckAxisValue(SweepAxis axis, double x) {
  switch (axis) {
    case SweepAxis::kEffectSize:
      if (!(x > 0.0)) {
        return absl::InvalidArgumentError(
            absl::StrCat("effect sizes must be positive, got ", x));
      }
      break;
    case SweepAxis::kKappa:
      if (!(x > 0.0 && x <= 1.0)) {
        return absl::InvalidArgumentError(
            absl::StrCat("kappa values must lie in (0, 1], got ", x));
      }
      break;
    case SweepAxis::kSamplingRate:
      if (!(x > 0.0 && x <= 1.0)) {
        return absl::InvalidArgumentError(
            absl::StrCat("sampling rates must lie in (0, 1], got ", x));
      }
      break;
  }
  return absl::OkStatus();
}

}  // namespace

absl::string_view AxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kEffectSize:
      return "effect_size";
    case SweepAxis::kKappa:
      return "kappa";
    case SweepAxis::kSamplingRate:
      return "sampling_rate";
  }
  return "unknown";
}

absl::Status ValidateConfig(const SweepConfig& config) {
  if (config.engines.empty()) {
    return absl::InvalidArgumentError("engine list is empty");
  }
  for (std::size_t i = 0; i < config.engines.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (config.engines[i] == config.engines[j]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "engine '", EngineName(config.engines[i]), "' listed twice"));
      }
    }
  }
  if (config.sampling_rates.empty()) {
    return absl::InvalidArgumentError("no sampling rate given");
  }
  if (config.axis == SweepAxis::kSamplingRate &&
      config.sampling_rates.size() > 1) {
    return absl::InvalidArgumentError(
        "a sampling-rate sweep takes no list of sampling rates");
  }
  for (double p : config.sampling_rates) {
    MechanismSpec spec{config.family, config.noise_scale, config.sensitivity,
                       p, config.steps};
    if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  }
  if (absl::Status s = CheckPrior(config.kappa); !s.ok()) return s;
  if (config.points < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("points must be at least 1, got ", config.points));
  }
  if (config.spacing == Spacing::kLog && !(config.from > 0.0 && config.to > 0.0)) {
    return absl::InvalidArgumentError("log spacing needs a positive range");
  }
  for (double x : {config.from, config.to}) {
    if (absl::Status s = CheckAxisValue(config.axis, x); !s.ok()) return s;
  }
  if (config.engine_options.mc_samples < 1) {
    return absl::InvalidArgumentError("mc_samples must be at least 1");
  }
  if (!(config.engine_options.pld_grid_spacing > 0.0)) {
    return absl::InvalidArgumentError("grid_spacing must be positive");
  }
  if (config.engine_options.edgeworth_order < 0 ||
      config.engine_options.edgeworth_order > 4) {
    return absl::InvalidArgumentError("edgeworth_order must lie in [0, 4]");
  }
  if (config.calibrate) {
    if (config.family != Family::kGaussian) {
      return absl::InvalidArgumentError(
          "noise calibration is available for the Gaussian family only");
    }
    if (config.axis != SweepAxis::kKappa) {
      return absl::InvalidArgumentError(
          "calibrated series need the kappa axis");
    }
    if (!(config.calibrate->eps > 0.0) ||
        !(config.calibrate->delta > 0.0 && config.calibrate->delta < 1.0)) {
      return absl::InvalidArgumentError(
          "calibration needs calibrate_eps > 0 and calibrate_delta in (0, 1)");
    }
  }
  return absl::OkStatus();
}

std::vector<double> AxisValues(const SweepConfig& config) {
  std::vector<double> values;
  values.reserve(config.points);
  if (config.points == 1) return {config.from};
  for (int i = 0; i < config.points; ++i) {
    const double t = static_cast<double>(i) / (config.points - 1);
    if (config.spacing == Spacing::kLog) {
      values.push_back(std::exp(std::log(config.from) +
                                t * (std::log(config.to) - std::log(config.from))));
    } else {
      values.push_back(config.from + t * (config.to - config.from));
    }
  }
  values.front() = config.from;
  values.back() = config.to;
  return values;
}

absl::StatusOr<SweepConfig> ParseConfig(absl::string_view text,
                                        absl::string_view origin) {
  SweepConfig config;
  std::map<std::string, int> seen;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    auto fail = [&](absl::string_view message) {
      return absl::InvalidArgumentError(
          absl::StrCat(origin, ":", line_number, ": ", message));
    };
    if (std::size_t hash = line.find('#'); hash != absl::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return fail(absl::StrCat("expected 'key = value', got '", line, "'"));
    }
    const std::string key =
        absl::AsciiStrToLower(absl::StripAsciiWhitespace(line.substr(0, eq)));
    const absl::string_view value =
        absl::StripAsciiWhitespace(line.substr(eq + 1));
    if (value.empty()) return fail(absl::StrCat("'", key, "' has no value"));
    auto setter = Setters().find(key);
    if (setter == Setters().end()) {
      return fail(absl::StrCat("unknown key '", key, "'"));
    }
    if (auto [it, inserted] = seen.emplace(key, line_number); !inserted) {
      return fail(absl::StrCat("'", key, "' already set on line ", it->second));
    }
    if (absl::Status s = setter->second(config, value); !s.ok()) {
      return fail(s.message());
    }
  }
  if (config.calibrate && (seen.count("calibrate_eps") == 0 ||
                           seen.count("calibrate_delta") == 0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        origin, ": calibrate_eps and calibrate_delta go together"));
  }
  if (absl::Status s = ValidateConfig(config); !s.ok()) {
    return absl::InvalidArgumentError(absl::StrCat(origin, ": ", s.message()));
  }
  return config;
}

std::string ScenarioDirectory() { return RERO_SCENARIO_DIR; }

std::vector<std::string> ScenarioNames() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry :
       std::filesystem::directory_iterator(ScenarioDirectory(), ec)) {
    if (entry.path().extension() == ".conf") {
      names.push_back(entry.path().stem().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

absl::StatusOr<SweepConfig> LoadScenario(absl::string_view name_or_path) {
  std::filesystem::path path{std::string(name_or_path)};
  if (!std::filesystem::exists(path)) {
    path = std::filesystem::path(ScenarioDirectory()) /
           absl::StrCat(name_or_path, ".conf");
  }
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat(
        "no scenario file or built-in scenario named '", name_or_path,
        "' (known: ", absl::StrJoin(ScenarioNames(), ", "), ")"));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<SweepConfig> config =
      ParseConfig(buffer.str(), path.string());
  if (config.ok() && config->name.empty()) config->name = path.stem().string();
  return config;
}

std::string Serialize(const SweepConfig& c) {
  std::vector<std::string> rates, engines;
  for (double p : c.sampling_rates) rates.push_back(FormatDouble(p));
  for (Engine e : c.engines) engines.emplace_back(EngineName(e));
  std::string out;
  if (!c.name.empty()) absl::StrAppend(&out, "name = ", c.name, "\n");
  absl::StrAppend(
      &out, "family = ", FamilyName(c.family), "\n",
      "noise_scale = ", FormatDouble(c.noise_scale), "\n",
      "sensitivity = ", FormatDouble(c.sensitivity), "\n",
      "sampling_rate = ", absl::StrJoin(rates, ", "), "\n",
      "steps = ", c.steps, "\n", "kappa = ", FormatDouble(c.kappa), "\n",
      "axis = ", AxisName(c.axis), "\n", "from = ", FormatDouble(c.from), "\n",
      "to = ", FormatDouble(c.to), "\n", "points = ", c.points, "\n",
      "spacing = ", c.spacing == Spacing::kLog ? "log" : "linear", "\n",
      "engines = ", absl::StrJoin(engines, ", "), "\n");
  absl::StrAppend(&out, "mc_samples = ", c.engine_options.mc_samples, "\n",
                  "seed = ", c.engine_options.seed, "\n", "grid_spacing = ",
                  FormatDouble(c.engine_options.pld_grid_spacing), "\n",
                  "edgeworth_order = ", c.engine_options.edgeworth_order, "\n");
  if (c.calibrate) {
    absl::StrAppend(&out, "calibrate_eps = ", FormatDouble(c.calibrate->eps),
                    "\n", "calibrate_delta = ",
                    FormatDouble(c.calibrate->delta), "\n");
  }
  absl::StrAppend(&out, "format = ",
                  c.format == OutputFormat::kJson ? "json" : "csv", "\n");
  if (!c.output.empty()) absl::StrAppend(&out, "output = ", c.output, "\n");
  return out;
}

}  // namespace rero::cli
