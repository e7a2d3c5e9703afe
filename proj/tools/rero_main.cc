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


// rero: reconstruction-robustness bounds from the command line.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "rero/cli/config.h"
#include "rero/cli/engines.h"
#include "rero/cli/output.h"
#include "rero/cli/sweep.h"
#include "rero/closed_form.h"
#include "rero/dp_convert.h"
#include "rero/types.h"

namespace {

using rero::cli::SweepConfig;

struct MechanismFlags {
  std::string family = "gaussian";
  double noise_scale = 1.0;
  double sensitivity = 1.0;
  double sampling_rate = 1.0;
  int64_t steps = 1;
};

struct RunFlags {
  std::string engines;
  int64_t samples = 1'000'000;
  uint64_t seed = 0;
  double grid_spacing = 1e-4;
  std::string format = "csv";
  std::string output;
  bool timing = false;
  int threads = 0;
};

void AddMechanismFlags(CLI::App* app, MechanismFlags& f) {
  app->add_option("--family", f.family, "gaussian or laplace")
      ->capture_default_str();
  app->add_option("--noise-scale,--sigma,-b", f.noise_scale,
                  "sigma (Gaussian) or b (Laplace), in units of the data")
      ->capture_default_str();
  app->add_option("--sensitivity,--delta-f", f.sensitivity,
                  "L2 (Gaussian) or L1 (Laplace) sensitivity")
      ->capture_default_str();
  app->add_option("-p,--sampling-rate", f.sampling_rate,
                  "Poisson sampling rate in (0, 1]")
      ->capture_default_str();
  app->add_option("-N,--steps", f.steps, "number of composed steps")
      ->capture_default_str();
}

void AddRunFlags(CLI::App* app, RunFlags& f, bool engines) {
  if (engines) {
    app->add_option("--engines", f.engines,
                    "comma list: closed_form, exact, edgeworth, clt, pld, mc");
  }
  app->add_option("-S,--samples", f.samples, "Monte Carlo sample count")
      ->capture_default_str();
  app->add_option("--seed", f.seed, "Monte Carlo seed")->capture_default_str();
  app->add_option("--grid-spacing", f.grid_spacing, "PLD loss grid spacing")
      ->capture_default_str();
  app->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("-o,--output", f.output,
                  "output file (relative to RERO_OUTPUT_DIR when set)");
  app->add_flag("--timing", f.timing, "record wall times");
  app->add_option("--threads", f.threads, "worker threads (RERO_THREADS)");
}

int Fail(const absl::Status& status) {
  std::cerr << "rero: " << status << "\n";
  return 2;
}

absl::Status ApplyMechanism(const MechanismFlags& m, SweepConfig& config) {
  absl::StatusOr<rero::Family> family = rero::ParseFamily(m.family);
  if (!family.ok()) return family.status();
  config.family = *family;
  config.noise_scale = m.noise_scale;
  config.sensitivity = m.sensitivity;
  config.sampling_rates = {m.sampling_rate};
  config.steps = m.steps;
  return absl::OkStatus();
}

absl::Status ApplyRun(const RunFlags& r, const CLI::App& app,
                      SweepConfig& config) {
  if (!r.engines.empty()) {
    absl::StatusOr<SweepConfig> parsed =
        rero::cli::ParseConfig(absl::StrCat("engines = ", r.engines), "--engines");
    if (!parsed.ok()) return parsed.status();
    config.engines = parsed->engines;
  }
  if (app.count("--samples") > 0) config.engine_options.mc_samples = r.samples;
  if (app.count("--seed") > 0) config.engine_options.seed = r.seed;
  if (app.count("--grid-spacing") > 0) {
    config.engine_options.pld_grid_spacing = r.grid_spacing;
  }
  if (app.count("--format") > 0) {
    config.format = r.format == "json" ? rero::cli::OutputFormat::kJson
                                       : rero::cli::OutputFormat::kCsv;
  }
  if (app.count("--output") > 0) config.output = r.output;
  return rero::cli::ValidateConfig(config);
}

int Emit(const SweepConfig& config, const RunFlags& run) {
  const int threads = run.threads > 0 ? run.threads
                                      : rero::cli::DefaultThreadCount();
  absl::StatusOr<rero::cli::SweepResult> result =
      rero::cli::RunSweep(config, threads);
  if (!result.ok()) return Fail(result.status());
  rero::cli::OutputOptions options;
  options.timing = run.timing;
  const std::string text =
      config.format == rero::cli::OutputFormat::kJson
          ? rero::cli::FormatJson(result->records, config, options)
          : rero::cli::FormatCsv(result->records,
                                 rero::cli::ConfigHash(config), options);
  if (absl::Status s = rero::cli::WriteText(config.output, text); !s.ok()) {
    return Fail(s);
  }
  for (const rero::cli::Record& r : result->records) {
    if (r.status != rero::cli::RecordStatus::kOk) {
      std::cerr << "rero: " << rero::EngineName(r.engine) << " at kappa "
                << r.kappa << ": " << rero::cli::StatusName(r.status) << ": "
                << r.message << "\n";
    }
  }
  return rero::cli::AllFailed(result->records) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruction-robustness bounds for Laplace and Gaussian "
               "noise, subsampled and composed."};
  app.require_subcommand(1);

  // point
  MechanismFlags point_mech;
  RunFlags point_run;
  double point_kappa = 0.05;
  CLI::App* point = app.add_subcommand("point", "gamma at one prior kappa");
  AddMechanismFlags(point, point_mech);
  AddRunFlags(point, point_run, true);
  point->add_option("-k,--kappa", point_kappa, "prior success probability")
      ->capture_default_str();

  // sweep
  std::string sweep_scenario;
  bool list_scenarios = false;
  RunFlags sweep_run;
  CLI::App* sweep =
      app.add_subcommand("sweep", "parameter sweep from a scenario file");
  sweep->add_option("scenario", sweep_scenario,
                    "scenario name or path to a .conf file");
  sweep->add_flag("--list", list_scenarios, "list built-in scenarios");
  AddRunFlags(sweep, sweep_run, true);

  // calibrate
  double cal_eps = 1.0, cal_delta = 1e-5;
  MechanismFlags cal_mech;
  std::string cal_engine;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "noise multiplier for an (eps, delta) target");
  calibrate->add_option("--eps", cal_eps, "target epsilon")->required();
  calibrate->add_option("--delta", cal_delta, "target delta")->required();
  calibrate->add_option("-p,--sampling-rate", cal_mech.sampling_rate)
      ->capture_default_str();
  calibrate->add_option("-N,--steps", cal_mech.steps)->capture_default_str();
  calibrate->add_option("--sensitivity", cal_mech.sensitivity)
      ->capture_default_str();
  calibrate->add_option("--engine", cal_engine,
                        "closed_form, exact, edgeworth, clt or pld");

  // convert
  MechanismFlags conv_mech;
  std::optional<double> conv_eps, conv_delta, conv_mu;
  std::string conv_engine;
  CLI::App* convert = app.add_subcommand(
      "convert", "(eps, delta) of a mechanism, or of a mu-GDP curve with --mu");
  AddMechanismFlags(convert, conv_mech);
  convert->add_option("--eps", conv_eps, "report delta at this epsilon");
  convert->add_option("--delta", conv_delta, "report epsilon at this delta");
  convert->add_option("--mu", conv_mu, "Gaussian-DP parameter");
  convert->add_option("--engine", conv_engine,
                      "closed_form, exact, edgeworth, clt or pld");

  // validate
  std::string val_scenario;
  MechanismFlags val_mech;
  RunFlags val_run;
  double val_kappa = 0.05, val_tolerance = 1e-3;
  CLI::App* validate = app.add_subcommand(
      "validate", "check approximate engines against PLD or closed form");
  validate->add_option("--scenario", val_scenario, "scenario name or path");
  AddMechanismFlags(validate, val_mech);
  AddRunFlags(validate, val_run, true);
  validate->add_option("-k,--kappa", val_kappa)->capture_default_str();
  validate->add_option("--tolerance", val_tolerance,
                       "allowed distance for Edgeworth and CLT")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (point->parsed()) {
    SweepConfig config;
    config.name = "point";
    config.axis = rero::cli::SweepAxis::kKappa;
    config.from = config.to = point_kappa;
    config.points = 1;
    config.engines = {rero::Engine::kClosedForm};
    if (absl::Status s = ApplyMechanism(point_mech, config); !s.ok()) {
      return Fail(s);
    }
    if (point_run.engines.empty()) {
      rero::MechanismSpec spec{config.family, config.noise_scale, config.sensitivity,
                         config.sampling_rates[0], config.steps};
      if (!rero::HasClosedForm(spec)) {
        config.engines = {rero::Engine::kEdgeworth, rero::Engine::kPld};
      }
    }
    config.kappa = point_kappa;
    if (absl::Status s = ApplyRun(point_run, *point, config); !s.ok()) {
      return Fail(s);
    }
    return Emit(config, point_run);
  }

  if (sweep->parsed()) {
    if (list_scenarios) {
      for (const std::string& name : rero::cli::ScenarioNames()) {
        std::cout << name << "\n";
      }
      return 0;
    }
    if (sweep_scenario.empty()) {
      return Fail(absl::InvalidArgumentError("sweep needs a scenario"));
    }
    absl::StatusOr<SweepConfig> config =
        rero::cli::LoadScenario(sweep_scenario);
    if (!config.ok()) return Fail(config.status());
    if (absl::Status s = ApplyRun(sweep_run, *sweep, *config); !s.ok()) {
      return Fail(s);
    }
    return Emit(*config, sweep_run);
  }

  if (calibrate->parsed()) {
    std::optional<rero::Engine> engine;
    if (!cal_engine.empty()) {
      absl::StatusOr<rero::Engine> e = rero::ParseEngine(cal_engine);
      if (!e.ok()) return Fail(e.status());
      engine = *e;
    }
    absl::StatusOr<double> sigma = rero::CalibrateSigma(
        {cal_eps, cal_delta}, cal_mech.steps, cal_mech.sampling_rate,
        cal_mech.sensitivity, engine);
    if (!sigma.ok()) return Fail(sigma.status());
    absl::StatusOr<rero::EpsBracket> achieved = rero::EpsDeltaSgm(
        rero::GaussianSpec(*sigma, cal_mech.sensitivity,
                           cal_mech.sampling_rate, cal_mech.steps),
        cal_delta, engine);
    if (!achieved.ok()) return Fail(achieved.status());
    std::cout << absl::StrFormat(
        "sigma = %.12g\nnoise_multiplier = %.12g\neps = %.12g\ndelta = %g\n",
        *sigma, *sigma / cal_mech.sensitivity, achieved->eps, cal_delta);
    return 0;
  }

  if (convert->parsed()) {
    if (conv_eps.has_value() && conv_delta.has_value()) {
      return Fail(absl::InvalidArgumentError("give at most one of --eps, --delta"));
    }
    if (conv_mu) {
      if (!conv_eps && !conv_delta) {
        return Fail(absl::InvalidArgumentError("--mu needs --eps or --delta"));
      }
      if (conv_eps) {
        absl::StatusOr<double> d = rero::DeltaOfEpsGauss({*conv_mu}, *conv_eps);
        if (!d.ok()) return Fail(d.status());
        std::cout << absl::StrFormat("eps = %.12g\ndelta = %.12g\n", *conv_eps, *d);
      } else {
        absl::StatusOr<double> e =
            rero::EpsOfDeltaGauss({*conv_mu}, *conv_delta);
        if (!e.ok()) return Fail(e.status());
        std::cout << absl::StrFormat("eps = %.12g\ndelta = %.12g\n", *e, *conv_delta);
      }
      return 0;
    }
    absl::StatusOr<rero::Family> family = rero::ParseFamily(conv_mech.family);
    if (!family.ok()) return Fail(family.status());
    const rero::MechanismSpec spec{*family, conv_mech.noise_scale,
                                   conv_mech.sensitivity,
                                   conv_mech.sampling_rate, conv_mech.steps};
    if (!conv_eps && !conv_delta) {
      // Pure epsilon of the Laplace mechanism.
      if (spec.family != rero::Family::kLaplace) {
        return Fail(absl::InvalidArgumentError("give one of --eps, --delta"));
      }
      absl::StatusOr<rero::EpsDelta> pure = rero::EpsSubsampledLaplace(spec);
      if (!pure.ok()) return Fail(pure.status());
      std::cout << absl::StrFormat("eps = %.12g\ndelta = 0\n", pure->eps);
      return 0;
    }
    std::optional<rero::Engine> engine;
    if (!conv_engine.empty()) {
      absl::StatusOr<rero::Engine> e = rero::ParseEngine(conv_engine);
      if (!e.ok()) return Fail(e.status());
      engine = *e;
    }
    absl::StatusOr<rero::PrivacyProfile> profile =
        rero::PrivacyProfile::Create(spec, engine);
    if (!profile.ok()) return Fail(profile.status());
    std::cout << "engine = " << rero::EngineName(profile->engine()) << "\n";
    if (conv_eps) {
      const rero::DeltaBracket d = profile->Delta(*conv_eps);
      std::cout << absl::StrFormat(
          "eps = %.12g\ndelta = %.12g\ndelta_lower = %.12g\ndelta_upper = "
          "%.12g\n",
          *conv_eps, d.delta, d.lower, d.upper);
    } else {
      absl::StatusOr<rero::EpsBracket> e = profile->Eps(*conv_delta);
      if (!e.ok()) return Fail(e.status());
      std::cout << absl::StrFormat(
          "eps = %.12g\neps_lower = %.12g\neps_upper = %.12g\ndelta = %.12g\n",
          e->eps, e->lower, e->upper, *conv_delta);
    }
    return 0;
  }

  if (validate->parsed()) {
    SweepConfig config;
    if (!val_scenario.empty()) {
      absl::StatusOr<SweepConfig> loaded = rero::cli::LoadScenario(val_scenario);
      if (!loaded.ok()) return Fail(loaded.status());
      config = *loaded;
    } else {
      config.name = "validate";
      config.axis = rero::cli::SweepAxis::kKappa;
      config.from = config.to = config.kappa = val_kappa;
      config.points = 1;
      if (absl::Status s = ApplyMechanism(val_mech, config); !s.ok()) {
        return Fail(s);
      }
      config.engines = {rero::Engine::kEdgeworth, rero::Engine::kClt,
                        rero::Engine::kMonteCarlo};
    }
    if (absl::Status s = ApplyRun(val_run, *validate, config); !s.ok()) {
      return Fail(s);
    }
    const rero::MechanismSpec first{config.family, config.noise_scale,
                                    config.sensitivity,
                                    config.sampling_rates[0], config.steps};
    const rero::Engine reference = rero::HasClosedForm(first)
                                       ? rero::Engine::kClosedForm
                                       : rero::Engine::kPld;
    bool present = false;
    for (rero::Engine e : config.engines) present |= e == reference;
    if (!present) config.engines.push_back(reference);
    const int threads = val_run.threads > 0 ? val_run.threads
                                            : rero::cli::DefaultThreadCount();
    absl::StatusOr<rero::cli::SweepResult> result =
        rero::cli::RunSweep(config, threads);
    if (!result.ok()) return Fail(result.status());
    const std::vector<rero::cli::ValidationRow> rows =
        rero::cli::Validate(result->records, val_tolerance);
    if (absl::Status s = rero::cli::WriteText(
            config.output, rero::cli::FormatValidationCsv(
                               rows, rero::cli::ConfigHash(config)));
        !s.ok()) {
      return Fail(s);
    }
    int failures = 0;
    for (const auto& row : rows) failures += row.pass ? 0 : 1;
    std::cerr << absl::StrFormat("rero: %d of %d rows pass\n",
                                 static_cast<int>(rows.size()) - failures,
                                 static_cast<int>(rows.size()));
    return failures == 0 ? 0 : 1;
  }
  return 0;
}
