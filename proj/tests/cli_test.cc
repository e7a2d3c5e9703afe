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


#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "rero/cli/config.h"
#include "rero/cli/engines.h"
#include "rero/cli/output.h"
#include "rero/cli/sweep.h"
#include "rero/closed_form.h"

namespace rero::cli {
namespace {

TEST(ParseConfigTest, ReadsAllKeys) {
  auto config = ParseConfig(R"(
# comment line
name = demo
family = laplace
noise_scale = 2.0   # b
sensitivity = 0.5
sampling_rate = 0.25
steps = 12
kappa = 0.02
axis = effect_size
from = 0.1
to = 2
points = 5
spacing = linear
engines = pld, edgeworth
mc_samples = 5000
seed = 99
grid_spacing = 1e-3
edgeworth_order = 2
format = json
output = out.json
)");
  ASSERT_TRUE(config.ok()) << config.status();
  EXPECT_EQ(config->name, "demo");
  EXPECT_EQ(config->family, Family::kLaplace);
  EXPECT_EQ(config->noise_scale, 2.0);
  EXPECT_EQ(config->sensitivity, 0.5);
  EXPECT_EQ(config->sampling_rates, std::vector<double>{0.25});
  EXPECT_EQ(config->steps, 12);
  EXPECT_EQ(config->engines,
            (std::vector<Engine>{Engine::kPld, Engine::kEdgeworth}));
  EXPECT_EQ(config->engine_options.mc_samples, 5000);
  EXPECT_EQ(config->engine_options.seed, 99u);
  EXPECT_EQ(config->engine_options.pld_grid_spacing, 1e-3);
  EXPECT_EQ(config->engine_options.edgeworth_order, 2);
  EXPECT_EQ(config->format, OutputFormat::kJson);
  EXPECT_EQ(config->output, "out.json");
}

TEST(ParseConfigTest, ErrorsNameTheLine) {
  const std::pair<const char*, const char*> cases[] = {
      {"name = a\nbogus = 1\n", "f.conf:2:"},
      {"steps = 3\n\nsteps = 4\n", "f.conf:3:"},
      {"kappa 0.1\n", "f.conf:1:"},
      {"name = a\nkappa = abc\n", "f.conf:2:"},
      {"engines = pld, warp\n", "f.conf:1:"},
  };
  for (const auto& [text, prefix] : cases) {
    auto config = ParseConfig(text, "f.conf");
    ASSERT_FALSE(config.ok()) << text;
    EXPECT_NE(config.status().message().find(prefix), std::string::npos)
        << config.status();
  }
  auto dup = ParseConfig("steps = 3\nsteps = 4\n", "f.conf");
  EXPECT_NE(dup.status().message().find("line 1"), std::string::npos);
}

TEST(ValidateConfigTest, RejectsInconsistentConfigs) {
  SweepConfig config;
  EXPECT_TRUE(ValidateConfig(config).ok());
  config.engines.clear();
  EXPECT_FALSE(ValidateConfig(config).ok());
  config.engines = {Engine::kPld, Engine::kPld};
  EXPECT_FALSE(ValidateConfig(config).ok());
  config.engines = {Engine::kPld};
  config.spacing = Spacing::kLog;
  config.from = 0.0;
  EXPECT_FALSE(ValidateConfig(config).ok());
  config = SweepConfig{};
  config.calibrate = EpsDelta{4.0, 1e-5};
  EXPECT_FALSE(ValidateConfig(config).ok());  // effect-size axis
  config.axis = SweepAxis::kKappa;
  config.from = 0.01;
  config.to = 0.5;
  EXPECT_TRUE(ValidateConfig(config).ok());
  config.family = Family::kLaplace;
  EXPECT_FALSE(ValidateConfig(config).ok());
}

TEST(AxisValuesTest, LinearAndLog) {
  SweepConfig config;
  config.from = 1.0;
  config.to = 3.0;
  config.points = 3;
  EXPECT_EQ(AxisValues(config), (std::vector<double>{1.0, 2.0, 3.0}));
  config.spacing = Spacing::kLog;
  config.from = 1e-3;
  config.to = 1e-1;
  const std::vector<double> v = AxisValues(config);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[0], 1e-3);
  EXPECT_NEAR(v[1], 1e-2, 1e-16);
  EXPECT_DOUBLE_EQ(v[2], 1e-1);
}

TEST(SerializeTest, Roundtrip) {
  for (const std::string& name : ScenarioNames()) {
    auto config = LoadScenario(name);
    ASSERT_TRUE(config.ok()) << name << ": " << config.status();
    const std::string text = Serialize(*config);
    auto again = ParseConfig(text, name);
    ASSERT_TRUE(again.ok()) << again.status();
    EXPECT_EQ(Serialize(*again), text) << name;
    EXPECT_EQ(ConfigHash(*again), ConfigHash(*config));
  }
}

TEST(ScenarioTest, BundledScenariosLoad) {
  const std::vector<std::string> names = ScenarioNames();
  for (const char* expected :
       {"fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f", "cifar",
        "cifar-small-p", "imagenet"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end())
        << expected;
  }
  auto fig1f = LoadScenario("fig1f");
  ASSERT_TRUE(fig1f.ok());
  EXPECT_EQ(fig1f->sampling_rates, (std::vector<double>{0.1, 0.5, 0.9}));
  ASSERT_TRUE(fig1f->calibrate.has_value());
  EXPECT_EQ(fig1f->calibrate->eps, 4.0);
  EXPECT_EQ(fig1f->calibrate->delta, 1e-5);
  EXPECT_EQ(fig1f->axis, SweepAxis::kKappa);
}

TEST(ScenarioTest, MissingAndMalformedFiles) {
  EXPECT_FALSE(LoadScenario("no-such-scenario").ok());
  const std::string path = ::testing::TempDir() + "/broken.conf";
  {
    FILE* f = std::fopen(path.c_str(), "w");
    ASSERT_NE(f, nullptr);
    std::fputs("name = broken\nsteps = many\n", f);
    std::fclose(f);
  }
  auto config = LoadScenario(path);
  ASSERT_FALSE(config.ok());
  EXPECT_EQ(config.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(config.status().message().find(":2:"), std::string::npos)
      << config.status();
}

TEST(RunPointTest, ClosedFormAndMonteCarlo) {
  EngineOptions options;
  options.seed = 1;
  const std::vector<Engine> engines = {Engine::kClosedForm,
                                       Engine::kMonteCarlo};
  const std::vector<Record> records =
      RunPoint(GaussianSpec(1.0), 0.05, engines, options);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_NEAR(records[0].gamma, 0.25951, 1e-5);
  EXPECT_EQ(records[0].status, RecordStatus::kOk);
  const Record& mc = records[1];
  EXPECT_EQ(mc.status, RecordStatus::kOk);
  EXPECT_LE(mc.gamma_lower, 0.25951 + 1e-3);
  EXPECT_GE(mc.gamma_upper, 0.25951 - 1e-3);
}

TEST(RunPointTest, FullRateSubsampledHasClosedForm) {
  MechanismSpec spec = GaussianSpec(0.5, 1.0, 1.0, 4);
  const std::vector<Engine> engines = {Engine::kClosedForm};
  const std::vector<Record> records = RunPoint(spec, 0.01, engines, {});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].status, RecordStatus::kOk);
  EXPECT_DOUBLE_EQ(records[0].gamma, GaussianReRo(0.01, 4.0)->gamma);
}

TEST(RunPointTest, InfeasibleMonteCarloIsFlagged) {
  const std::vector<Engine> engines = {Engine::kMonteCarlo, Engine::kClt};
  const std::vector<Record> records =
      RunPoint(GaussianSpec(2.0, 1.0, 0.01, 1000), 1e-7, engines, {});
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].status, RecordStatus::kInfeasible);
  EXPECT_TRUE(std::isnan(records[0].gamma));
  EXPECT_FALSE(records[0].message.empty());
  EXPECT_EQ(records[1].status, RecordStatus::kOk);
  EXPECT_FALSE(AllFailed(records));
}

TEST(RunPointTest, EngineErrorsAreRecorded) {
  const std::vector<Engine> engines = {Engine::kClosedForm};
  const std::vector<Record> records =
      RunPoint(GaussianSpec(1.0, 1.0, 0.5, 10), 0.1, engines, {});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].status, RecordStatus::kError);
  EXPECT_TRUE(AllFailed(records));
}

SweepConfig SmallSweep() {
  SweepConfig config;
  config.name = "small";
  config.sampling_rates = {0.2, 0.6};
  config.steps = 5;
  config.axis = SweepAxis::kKappa;
  config.from = 0.01;
  config.to = 0.2;
  config.points = 4;
  config.spacing = Spacing::kLog;
  config.engines = {Engine::kPld, Engine::kMonteCarlo};
  config.engine_options.mc_samples = 20'000;
  config.engine_options.pld_grid_spacing = 1e-3;
  config.engine_options.seed = 5;
  return config;
}

TEST(RunSweepTest, OrderAndDeterminism) {
  const SweepConfig config = SmallSweep();
  auto one = RunSweep(config, 1);
  auto three = RunSweep(config, 3);
  ASSERT_TRUE(one.ok() && three.ok());
  ASSERT_EQ(one->records.size(), 2u * 4u * 2u);
  EXPECT_EQ(one->records[0].sampling_rate, 0.2);
  EXPECT_EQ(one->records[0].engine, Engine::kPld);
  EXPECT_EQ(one->records[1].engine, Engine::kMonteCarlo);
  EXPECT_EQ(one->records.back().sampling_rate, 0.6);
  const uint64_t hash = ConfigHash(config);
  EXPECT_EQ(FormatCsv(one->records, hash), FormatCsv(three->records, hash));
  EXPECT_EQ(FormatJson(one->records, config), FormatJson(three->records, config));
}

TEST(RunSweepTest, CalibratedSeriesAreOrdered) {
  auto config = LoadScenario("fig1f");
  ASSERT_TRUE(config.ok());
  auto result = RunSweep(*config, 1);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->noise_scales.size(), 3u);
  EXPECT_LT(result->noise_scales[0], result->noise_scales[1]);
  EXPECT_LT(result->noise_scales[1], result->noise_scales[2]);
  // gamma at the last kappa grows with p.
  std::map<double, double> last;
  for (const Record& r : result->records) last[r.sampling_rate] = r.gamma;
  EXPECT_LT(last[0.1], last[0.5]);
  EXPECT_LT(last[0.5], last[0.9]);
}

TEST(RunSweepTest, SmallRateEdgeworthMatchesClt) {
  auto config = LoadScenario("fig1e");
  ASSERT_TRUE(config.ok());
  auto result = RunSweep(*config, 1);
  ASSERT_TRUE(result.ok()) << result.status();
  for (std::size_t i = 0; i + 1 < result->records.size(); i += 2) {
    const Record& e = result->records[i];
    const Record& c = result->records[i + 1];
    ASSERT_EQ(e.engine, Engine::kEdgeworth);
    ASSERT_EQ(c.engine, Engine::kClt);
    ASSERT_EQ(e.status, RecordStatus::kOk) << e.message;
    EXPECT_NEAR(e.gamma, c.gamma, 0.01) << e.kappa;
  }
}

TEST(RunSweepTest, EffectSizeAxis) {
  SweepConfig config;
  config.from = 0.5;
  config.to = 2.0;
  config.points = 4;
  config.engines = {Engine::kClosedForm};
  auto result = RunSweep(config, 2);
  ASSERT_TRUE(result.ok());
  ASSERT_EQ(result->records.size(), 4u);
  for (const Record& r : result->records) {
    EXPECT_DOUBLE_EQ(r.gamma, GaussianReRo(0.05, r.effect_size)->gamma);
  }
  EXPECT_EQ(result->records[3].effect_size, 2.0);
}

TEST(ValidateTest, FlagsDisagreement) {
  Record reference;
  reference.engine = Engine::kClosedForm;
  reference.kappa = 0.05;
  reference.effect_size = 1.0;
  reference.gamma = reference.gamma_lower = reference.gamma_upper = 0.25951;
  Record good = reference;
  good.engine = Engine::kEdgeworth;
  good.gamma = good.gamma_lower = good.gamma_upper = 0.2599;
  Record bad = good;
  bad.engine = Engine::kClt;
  bad.gamma = bad.gamma_lower = bad.gamma_upper = 0.27;
  const std::vector<ValidationRow> rows =
      Validate({reference, good, bad}, 1e-3);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].pass);
  EXPECT_FALSE(rows[1].pass);
  EXPECT_NEAR(rows[1].deviation, 0.27 - 0.25951, 1e-12);
  const std::string csv = FormatValidationCsv(rows, 0);
  EXPECT_NE(csv.find("PASS"), std::string::npos);
  EXPECT_NE(csv.find("FAIL"), std::string::npos);
}

TEST(OutputTest, CsvHeaderAndNaN) {
  Record r;
  r.engine = Engine::kMonteCarlo;
  r.kappa = 1e-7;
  r.status = RecordStatus::kInfeasible;
  r.gamma = r.gamma_lower = r.gamma_upper = NAN;
  r.message = "kappa * S < 1";
  const std::string csv = FormatCsv({r}, 0xabcdef);
  EXPECT_EQ(csv.rfind("# rero_bounds 0.1.0 config_hash=0000000000abcdef\n", 0),
            0u);
  EXPECT_NE(csv.find("method,family,p,N,effect_size,kappa,gamma"),
            std::string::npos);
  EXPECT_NE(csv.find("infeasible"), std::string::npos);
  const std::string json = FormatJson({r}, SweepConfig{});
  EXPECT_NE(json.find("null"), std::string::npos);
}

TEST(OutputTest, HashIgnoresOutputLocation) {
  SweepConfig a;
  SweepConfig b = a;
  b.output = "elsewhere.csv";
  b.format = OutputFormat::kJson;
  EXPECT_EQ(ConfigHash(a), ConfigHash(b));
  b.steps = 2;
  EXPECT_NE(ConfigHash(a), ConfigHash(b));
  EXPECT_EQ(Fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(Fnv1a("a"), 0xaf63dc4c8601ec8cull);
}

}  // namespace
}  // namespace rero::cli
