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

#include "rero/mc.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "absl/strings/str_format.h"
#include "rero/mechanisms.h"
#include "rero/normal.h"
#include "rero/simd/kernels.h"

namespace rero {
namespace {

constexpr double kZ95 = 1.959963984540054;

struct Block {
  int64_t begin;
  int64_t size;
};

std::vector<Block> MakeBlocks(int64_t samples, int64_t block_size) {
  std::vector<Block> blocks;
  for (int64_t b = 0; b < samples; b += block_size) {
    blocks.push_back({b, std::min(block_size, samples - b)});
  }
  return blocks;
}

// Runs fn(block index) for every block on `workers` threads.
template <typename Fn>
void ForEachBlock(std::size_t count, int workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  const int extra = std::max(0, std::min<int>(workers, count) - 1);
  std::vector<std::thread> threads;
  threads.reserve(extra);
  for (int t = 0; t < extra; ++t) threads.emplace_back(run);
  run();
  for (auto& t : threads) t.join();
}

// Composed loss of block samples; `scratch` holds steps x size draws when
// the array is materialized, or one step's draws when streaming.
void SimulateBlock(const PrivacyLossModel& model, bool alternative,
                   uint64_t seed, std::size_t block_index, int64_t steps,
                   bool streaming, double* scratch, double* out,
                   int64_t size) {
  Rng rng = MakeStream(seed, 2 * block_index + (alternative ? 1 : 0));
  const auto n = static_cast<std::size_t>(size);
  std::fill(out, out + n, 0.0);
  auto draw = [&](double* row) {
    for (std::size_t s = 0; s < n; ++s) {
      row[s] = alternative ? model.SampleAlternativeStatistic(rng)
                           : model.SampleNullStatistic(rng);
    }
  };
  if (streaming) {
    for (int64_t t = 0; t < steps; ++t) {
      draw(scratch);
      simd::Accumulate({out, n}, {scratch, n});
    }
    return;
  }
  for (int64_t t = 0; t < steps; ++t) draw(scratch + t * n);
  for (int64_t t = 0; t < steps; ++t) {
    simd::Accumulate({out, n}, {scratch + t * n, n});
  }
}

}  // namespace

bool McInfeasible(double kappa, int64_t samples) {
  return kappa * static_cast<double>(samples) < 1.0;
}

absl::StatusOr<ReRoBound> McGamma(const MechanismSpec& spec, double kappa,
                                  const McConfig& config) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  if (config.samples < 1 || config.workers < 1 || config.block_size < 1) {
    return absl::InvalidArgumentError(
        "samples, workers and block size must be positive");
  }
  if (McInfeasible(kappa, config.samples)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "kappa * S = %g < 1: %d samples cannot resolve level %g",
        kappa * static_cast<double>(config.samples), config.samples, kappa));
  }
  const bool analytic = config.threshold == McThreshold::kAnalytic;
  if (analytic && (spec.family != Family::kGaussian || spec.IsSubsampled())) {
    return absl::InvalidArgumentError(
        "the analytic threshold needs the Gaussian family with p = 1");
  }
  if (!config.streaming) {
    const double bytes = static_cast<double>(config.samples) *
                         static_cast<double>(spec.steps) * sizeof(double);
    if (bytes > static_cast<double>(config.memory_cap_bytes)) {
      return absl::ResourceExhaustedError(absl::StrFormat(
          "materializing %d x %d losses needs %.3g bytes, above the cap of "
          "%d",
          config.samples, spec.steps, bytes, config.memory_cap_bytes));
    }
  }
  absl::StatusOr<PrivacyLossModel> model =
      PrivacyLossModel::Create(spec, Adjacency::kAddOne);
  if (!model.ok()) return model.status();

  const std::vector<Block> blocks =
      MakeBlocks(config.samples, config.block_size);
  const auto total = static_cast<std::size_t>(config.samples);
  const int64_t steps = spec.steps;
  std::vector<double> scratch;
  if (!config.streaming) scratch.resize(total * static_cast<std::size_t>(steps));
  // Materialized draws share one samples x steps array.
  auto simulate = [&](bool alternative, std::vector<double>& out) {
    out.resize(total);
    ForEachBlock(blocks.size(), config.workers, [&](std::size_t b) {
      const Block& blk = blocks[b];
      const auto offset = static_cast<std::size_t>(blk.begin);
      std::vector<double> row;
      double* buffer;
      if (config.streaming) {
        row.resize(static_cast<std::size_t>(blk.size));
        buffer = row.data();
      } else {
        buffer = scratch.data() + offset * static_cast<std::size_t>(steps);
      }
      SimulateBlock(*model, alternative, config.seed, b, steps,
                    config.streaming, buffer, out.data() + offset, blk.size);
    });
  };

  const double s = static_cast<double>(config.samples);
  double critical = 0.0;
  double tie_credit = 0.0;  // fraction of ties at the critical value
  if (analytic) {
    const double mu = spec.EffectSize() * std::sqrt(static_cast<double>(steps));
    critical = -0.5 * mu * mu + mu * NormalUpperQuantile(kappa);
  } else {
    std::vector<double> null_stats;
    simulate(false, null_stats);
    // ceil(kappa S), robust to kappa S landing just above an integer.
    const double ks = kappa * s;
    const auto keep = static_cast<std::size_t>(
        std::max(1.0, std::ceil(ks - 1e-9 * ks)));
    std::nth_element(null_stats.begin(), null_stats.begin() + (keep - 1),
                     null_stats.end(), std::greater<double>());
    critical = null_stats[keep - 1];
    const std::size_t above = simd::CountGreater(null_stats, critical);
    const std::size_t at_or_above = simd::CountGreater(
        null_stats, std::nextafter(critical, -std::numeric_limits<double>::infinity()));
    const std::size_t ties = at_or_above - above;
    tie_credit = ties > 0 ? static_cast<double>(keep - above) /
                                static_cast<double>(ties)
                          : 0.0;
  }
  std::vector<double> alt_stats;
  simulate(true, alt_stats);
  const std::size_t above = simd::CountGreater(alt_stats, critical);
  const std::size_t at_or_above = simd::CountGreater(
      alt_stats, std::nextafter(critical, -std::numeric_limits<double>::infinity()));
  const double gamma =
      (static_cast<double>(above) +
       tie_credit * static_cast<double>(at_or_above - above)) /
      s;
  const double half = kZ95 * std::sqrt(gamma * (1.0 - gamma) / s);
  ReRoBound bound = PointBound(kappa, gamma, Engine::kMonteCarlo);
  bound.gamma_lower = std::max(0.0, gamma - half);
  bound.gamma_upper = std::min(1.0, gamma + half);
  bound.error = half;
  if (!analytic) {
    bound.warnings.push_back(
        "critical value estimated from the H0 sample; its error is not "
        "part of the interval");
  }
  return bound;
}

}  // namespace rero
