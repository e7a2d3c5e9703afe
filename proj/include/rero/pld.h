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

#ifndef RERO_PLD_H_
#define RERO_PLD_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "rero/mechanisms.h"
#include "rero/rero_core.h"
#include "rero/types.h"

namespace rero {

enum class Rounding { kPessimistic, kOptimistic };
enum class Hypothesis { kH0, kH1 };

// Lattice law of the privacy loss T, with masses at origin + i * spacing.
//
// Finite atoms always satisfy P_H0(l) = exp(-l) P_H1(l), so one view fixes
// the other up to the buckets below. Pessimistic laws dominate the true pair
// (every test is at least as powerful); optimistic laws are dominated.
struct DiscretePld {
  double origin = 0.0;
  double spacing = 1.0;
  std::vector<double> masses;  // under `hypothesis`
  Rounding mode = Rounding::kPessimistic;
  Hypothesis hypothesis = Hypothesis::kH1;
  // H1-only mass at T = +inf.
  double h1_infinity = 0.0;
  // H1 mass discarded by optimistic rounding; counts as T = -inf under H1.
  double h1_dropped = 0.0;
  // H0-only mass at T = -inf.
  double h0_infinity = 0.0;
  // Accumulated floating-point error bound on the H1 masses (l1 norm).
  double rounding_slack = 0.0;

  double Loss(std::size_t i) const {
    return origin + spacing * static_cast<double>(i);
  }
  // Bucket masses of the tagged view.
  double PosInf() const;
  double NegInf() const;
  double Total() const;
  // Mean of the finite part (ignores buckets).
  double FiniteMean() const;
  // P(T <= x) under the tagged view, counting the -inf bucket.
  double Cdf(double x) const;
};

// Re-expresses the masses under `hypothesis`.
DiscretePld ToHypothesis(const DiscretePld& pld, Hypothesis hypothesis);

// Lattice law of a single step. Gaussian grids sit on multiples of the
// spacing; Laplace grids are stretched so that both flat atoms are lattice
// points. Pessimistic mode splits each bin onto its end points, optimistic
// mode merges runs of outputs whose likelihood ratio is a grid value.
absl::StatusOr<DiscretePld> DiscretizePld(const PrivacyLossModel& model,
                                          Hypothesis hypothesis,
                                          double grid_spacing,
                                          double tail_mass_bound,
                                          Rounding mode);

struct ComposeOptions {
  // Mass trimmed from each end after every convolution.
  double tail_mass_bound = 1e-12;
  // Longest mass vector kept after a convolution; the excess is trimmed and
  // accounted like the tails.
  std::size_t max_length = std::size_t{1} << 26;
};

// steps-fold self-convolution by repeated squaring.
absl::StatusOr<DiscretePld> ComposePld(const DiscretePld& pld, int64_t steps,
                                       const ComposeOptions& options = {});

// Linear convolution of two H1 laws on the same spacing.
absl::StatusOr<DiscretePld> ConvolvePld(const DiscretePld& x,
                                        const DiscretePld& y,
                                        const ComposeOptions& options = {});

// Supremum power at level kappa of the pair described by the law, widened by
// its rounding slack in the direction of its mode.
double GammaFromPld(const DiscretePld& pld, double kappa);

// delta(eps) = sup_S P_H1(S) - e^eps P_H0(S).
double HockeyStickFromPld(const DiscretePld& pld, double eps);

// Trade-off curve beta(alpha) = 1 - power on the given alpha grid.
GridCurve TradeoffFromPld(const DiscretePld& pld,
                          const std::vector<double>& alphas);

struct PldOptions {
  double grid_spacing = 1e-4;
  double tail_mass_bound = 1e-12;
  std::size_t max_length = std::size_t{1} << 26;
};

// Composed pessimistic and optimistic laws for spec.steps steps.
struct PldPair {
  DiscretePld pessimistic;
  DiscretePld optimistic;
};
absl::StatusOr<PldPair> ComposedPldPair(const MechanismSpec& spec,
                                        Adjacency adjacency,
                                        const PldOptions& options = {});

// Guaranteed bracket on gamma from the add-one pair; gamma is the midpoint.
absl::StatusOr<ReRoBound> GammaPldBracket(const MechanismSpec& spec,
                                          double kappa,
                                          const PldOptions& options = {});
ReRoBound GammaPldBracket(const PldPair& pair, double kappa);

}  // namespace rero

#endif  // RERO_PLD_H_
