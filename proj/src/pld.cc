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

#include "rero/pld.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "absl/strings/str_format.h"
#include "boost/math/quadrature/gauss.hpp"
#include "boost/math/tools/toms748_solve.hpp"
#include "fftw3.h"
#include "rero/simd/kernels.h"

namespace rero {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Index tolerance when snapping a computed log-ratio onto the lattice.
constexpr double kSnap = 1e-9;
// Widest sub-interval handed to one Gauss-Legendre rule.
constexpr double kPanelWidth = 0.05;

using Gauss = boost::math::quadrature::gauss<double, 10>;

// a * exp(-l) without producing NaN for vanishing a.
double ScaleByExpNeg(double a, double l) {
  return a > 0.0 ? a * std::exp(-l) : 0.0;
}

// Integrals over (y0, y1] taken directly on the densities, so that masses
// of narrow bins keep full relative precision.
struct BinMasses {
  double alt = 0.0;     // mu mass
  double null = 0.0;    // nu mass
  double excess = 0.0;  // integral of nu (e^L - e^l), given l
};

class BinIntegrator {
 public:
  explicit BinIntegrator(const PrivacyLossModel& model) : model_(model) {}

  BinMasses Masses(double y0, double y1, double l) const {
    BinMasses out;
    if (!(y1 > y0)) return out;
    const double scale = 1.0 + std::max(std::fabs(y0), std::fabs(y1));
    const int panels = static_cast<int>(
        std::min(4096.0, std::ceil((y1 - y0) * scale / kPanelWidth)));
    const double width = (y1 - y0) / panels;
    const double el = std::exp(l);
    for (int k = 0; k < panels; ++k) {
      const double a = y0 + width * k;
      const double b = k + 1 == panels ? y1 : a + width;
      out.alt += Gauss::integrate(
          [&](double y) { return model_.alternative_dist().Pdf(y); }, a, b);
      out.null += Gauss::integrate(
          [&](double y) { return model_.null_dist().Pdf(y); }, a, b);
      out.excess += Gauss::integrate(
          [&](double y) {
            return model_.null_dist().Pdf(y) * el *
                   std::expm1(model_.LogRatio(y) - l);
          },
          a, b);
    }
    return out;
  }

  double Excess(double y0, double y1, double l) const {
    if (!(y1 > y0)) return 0.0;
    const double scale = 1.0 + std::max(std::fabs(y0), std::fabs(y1));
    const int panels = static_cast<int>(
        std::min(4096.0, std::ceil((y1 - y0) * scale / kPanelWidth)));
    const double width = (y1 - y0) / panels;
    const double el = std::exp(l);
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double a = y0 + width * k;
      const double b = k + 1 == panels ? y1 : a + width;
      total += Gauss::integrate(
          [&](double y) {
            return model_.null_dist().Pdf(y) * el *
                   std::expm1(model_.LogRatio(y) - l);
          },
          a, b);
    }
    return total;
  }

 private:
  const PrivacyLossModel& model_;
};

// Lattice placement shared by both rounding modes.
struct Lattice {
  double origin = 0.0;
  double spacing = 1.0;
  std::size_t top = 0;  // index of the last grid value
  // Interior chain region for flat-atom families.
  bool flat_ends = false;
  double y_low = -kInf;  // threshold at the first grid value
  double y_high = kInf;  // upper end of the smooth region
  double y_tail = -kInf;  // output below which mu has negligible mass

  double Loss(std::size_t i) const {
    return origin + spacing * static_cast<double>(i);
  }
};

absl::StatusOr<Lattice> PlaceLattice(const PrivacyLossModel& model,
                                     double spacing, double tail_mass_bound) {
  Lattice lattice;
  if (model.family() == Family::kLaplace) {
    const double lo = model.LogRatioMin(), hi = model.LogRatioMax();
    const double steps = std::max(1.0, std::ceil((hi - lo) / spacing));
    lattice.origin = lo;
    lattice.spacing = (hi - lo) / steps;
    lattice.top = static_cast<std::size_t>(steps);
    lattice.flat_ends = true;
    lattice.y_low = 0.0;
    lattice.y_high = model.effect_size();
    return lattice;
  }
  const NoiseMixture& alt = model.alternative_dist();
  const double y_lo = alt.UpperQuantile(1.0 - 0.5 * tail_mass_bound);
  const double y_hi = alt.UpperQuantile(0.5 * tail_mass_bound);
  const double l_lo = model.LogRatio(y_lo), l_hi = model.LogRatio(y_hi);
  if (!std::isfinite(l_lo) || !std::isfinite(l_hi)) {
    return absl::InternalError("privacy loss tails are not finite");
  }
  double i_lo = std::floor(l_lo / spacing);
  double i_hi = std::ceil(l_hi / spacing);
  // Bounded losses: keep both end thresholds finite.
  while (!std::isfinite(model.ThresholdFor(i_lo * spacing))) i_lo += 1.0;
  while (!std::isfinite(model.ThresholdFor(i_hi * spacing))) i_hi -= 1.0;
  if (!(i_hi > i_lo)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grid spacing %g is too coarse for the loss range", spacing));
  }
  lattice.origin = i_lo * spacing;
  lattice.spacing = spacing;
  lattice.top = static_cast<std::size_t>(i_hi - i_lo);
  lattice.y_low = model.ThresholdFor(lattice.origin);
  lattice.y_high = model.ThresholdFor(lattice.Loss(lattice.top));
  lattice.y_tail = y_lo;
  return lattice;
}

// Output threshold at the i-th grid value.
double GridThreshold(const PrivacyLossModel& model, const Lattice& lattice,
                     std::size_t i) {
  if (i == 0) return lattice.y_low;
  if (i == lattice.top) return lattice.flat_ends ? kInf : lattice.y_high;
  const double y = model.ThresholdFor(lattice.Loss(i));
  if (lattice.flat_ends) return std::clamp(y, lattice.y_low, lattice.y_high);
  return y;
}

DiscretePld EmptyPld(const Lattice& lattice, Rounding mode) {
  DiscretePld pld;
  pld.origin = lattice.origin;
  pld.spacing = lattice.spacing;
  pld.masses.assign(lattice.top + 1, 0.0);
  pld.mode = mode;
  pld.hypothesis = Hypothesis::kH1;
  return pld;
}

// A loss bounded below (subsampling) has mass on a flat floor under the
// first grid value. Adds one grid value below the floor and moves the lowest
// threshold into the tail, so that the floor mass falls inside a bin.
bool ExtendBelowFloor(const PrivacyLossModel& model, Lattice& lattice) {
  const double floor_loss = model.LogRatioMin();
  if (lattice.flat_ends || !std::isfinite(floor_loss) ||
      !(floor_loss < lattice.origin) || !std::isfinite(lattice.y_tail)) {
    return false;
  }
  lattice.origin -= lattice.spacing;
  ++lattice.top;
  lattice.y_low = lattice.y_tail;
  return true;
}

void FinishH0Bucket(DiscretePld& pld) {
  double h0 = 0.0;
  for (std::size_t i = 0; i < pld.masses.size(); ++i) {
    h0 += ScaleByExpNeg(pld.masses[i], pld.Loss(i));
  }
  pld.h0_infinity = std::clamp(1.0 - h0, 0.0, 1.0);
}

// Connect-the-dots: each bin (l_{i-1}, l_i] becomes two atoms on its end
// points with the same mu and nu mass; tails go to the outer grid values
// and to the infinity buckets.
DiscretePld Pessimistic(const PrivacyLossModel& model, Lattice lattice) {
  const bool extended = ExtendBelowFloor(model, lattice);
  DiscretePld pld = EmptyPld(lattice, Rounding::kPessimistic);
  const NoiseMixture& alt = model.alternative_dist();
  const NoiseMixture& null = model.null_dist();
  const BinIntegrator bins(model);
  const double shrink = -std::expm1(-lattice.spacing);

  double y_prev = lattice.y_low;
  {
    // Losses below y_low lie under the first grid value above the floor.
    const std::size_t first = extended ? 1 : 0;
    const double a = alt.Cdf(y_prev), b = null.Cdf(y_prev);
    pld.masses[first] += a;
    const double claimed = ScaleByExpNeg(a, lattice.Loss(first));
    if (claimed > b) {
      pld.rounding_slack += (claimed - b) * std::exp(lattice.Loss(first));
    }
  }
  for (std::size_t i = 1; i <= lattice.top; ++i) {
    const double y = GridThreshold(model, lattice, i);
    const double l_lo = lattice.Loss(i - 1);
    BinMasses m;
    if (std::isinf(y)) {
      // Open last bin of a flat-atom family.
      m = bins.Masses(y_prev, lattice.y_high, l_lo);
      const double a = alt.Sf(lattice.y_high), b = null.Sf(lattice.y_high);
      m.alt += a;
      m.null += b;
      m.excess += a - std::exp(l_lo) * b;
    } else {
      m = bins.Masses(y_prev, y, l_lo);
    }
    const double upper = std::clamp(m.excess / shrink, 0.0, m.alt);
    pld.masses[i] += upper;
    pld.masses[i - 1] += m.alt - upper;
    y_prev = y;
  }
  if (!std::isinf(y_prev)) {
    const double a = alt.Sf(y_prev), b = null.Sf(y_prev);
    const double at_top =
        std::min(a, b * std::exp(lattice.Loss(lattice.top)));
    pld.masses[lattice.top] += at_top;
    pld.h1_infinity += a - at_top;
  }
  FinishH0Bucket(pld);
  return pld;
}

// Places a merged run of outputs with masses (a, b) on the grid value at or
// below its log-ratio, discarding the mu mass that does not fit.
void PlaceFloor(DiscretePld& pld, const Lattice& lattice, double a, double b) {
  if (!(a > 0.0)) return;
  const double x = b > 0.0
                       ? (std::log(a / b) - lattice.origin) / lattice.spacing
                       : kInf;
  const double idx = std::floor(x + kSnap);
  if (idx < 0.0) {
    pld.h1_dropped += a;
    return;
  }
  const std::size_t i =
      std::min<std::size_t>(lattice.top, static_cast<std::size_t>(
                                             std::min(idx, 1e18)));
  const double l = lattice.Loss(i);
  const double keep = std::min(a, b * std::exp(l));
  if (idx > x) pld.rounding_slack += a * std::expm1(kSnap * lattice.spacing);
  pld.masses[i] += keep;
  pld.h1_dropped += a - keep;
}

// Inscribed chain: consecutive runs of outputs whose mu/nu ratio is exactly
// e^{l_i}. Merging outputs is post-processing, so the result is dominated.
DiscretePld Optimistic(const PrivacyLossModel& model, Lattice lattice) {
  const bool extended = ExtendBelowFloor(model, lattice);
  DiscretePld pld = EmptyPld(lattice, Rounding::kOptimistic);
  const NoiseMixture& alt = model.alternative_dist();
  const NoiseMixture& null = model.null_dist();
  const BinIntegrator bins(model);

  double y_prev = lattice.y_low;
  if (!extended) {
    y_prev = model.ThresholdFor(lattice.origin + 0.5 * lattice.spacing);
    y_prev = std::clamp(y_prev, lattice.y_low, lattice.y_high);
  }
  PlaceFloor(pld, lattice, alt.Cdf(y_prev), null.Cdf(y_prev));

  const std::size_t last = lattice.flat_ends ? lattice.top - 1 : lattice.top;
  for (std::size_t i = 1; i <= last && lattice.top > 1; ++i) {
    const double l = lattice.Loss(i);
    const double y_mid = GridThreshold(model, lattice, i);
    if (!(y_mid > y_prev)) continue;
    const double y_end = lattice.y_high;
    auto excess = [&](double y) { return bins.Excess(y_prev, y, l); };
    const double e_mid = excess(y_mid);
    if (e_mid >= 0.0) continue;
    // The run ends roughly as far above y_mid as it starts below it.
    double lo = y_mid, e_lo = e_mid;
    double step = y_mid - y_prev;
    double hi = std::min(y_mid + step, y_end);
    double e_hi = excess(hi);
    while (e_hi < 0.0 && hi < y_end) {
      lo = hi;
      e_lo = e_hi;
      step *= 2.0;
      hi = std::min(hi + step, y_end);
      e_hi = excess(hi);
    }
    if (e_hi < 0.0) break;
    std::uintmax_t iterations = 100;
    const auto root = boost::math::tools::toms748_solve(
        excess, lo, hi, e_lo, e_hi,
        boost::math::tools::eps_tolerance<double>(50), iterations);
    const double y = root.second;
    const BinMasses m = bins.Masses(y_prev, y, l);
    const double keep = std::min(m.alt, m.null * std::exp(l));
    if (m.excess < 0.0) pld.rounding_slack -= m.excess;
    pld.masses[i] += keep;
    pld.h1_dropped += m.alt - keep;
    y_prev = y;
  }
  if (lattice.flat_ends) {
    // The top atom sits exactly on the last grid value; keep it apart from
    // the short run before it.
    const double a = alt.Sf(lattice.y_high), b = null.Sf(lattice.y_high);
    const BinMasses run = bins.Masses(y_prev, lattice.y_high, 0.0);
    PlaceFloor(pld, lattice, run.alt, run.null);
    PlaceFloor(pld, lattice, a, b);
  } else {
    PlaceFloor(pld, lattice, alt.Sf(y_prev), null.Sf(y_prev));
  }
  FinishH0Bucket(pld);
  return pld;
}

}  // namespace

double DiscretePld::PosInf() const {
  return hypothesis == Hypothesis::kH1 ? h1_infinity : 0.0;
}

double DiscretePld::NegInf() const {
  return hypothesis == Hypothesis::kH1 ? h1_dropped : h0_infinity;
}

double DiscretePld::Total() const {
  return std::accumulate(masses.begin(), masses.end(), 0.0) + PosInf() +
         NegInf();
}

double DiscretePld::FiniteMean() const {
  double mass = 0.0, moment = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    mass += masses[i];
    moment += masses[i] * Loss(i);
  }
  return mass > 0.0 ? moment / mass : 0.0;
}

double DiscretePld::Cdf(double x) const {
  double total = NegInf();
  for (std::size_t i = 0; i < masses.size() && Loss(i) <= x; ++i) {
    total += masses[i];
  }
  return std::min(total, 1.0);
}

DiscretePld ToHypothesis(const DiscretePld& pld, Hypothesis hypothesis) {
  if (pld.hypothesis == hypothesis) return pld;
  DiscretePld out = pld;
  out.hypothesis = hypothesis;
  for (std::size_t i = 0; i < out.masses.size(); ++i) {
    const double l = pld.Loss(i);
    const double m = pld.masses[i];
    out.masses[i] = hypothesis == Hypothesis::kH0 ? ScaleByExpNeg(m, l)
                                                  : ScaleByExpNeg(m, -l);
  }
  return out;
}

absl::StatusOr<DiscretePld> DiscretizePld(const PrivacyLossModel& model,
                                          Hypothesis hypothesis,
                                          double grid_spacing,
                                          double tail_mass_bound,
                                          Rounding mode) {
  if (!(grid_spacing > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("grid spacing must be positive, got %g", grid_spacing));
  }
  if (grid_spacing > std::log(2.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "grid spacing %g is too coarse: adjacent atoms differ in likelihood "
        "ratio by more than a factor of two",
        grid_spacing));
  }
  if (!(tail_mass_bound > 0.0 && tail_mass_bound < 1.0)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "tail mass bound must lie in (0, 1), got %g", tail_mass_bound));
  }
  DiscretePld pld;
  if (model.effect_size() <= 0.0) {
    // Identical outputs: T = 0 under both hypotheses.
    pld.masses = {1.0};
    pld.spacing = grid_spacing;
    pld.mode = mode;
  } else {
    absl::StatusOr<Lattice> lattice =
        PlaceLattice(model, grid_spacing, tail_mass_bound);
    if (!lattice.ok()) return lattice.status();
    pld = mode == Rounding::kPessimistic ? Pessimistic(model, *lattice)
                                         : Optimistic(model, *lattice);
  }
  return ToHypothesis(pld, hypothesis);
}

namespace {

std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

// Smallest 2^a 3^b 5^c 7^d at least n.
std::size_t FftSize(std::size_t n) {
  std::size_t best = 1;
  while (best < n) best <<= 1;
  for (std::size_t p7 = 1; p7 < best; p7 *= 7) {
    for (std::size_t p5 = p7; p5 < best; p5 *= 5) {
      for (std::size_t p3 = p5; p3 < best; p3 *= 3) {
        std::size_t v = p3;
        while (v < n) v <<= 1;
        best = std::min(best, v);
      }
    }
  }
  return best;
}

struct FftBuffer {
  explicit FftBuffer(std::size_t n)
      : real(fftw_alloc_real(n)), spectrum(fftw_alloc_complex(n / 2 + 1)) {}
  ~FftBuffer() {
    fftw_free(real);
    fftw_free(spectrum);
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  double* real;
  fftw_complex* spectrum;
};

void ForwardFft(const std::vector<double>& x, std::size_t n, FftBuffer& buf) {
  std::fill(buf.real, buf.real + n, 0.0);
  std::copy(x.begin(), x.end(), buf.real);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.real, buf.spectrum,
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(plan);
}

void InverseFft(std::size_t n, FftBuffer& buf) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), buf.spectrum, buf.real,
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(plan);
}

double Norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Linear convolution with an l1 error bound. Both inputs are non-negative.
std::vector<double> Convolve(const std::vector<double>& x,
                             const std::vector<double>& y, bool same,
                             double& error) {
  const std::size_t n_out = x.size() + y.size() - 1;
  const std::size_t shorter = std::min(x.size(), y.size());
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (shorter <= 64) {
    std::vector<double> z(n_out, 0.0);
    const std::vector<double>& lng = x.size() >= y.size() ? x : y;
    const std::vector<double>& sht = x.size() >= y.size() ? y : x;
    for (std::size_t j = 0; j < sht.size(); ++j) {
      if (sht[j] == 0.0) continue;
      for (std::size_t i = 0; i < lng.size(); ++i) z[i + j] += sht[j] * lng[i];
    }
    error += static_cast<double>(shorter + 1) * kEps *
             simd::Sum(x) * simd::Sum(y);
    return z;
  }
  const std::size_t n = FftSize(n_out);
  const std::size_t half = n / 2 + 1;
  FftBuffer a(n);
  ForwardFft(x, n, a);
  auto* za = reinterpret_cast<std::complex<double>*>(a.spectrum);
  if (same) {
    simd::ComplexSquare({za, half});
  } else {
    FftBuffer b(n);
    ForwardFft(y, n, b);
    simd::ComplexMultiply(
        {za, half}, {reinterpret_cast<const std::complex<double>*>(b.spectrum),
                     half});
  }
  InverseFft(n, a);
  std::vector<double> z(a.real, a.real + n_out);
  simd::Scale(z, 1.0 / static_cast<double>(n));
  simd::ClampNegative(z);
  error += 5.0 * kEps * static_cast<double>(n) *
           std::log2(static_cast<double>(n)) * Norm2(x) * Norm2(y);
  return z;
}

// Convolution of H1 laws with bucket bookkeeping and tail trimming.
DiscretePld Combine(const DiscretePld& x, const DiscretePld& y, bool same,
                    const ComposeOptions& options) {
  DiscretePld out;
  out.mode = x.mode;
  out.hypothesis = Hypothesis::kH1;
  out.spacing = x.spacing;
  out.origin = x.origin + y.origin;
  double error = 0.0;
  out.masses = Convolve(x.masses, y.masses, same, error);
  out.rounding_slack = x.rounding_slack + y.rounding_slack + error;

  const double fx = simd::Sum(x.masses), fy = simd::Sum(y.masses);
  const double kept = (1.0 - x.h1_dropped) * (1.0 - y.h1_dropped);
  out.h1_dropped = 1.0 - kept;
  out.h1_infinity = std::max(0.0, kept - fx * fy);
  out.h0_infinity =
      1.0 - (1.0 - x.h0_infinity) * (1.0 - y.h0_infinity);

  // Trim both ends, then enforce the length cap from the lighter end.
  std::vector<double>& m = out.masses;
  const double half_tail = 0.5 * options.tail_mass_bound;
  std::size_t lo = 0, hi = m.size();
  double trimmed = 0.0, trimmed_h0 = 0.0;
  auto drop = [&](std::size_t i) {
    trimmed += m[i];
    trimmed_h0 += ScaleByExpNeg(m[i], out.Loss(i));
  };
  for (double acc = 0.0; lo + 1 < hi && acc + m[lo] <= half_tail; ++lo) {
    acc += m[lo];
    drop(lo);
  }
  for (double acc = 0.0; hi - 1 > lo && acc + m[hi - 1] <= half_tail; --hi) {
    acc += m[hi - 1];
    drop(hi - 1);
  }
  while (hi - lo > options.max_length) {
    if (m[lo] <= m[hi - 1]) {
      drop(lo++);
    } else {
      drop(--hi);
    }
  }
  if (out.mode == Rounding::kPessimistic) {
    out.h1_infinity += trimmed;
  } else {
    out.h1_dropped += trimmed;
  }
  out.h0_infinity = std::min(1.0, out.h0_infinity + trimmed_h0);
  out.origin += out.spacing * static_cast<double>(lo);
  m.erase(m.begin() + static_cast<std::ptrdiff_t>(hi), m.end());
  m.erase(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(lo));
  return out;
}

}  // namespace

absl::StatusOr<DiscretePld> ConvolvePld(const DiscretePld& x,
                                        const DiscretePld& y,
                                        const ComposeOptions& options) {
  if (std::fabs(x.spacing - y.spacing) > 1e-12 * x.spacing) {
    return absl::InvalidArgumentError("laws use different grid spacings");
  }
  if (x.mode != y.mode) {
    return absl::InvalidArgumentError("laws use different rounding modes");
  }
  if (x.masses.empty() || y.masses.empty()) {
    return absl::InvalidArgumentError("empty privacy loss law");
  }
  DiscretePld out = Combine(ToHypothesis(x, Hypothesis::kH1),
                            ToHypothesis(y, Hypothesis::kH1), false, options);
  return ToHypothesis(out, x.hypothesis);
}

absl::StatusOr<DiscretePld> ComposePld(const DiscretePld& pld, int64_t steps,
                                       const ComposeOptions& options) {
  if (steps < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("steps must be positive, got %d", steps));
  }
  if (pld.masses.empty()) {
    return absl::InvalidArgumentError("empty privacy loss law");
  }
  DiscretePld base = ToHypothesis(pld, Hypothesis::kH1);
  DiscretePld result;
  bool have_result = false;
  for (int64_t n = steps;;) {
    if (n & 1) {
      result = have_result ? Combine(result, base, false, options) : base;
      have_result = true;
    }
    n >>= 1;
    if (n == 0) break;
    base = Combine(base, base, true, options);
  }
  return ToHypothesis(result, pld.hypothesis);
}

double GammaFromPld(const DiscretePld& pld, double kappa) {
  if (kappa >= 1.0) return 1.0;
  const DiscretePld h1 = ToHypothesis(pld, Hypothesis::kH1);
  double power = h1.h1_infinity;
  double budget = kappa;
  for (std::size_t i = h1.masses.size(); i-- > 0;) {
    const double a = h1.masses[i];
    const double cost = ScaleByExpNeg(a, h1.Loss(i));
    if (cost <= budget) {
      power += a;
      budget -= cost;
    } else {
      power += a * (budget / cost);
      break;
    }
  }
  if (pld.mode == Rounding::kPessimistic) {
    return std::min(1.0, power + h1.rounding_slack);
  }
  return std::clamp(power - h1.rounding_slack, kappa, 1.0);
}

double HockeyStickFromPld(const DiscretePld& pld, double eps) {
  const DiscretePld h1 = ToHypothesis(pld, Hypothesis::kH1);
  double delta = h1.h1_infinity;
  for (std::size_t i = h1.masses.size(); i-- > 0;) {
    const double l = h1.Loss(i);
    if (l <= eps) break;
    delta -= h1.masses[i] * std::expm1(eps - l);
  }
  if (pld.mode == Rounding::kPessimistic) {
    return std::min(1.0, delta + h1.rounding_slack);
  }
  return std::clamp(delta - h1.rounding_slack, 0.0, 1.0);
}

GridCurve TradeoffFromPld(const DiscretePld& pld,
                          const std::vector<double>& alphas) {
  const DiscretePld h1 = ToHypothesis(pld, Hypothesis::kH1);
  const std::size_t n = h1.masses.size();
  // Cumulative H0 cost and H1 power, largest loss first.
  std::vector<double> cost(n + 1, 0.0), power(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = n - 1 - k;
    const double a = h1.masses[i];
    cost[k + 1] = cost[k] + ScaleByExpNeg(a, h1.Loss(i));
    power[k + 1] = power[k] + a;
  }
  const double sign = pld.mode == Rounding::kPessimistic ? 1.0 : -1.0;
  std::vector<double> betas;
  betas.reserve(alphas.size());
  for (double alpha : alphas) {
    double p = 1.0;
    if (alpha < 1.0) {
      const std::size_t k = static_cast<std::size_t>(
          std::upper_bound(cost.begin(), cost.end(), alpha) - cost.begin());
      if (k > n) {
        p = power[n];
      } else {
        const double step = cost[k] - cost[k - 1];
        const double frac = step > 0.0 ? (alpha - cost[k - 1]) / step : 0.0;
        p = power[k - 1] + frac * (power[k] - power[k - 1]);
      }
      p = std::clamp(h1.h1_infinity + p + sign * h1.rounding_slack, alpha,
                     1.0);
    }
    betas.push_back(1.0 - p);
  }
  return GridCurve(alphas, std::move(betas));
}

absl::StatusOr<PldPair> ComposedPldPair(const MechanismSpec& spec,
                                        Adjacency adjacency,
                                        const PldOptions& options) {
  if (absl::Status s = ValidateSpec(spec); !s.ok()) return s;
  absl::StatusOr<PrivacyLossModel> model =
      PrivacyLossModel::Create(spec, adjacency);
  if (!model.ok()) return model.status();
  const ComposeOptions compose{options.tail_mass_bound, options.max_length};
  PldPair pair;
  for (Rounding mode : {Rounding::kPessimistic, Rounding::kOptimistic}) {
    absl::StatusOr<DiscretePld> single =
        DiscretizePld(*model, Hypothesis::kH1, options.grid_spacing,
                      options.tail_mass_bound, mode);
    if (!single.ok()) return single.status();
    absl::StatusOr<DiscretePld> composed =
        ComposePld(*single, spec.steps, compose);
    if (!composed.ok()) return composed.status();
    (mode == Rounding::kPessimistic ? pair.pessimistic : pair.optimistic) =
        *std::move(composed);
  }
  return pair;
}

ReRoBound GammaPldBracket(const PldPair& pair, double kappa) {
  const double lo = GammaFromPld(pair.optimistic, kappa);
  const double hi = std::max(lo, GammaFromPld(pair.pessimistic, kappa));
  ReRoBound bound = PointBound(kappa, 0.5 * (lo + hi), Engine::kPld);
  bound.gamma_lower = lo;
  bound.gamma_upper = hi;
  bound.error = hi - lo;
  return bound;
}

absl::StatusOr<ReRoBound> GammaPldBracket(const MechanismSpec& spec,
                                          double kappa,
                                          const PldOptions& options) {
  if (absl::Status s = CheckPrior(kappa); !s.ok()) return s;
  absl::StatusOr<PldPair> pair =
      ComposedPldPair(spec, Adjacency::kAddOne, options);
  if (!pair.ok()) return pair.status();
  return GammaPldBracket(*pair, kappa);
}

}  // namespace rero
