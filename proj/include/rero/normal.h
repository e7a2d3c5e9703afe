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

#ifndef RERO_NORMAL_H_
#define RERO_NORMAL_H_

namespace rero {

// Standard normal CDF.
double NormalCdf(double x);

// Standard normal survival function 1 - NormalCdf(x), accurate in the upper
// tail.
double NormalSf(double x);

// Standard normal density.
double NormalPdf(double x);

// log NormalCdf(x), finite far into the lower tail.
double LogNormalCdf(double x);

// Inverse of NormalCdf for q in (0, 1). Returns -inf / +inf at 0 / 1.
double NormalQuantile(double q);

// Returns x with NormalSf(x) = q. Preferred over NormalQuantile(1 - q) for
// small q since it never forms 1 - q.
double NormalUpperQuantile(double q);

// P(a < Z <= b) for a standard normal Z, computed without cancellation in
// either tail.
double NormalIntervalMass(double a, double b);

}  // namespace rero

#endif  // RERO_NORMAL_H_
