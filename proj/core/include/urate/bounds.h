// Copyright 2026 The urate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef URATE_BOUNDS_H_
#define URATE_BOUNDS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "urate/concept_class.h"
#include "urate/distribution.h"

namespace urate {

// Two-sided Hoeffding tail for the mean of n variables in [a, b]:
// min(1, 2 exp(-2 n t^2 / (b - a)^2)).
double Hoeffding(double n, double t, double a, double b);

// Bounded-differences deviation c sqrt(n/2 ln(2/delta)).
double McDiarmidDeviation(double n, double c, double delta);

// Anti-concentration for Binomial(n, (1 - eps)/2):
// P(X >= n/2) >= (1/2)(1 - sqrt(1 - exp(-n eps^2 / (1 - eps^2)))).
double SludLower(double n, double eps);

// Two-sided deviation of an empirical error, sqrt(ln(4/delta) / (2n)).
double DeviationBound(double n, double delta);

// Expected-excess bound for a class of size m with gap eps0:
// min(1, 2 m exp(-n eps0^2 / 2)).
double FiniteClassBound(double m, double eps0, double n);

struct BoundParams {
  double n = 0.0;
  double delta = 0.05;
  double d = 1.0;
  double sigma_sq = 1.0;
  // Unspecified universal constants; echoed with every result.
  double c0 = 1.0;
  double c = 1.0;
  double c_tilde = 1.0;
};

// sqrt(sigma^2 (c0/n) L) + (c0/n) L with
// L = d log(min(1/sigma^2, n/d)) + log(1/delta). Requires n >= 2d.
double UniformBernstein(const BoundParams& params);

// c_tilde sqrt(s d/n log(min(1/s, n/d))) + c_tilde (d/n) log(min(1/s, n/d)).
double LocalizationB(double sigma_sq, double n, double d, double c_tilde);

struct LocalizedQuantities {
  double epsilon = 0.0;  // the radius everything below is evaluated at
  std::vector<HypothesisId> ball_ids;
  double sigma_sq_eps = 0.0;
  double b_eps = 0.0;
  double eps_n = 0.0;
  double phi_total = 0.0;
  double d = 0.0;
  int bisection_steps = 0;
  std::string note;
};

// eps_n = inf{eps : B_eps <= 2 eps} by bisection on [1e-9, 1], with
// sigma^2_eps from the first `depth` hypotheses. d <= 0 in params means
// "compute it" (cap 8, over the first 12 support points). Throws
// kBisectionFailure when the predicate does not change sign on the range.
LocalizedQuantities ComputeLocalizedQuantities(
    const ConceptClass& cls, const LabeledDistribution& dist,
    const BoundParams& params, std::size_t depth,
    std::size_t truncation = kDefaultTruncation);

}  // namespace urate

#endif  // URATE_BOUNDS_H_
