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

#ifndef URATE_SEQUENCE_DESIGN_H_
#define URATE_SEQUENCE_DESIGN_H_

#include <string>
#include <vector>

#include "urate/extended_real.h"
#include "urate/rate.h"

namespace urate {

enum class DesignMode { kEluder, kVcEluder };

std::string DesignModeName(DesignMode mode);

struct ConditionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

bool AllPassed(const std::vector<ConditionResult>& conditions);

// Checkpoint sequences for the adversarial lower-bound distributions.
//
// n_1 = 1 and n_t is the least integer n > n_{t-1} with
//   R(n) <= min(R(n_{t-1}) / 2, 1 / (2 n_{t-1})).
// Eluder mode uses k_t = t; VC mode uses k_t = max(k_{t-1} + 1,
// ceil(n_t R(n_t))). p_{k_t} = C R(n_t) with C = min(1, 1 / sum_t R(n_t));
// indices off the checkpoints carry no mass. When sum_t R(n_t) < 1 the
// leftover mass sits on one extra index after the last checkpoint.
struct SequenceDesign {
  DesignMode mode = DesignMode::kEluder;
  std::string rate_name;
  int t_max = 0;
  std::vector<ExtendedReal> n;
  std::vector<ExtendedReal> k;
  std::vector<ExtendedReal> p;  // p_{k_t}
  // Eluder: eps_{k_t} = 1 / sqrt(8 n_t). VC: 1/4.
  std::vector<ExtendedReal> eps;
  // sum over indices beyond k_t, residual included.
  std::vector<ExtendedReal> tail;
  double c = 1.0;
  double residual = 0.0;
  double residual_eps = 0.0;
  std::vector<ConditionResult> conditions;

  bool passed() const { return AllPassed(conditions); }
};

// Throws kRateTooFast when n R(n) decreases somewhere on n = 2^j,
// j = 0..60, and kHorizonInfeasible for t_max outside [1, 64].
SequenceDesign DesignSequence(const RateFunction& rate, int t_max,
                              DesignMode mode);

// Re-checks every applicable condition from the stored numbers.
std::vector<ConditionResult> VerifyDesign(const SequenceDesign& design);

// Throws kRateTooFast if n R(n) is not non-decreasing on the probe grid.
void CheckRateNotTooFast(const RateFunction& rate);

}  // namespace urate

#endif  // URATE_SEQUENCE_DESIGN_H_
