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

#ifndef URATE_RATE_H_
#define URATE_RATE_H_

#include <string>

#include "urate/extended_real.h"

namespace urate {

enum class RateKind { kInverseLog, kPower, kInverseLogLog };

// Target rate R(n) from a small registry:
//   inverse_log     R(n) = 1 / ln(n + e)
//   power(a)        R(n) = n^-a, a > 0
//   inverse_loglog  R(n) = 1 / ln(e + ln(n + e))
// All three are strictly decreasing to 0 with R(1) <= 1.
class RateFunction {
 public:
  static RateFunction InverseLog();
  static RateFunction Power(double alpha);
  static RateFunction InverseLogLog();
  // Accepts "inverse_log", "inverse_loglog", "power" (with alpha) and the
  // Name() form "power(a)".
  static RateFunction FromName(const std::string& name, double alpha = 0.0);

  RateKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::string Name() const;

  double operator()(double n) const;
  ExtendedReal At(const ExtendedReal& n) const;

  // Smallest integer n > lower with R(n) <= target. Exact below 2^53;
  // above that the continuous solution is returned (integrality is below
  // the representation's resolution there).
  ExtendedReal LeastArgAtMost(const ExtendedReal& target,
                              const ExtendedReal& lower) const;

 private:
  RateFunction(RateKind kind, double alpha) : kind_(kind), alpha_(alpha) {}
  ExtendedReal Inverse(const ExtendedReal& target) const;

  RateKind kind_;
  double alpha_;
};

}  // namespace urate

#endif  // URATE_RATE_H_
