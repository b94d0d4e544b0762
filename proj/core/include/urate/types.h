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

#ifndef URATE_TYPES_H_
#define URATE_TYPES_H_

#include <cstdint>
#include <string>

namespace urate {

// Instances are natural numbers.
using Instance = std::uint64_t;
using Bit = std::uint8_t;
using HypothesisId = std::uint64_t;

// Closed interval [lo, hi] used wherever omitted tail mass is unresolved.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval Point(double v) { return {v, v}; }
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool Contains(double v) const { return lo <= v && v <= hi; }
};

}  // namespace urate

#endif  // URATE_TYPES_H_
