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

#ifndef URATE_CURVES_H_
#define URATE_CURVES_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "urate/concept_class.h"
#include "urate/construction.h"
#include "urate/distribution.h"
#include "urate/erm.h"

namespace urate {

struct LearningCurve {
  std::vector<std::int64_t> grid;
  std::vector<double> means;
  std::vector<double> stderrs;
  std::vector<std::int64_t> replications;
  std::string scenario_id;
  TiePolicy policy = TiePolicy::kFirstIndex;
  std::size_t prefix_len = 0;
  std::uint64_t seed = 0;
  // Largest true-error interval width behind the excess values.
  double excess_width = 0.0;
  // Filled when an event predicate is supplied.
  std::vector<double> event_freq;
  std::vector<double> event_stderr;
};

struct CurveOptions {
  std::size_t truncation = kDefaultTruncation;
  // Replaces er(h) - inf (constructions pass their closed form).
  std::function<double(const Hypothesis&)> excess;
  // Event indicator per (grid index, sample counts).
  std::function<bool(std::size_t, const std::vector<CountCell>&)> event;
  std::string scenario_id;
};

// reps >= 30 independent trials per grid point: sample counts, run ERM
// on the first prefix_len hypotheses, record the exact excess. Seeds are
// DeriveSeed(seed, grid index, replication); sums run in replication order,
// so results do not depend on the worker count.
LearningCurve EstimateCurve(const ConceptClass& cls,
                            const LabeledDistribution& dist, TiePolicy policy,
                            const std::vector<std::int64_t>& grid, int reps,
                            std::uint64_t seed, std::size_t prefix_len,
                            const CurveOptions& options = {});

// Geometric grid from lo to hi, per_decade points per factor of 10,
// rounded to distinct integers.
std::vector<std::int64_t> GeometricGrid(std::int64_t lo, std::int64_t hi,
                                        int per_decade = 8);

enum class Regime { kExponential, kSuperRoot, kArbitrarilySlow, kInconclusive };

std::string RegimeName(Regime r);

struct RateThresholds {
  double min_r2 = 0.9;
  double max_power_slope = -0.55;
  double min_decrease_factor = 1.5;
  // Standard errors of slack allowed in the non-decreasing test.
  double noise_z = 3.0;
};

struct RateVerdict {
  Regime regime = Regime::kInconclusive;
  double exp_slope = 0.0;
  double exp_r2 = 0.0;
  double power_slope = 0.0;
  double power_r2 = 0.0;
  // E(n) sqrt(n) per grid point and first/last ratio.
  std::vector<double> normalized;
  double decrease_factor = 0.0;
  RateThresholds thresholds;
  std::string note;
};

// Throws kInsufficientGrid with fewer than 6 points or less than a decade.
RateVerdict ClassifyRate(const LearningCurve& curve,
                         const RateThresholds& thresholds = {});

struct CheckpointRow {
  int t = 0;
  std::int64_t n = 0;
  double observed_mean = 0.0;
  double observed_stderr = 0.0;
  double predicted = 0.0;
  bool passed = false;
  // Eluder constructions only.
  bool has_event = false;
  double event_freq = 0.0;
  double event_stderr = 0.0;
  double event_bound = 0.0;
  bool event_passed = true;
};

// Pass iff mean + 3 stderr >= predicted (and likewise for the event).
// Throws kGridMismatch if a checkpoint n is missing from the grid.
std::vector<CheckpointRow> CheckpointCompare(
    const LearningCurve& curve, const AdversarialConstruction& construction);

// Largest checkpoint n that fits in int64 arithmetic.
inline constexpr double kMaxSimulatedN = 9.0e15;

// Runs the construction's checkpoints with AdversarialWorst over the first
// prefix_len hypotheses (at least RequiredPrefix()). Checkpoints with
// n above max_n are skipped and listed in `skipped`.
struct CheckpointRun {
  LearningCurve curve;
  std::vector<CheckpointRow> rows;
  std::vector<int> skipped;
};

CheckpointRun SimulateCheckpoints(const ConceptClass& cls,
                                  const AdversarialConstruction& construction,
                                  int reps, std::uint64_t seed,
                                  std::size_t prefix_len,
                                  double max_n = kMaxSimulatedN);

// Header n,mean_excess,stderr,replications,scenario_id.
std::string CurveToCsv(const LearningCurve& curve);

}  // namespace urate

#endif  // URATE_CURVES_H_
