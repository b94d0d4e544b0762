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

#ifndef URATE_CONSTRUCTION_H_
#define URATE_CONSTRUCTION_H_

#include <string>
#include <vector>

#include "urate/combinatorics.h"
#include "urate/concept_class.h"
#include "urate/distribution.h"
#include "urate/rate.h"
#include "urate/sequence_design.h"

namespace urate {

enum class ConstructionKind { kEluderLower, kVcEluderLower };

std::string ConstructionKindName(ConstructionKind kind);

struct SupportPoint {
  Instance x = 0;
  Bit y = 0;  // center label
  double mass = 0.0;
  double eps = 0.0;  // P(Y = y | x) = 1/2 + eps
  // Sequence index for eluder constructions, block number for VC ones.
  std::size_t index = 0;
  // Unrounded mass and margin. The doubles above underflow to 0 once n_t
  // is a tower, while these stay positive.
  ExtendedReal exact_mass;
  ExtendedReal exact_eps;
};

struct Checkpoint {
  int t = 0;
  ExtendedReal n;
  ExtendedReal k;
  ExtendedReal tail;  // mass beyond index k_t
  // Eluder: p/(5 sqrt(8n)) (1 - tail)^n. VC: R(n)/36.
  double predicted_bound = 0.0;
  // Eluder: (1/10)(1 - tail)^n. VC: unused (0).
  double event_probability_bound = 0.0;
  // VC: (p/2)(1 - tail - p/k)^n, the sum before the final
  // simplification. Eluder: equals predicted_bound.
  double exact_form_bound = 0.0;
  // Eluder: x_{k_t}. VC: first point of block k_t.
  Instance point = 0;
  HypothesisId witness = 0;
};

struct AdversarialConstruction {
  ConstructionKind kind = ConstructionKind::kEluderLower;
  SequenceDesign design;
  LabeledDistribution dist;
  Hypothesis center;
  std::vector<SupportPoint> support;
  std::vector<Checkpoint> checkpoints;
  double inf_error = 0.0;  // er(center) = inf over the class
  std::vector<ConditionResult> verification;

  bool passed() const { return AllPassed(verification); }
  // Excess of h: sum over support points where h != y of 2 mass eps.
  double Excess(const Hypothesis& h) const;
  // Smallest class prefix that contains every witness hypothesis.
  std::size_t RequiredPrefix() const;
};

// Mass p_t and margin eps_t on x_t for t <= t_max. Requires
// t_max + 1 steps when the design leaves residual mass.
AdversarialConstruction BuildEluderAdversarial(const EluderSequence& seq,
                                               const RateFunction& rate,
                                               int t_max);

// Block k_t gets mass p_t spread uniformly, margin 1/4.
AdversarialConstruction BuildVcEluderAdversarial(const VcEluderSequence& seq,
                                                 const RateFunction& rate,
                                                 int t_max);

// Distribution-level checks (mass, margins, centering, Bayes = center on
// the support, monotone witness excess) against the class, appended to
// the design's own conditions.
std::vector<ConditionResult> VerifyConstruction(
    const AdversarialConstruction& c, const ConceptClass& cls,
    std::size_t depth);

}  // namespace urate

#endif  // URATE_CONSTRUCTION_H_
