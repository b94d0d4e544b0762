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

#ifndef URATE_COMBINATORICS_H_
#define URATE_COMBINATORICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "urate/concept_class.h"
#include "urate/distribution.h"
#include "urate/types.h"

namespace urate {

// Searches look at the first max_prefix hypotheses of a class and at
// instances 0..max_instance-1. max_nodes caps backtracking searches.
struct SearchBudget {
  std::size_t max_prefix = 64;
  Instance max_instance = 64;
  std::size_t max_nodes = 2'000'000;

  std::string Describe() const;
};

using Pattern = std::vector<Bit>;

struct PatternWitness {
  Pattern pattern;
  HypothesisId witness = 0;
};

struct ShatterResult {
  bool shattered = false;
  // One witness per pattern when shattered, in binary-counting order.
  std::vector<PatternWitness> witnesses;
  // First unrealized pattern otherwise.
  std::optional<Pattern> missing;
};

// At most 63 points.
ShatterResult IsShattered(const std::vector<Hypothesis>& prefix,
                          const std::vector<Instance>& points);

struct VcResult {
  int value = 0;
  std::vector<Instance> certificate;
  bool reached_cap = false;
};

VcResult VcDimension(const std::vector<Hypothesis>& prefix,
                     const std::vector<Instance>& domain, int cap);

struct EluderStep {
  Instance x = 0;
  Bit y = 0;
  HypothesisId witness = 0;
};

struct EluderSequence {
  std::vector<EluderStep> steps;
  Hypothesis center;
};

struct StarSet {
  std::vector<Instance> points;
  Hypothesis center;
  std::vector<HypothesisId> witnesses;
};

struct VcEluderSequence {
  std::vector<std::vector<Instance>> blocks;
  Hypothesis center;
  // certificates[k][pattern index] for block k + 1.
  std::vector<std::vector<PatternWitness>> certificates;
};

// Greedy: instances ascending, lowest-index witness, no backtracking.
// nullopt means the greedy scan stalled inside the budget; it does not
// prove that no sequence exists.
std::optional<EluderSequence> FindEluder(const ConceptClass& cls,
                                         const Hypothesis& center,
                                         std::size_t target_len,
                                         const SearchBudget& budget = {});

// Backtracking over point sets in increasing order; complete within the
// budget unless max_nodes runs out.
std::optional<StarSet> FindStarSet(const ConceptClass& cls,
                                   const Hypothesis& center, std::size_t size,
                                   const SearchBudget& budget = {});

// Greedy per block: the lexicographically first unused k-set shattered by
// the version space of the earlier blocks labelled by the center.
std::optional<VcEluderSequence> FindVcEluder(const ConceptClass& cls,
                                             const Hypothesis& center,
                                             std::size_t k_max,
                                             const SearchBudget& budget = {});

// Builds an eluder sequence the constructive way: eps_1 = 1; pick the first
// enumerated h_j with 0 < P(h_j != center) < eps_j, take its lowest
// positive-mass disagreement point x_j, set eps_{j+1} = P(x_j).
// Throws kPreconditionUnmet when no hypothesis within depth qualifies.
EluderSequence ExtractEluderFromVanishingDistance(
    const ConceptClass& cls, const LabeledDistribution& dist,
    const Hypothesis& center, std::size_t target_len, std::size_t depth,
    std::size_t truncation = kDefaultTruncation);

// Pointwise re-checks. Each returns the list of violations (empty = sound).
std::vector<std::string> VerifyEluder(const EluderSequence& seq,
                                      const ConceptClass& cls);
std::vector<std::string> VerifyStarSet(const StarSet& set,
                                       const ConceptClass& cls);
std::vector<std::string> VerifyVcEluder(const VcEluderSequence& seq,
                                        const ConceptClass& cls);

}  // namespace urate

#endif  // URATE_COMBINATORICS_H_
