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

#ifndef URATE_TOOLS_SCENARIO_H_
#define URATE_TOOLS_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "urate/combinatorics.h"
#include "urate/concept_class.h"
#include "urate/construction.h"
#include "urate/curves.h"
#include "urate/distribution.h"
#include "urate/erm.h"

namespace urate::cli {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Command-line values that override the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<std::string> grid;
  std::optional<std::string> policy;
  std::optional<std::size_t> prefix;
};

struct Scenario {
  Json config;
  ConceptClass cls;
  std::optional<Hypothesis> center;
  std::optional<LabeledDistribution> dist;
  std::optional<AdversarialConstruction> construction;
  // Sequence behind the construction, as written to dumps.
  Json sequence;
  TiePolicy policy = TiePolicy::kFirstIndex;
  std::size_t prefix = 64;
  std::vector<std::int64_t> grid;
  int reps = 1000;
  std::uint64_t seed = 1;
  SearchBudget budget;
};

ConceptClass ClassFromJson(const Json& node);
Hypothesis CenterFromJson(const Json& node, const ConceptClass& cls);
std::vector<std::int64_t> ParseGrid(const std::string& text);

// Resolves the class, center and distribution entries and validates the
// prefix against the construction.
Scenario LoadScenario(const Json& config, const Overrides& overrides);

Json EluderToJson(const EluderSequence& seq);
Json StarSetToJson(const StarSet& set);
Json VcEluderToJson(const VcEluderSequence& seq);
Json ConditionsToJson(const std::vector<ConditionResult>& conditions);
Json ConstructionToJson(const AdversarialConstruction& c, const Json& class_spec,
                        const Json& center_spec, const Json& sequence);
Json CurveToJson(const LearningCurve& curve);
Json VerdictToJson(const RateVerdict& verdict);
Json CheckpointsToJson(const std::vector<CheckpointRow>& rows,
                       const std::vector<int>& skipped);

// Rebuilds a construction from the sequence, rate and horizon stored in a
// dump and re-verifies it against the stored class.
struct Reload {
  AdversarialConstruction construction;
  std::vector<ConditionResult> verification;
  // Stored fields that differ from the rebuilt ones.
  std::vector<std::string> mismatches;
};
Reload ReloadConstruction(const Json& dump);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& text);

}  // namespace urate::cli

#endif  // URATE_TOOLS_SCENARIO_H_
