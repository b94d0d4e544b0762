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

#ifndef URATE_CONCEPT_CLASS_H_
#define URATE_CONCEPT_CLASS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "urate/types.h"

namespace urate {

// Id used by hypotheses that do not belong to an enumerated class, such as
// an external center.
inline constexpr HypothesisId kExternalId =
    std::numeric_limits<HypothesisId>::max();

class Hypothesis {
 public:
  using Predicate = std::function<Bit(Instance)>;

  Hypothesis(HypothesisId id, std::string name, Predicate predicate)
      : id_(id), name_(std::move(name)), predicate_(std::move(predicate)) {}

  HypothesisId id() const { return id_; }
  const std::string& name() const { return name_; }
  Bit operator()(Instance x) const { return predicate_(x); }

 private:
  HypothesisId id_;
  std::string name_;
  Predicate predicate_;
};

Hypothesis ConstantHypothesis(Bit value);

enum class ClassKind {
  kFinite,
  kThresholds,
  kSingletonsAllOnes,
  kExample5,
  kPowersetUnion,
  kCustom,
};

std::string_view ClassKindName(ClassKind kind);
std::optional<ClassKind> ParseClassKind(std::string_view name);

struct ClassParams {
  // PowersetUnion: blocks X_1..X_max_block.
  int max_block = 0;
  // Finite and Custom: one row per hypothesis, one column per domain point.
  std::vector<std::vector<Bit>> table;
  // Domain points for the table columns; empty means 0..columns-1.
  std::vector<Instance> domain;
};

class ConceptClass {
 public:
  ClassKind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  // nullopt for infinite classes.
  std::optional<std::uint64_t> cardinality() const { return cardinality_; }
  // Instances outside this set are labeled identically by every member.
  const std::optional<std::vector<Instance>>& disagreement_support() const {
    return disagreement_support_;
  }

  // First k hypotheses; saturates at the cardinality of finite classes.
  std::vector<Hypothesis> Enumerate(std::size_t k) const;
  // The hypothesis at enumeration position index, if it exists.
  std::optional<Hypothesis> At(std::size_t index) const;

 private:
  friend ConceptClass MakeBuiltin(ClassKind kind, const ClassParams& params);

  ClassKind kind_ = ClassKind::kFinite;
  std::string description_;
  std::optional<std::uint64_t> cardinality_;
  std::optional<std::vector<Instance>> disagreement_support_;
  std::function<Hypothesis(std::size_t)> generator_;
};

// Throws Error(kInvalidParams) on unusable parameters.
ConceptClass MakeBuiltin(ClassKind kind, const ClassParams& params = {});

// First point of block X_k, k >= 1: k(k-1)/2.
inline Instance PowersetBlockOffset(int k) {
  return static_cast<Instance>(k) * static_cast<Instance>(k - 1) / 2;
}

struct LabeledExample {
  Instance x = 0;
  Bit y = 0;
};

struct Provenance {
  std::uint64_t seed = 0;
  std::string distribution_id;
};

struct Dataset {
  std::vector<LabeledExample> examples;
  std::optional<Provenance> provenance;

  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }
};

inline Bit Evaluate(const Hypothesis& h, Instance x) { return h(x); }

std::vector<Hypothesis> VersionSpace(const std::vector<Hypothesis>& prefix,
                                     const Dataset& data);

struct Behavior {
  std::vector<Bit> pattern;
  std::vector<HypothesisId> ids;
};

// Patterns appear in order of their first realizing hypothesis.
std::vector<Behavior> DistinctBehaviors(const std::vector<Hypothesis>& prefix,
                                        const std::vector<Instance>& points);

std::vector<Instance> DisagreementRegion(
    const std::vector<Hypothesis>& prefix,
    const std::vector<Instance>& candidates);

}  // namespace urate

#endif  // URATE_CONCEPT_CLASS_H_
