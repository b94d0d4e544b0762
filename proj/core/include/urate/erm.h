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

#ifndef URATE_ERM_H_
#define URATE_ERM_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "urate/concept_class.h"
#include "urate/distribution.h"

namespace urate {

enum class TiePolicy { kFirstIndex, kSeededRandom, kAdversarialWorst };

// "first", "random", "adversarial".
std::string_view TiePolicyName(TiePolicy policy);
std::optional<TiePolicy> ParseTiePolicy(std::string_view name);

// Exact mistakes / n.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
};

Rational EmpiricalError(const Hypothesis& h, const Dataset& data);

struct ErmOutcome {
  HypothesisId chosen = 0;
  std::vector<HypothesisId> minimizers;
  Rational empirical_error;
  TiePolicy policy = TiePolicy::kFirstIndex;
};

// Largest true-error interval width AdversarialWorst accepts.
inline constexpr double kAdversarialSlack = 1e-9;

ErmOutcome ErmSelect(const std::vector<Hypothesis>& prefix, const Dataset& data,
                     TiePolicy policy,
                     const std::optional<LabeledDistribution>& dist,
                     std::uint64_t seed,
                     std::size_t truncation = kDefaultTruncation);

// ERM on multinomial count cells against a fixed prefix and distribution,
// with the label table and true errors computed once.
class ErmEngine {
 public:
  // excess(h) overrides er(h) - inf when given.
  ErmEngine(std::vector<Hypothesis> prefix, LabeledDistribution dist,
            std::size_t truncation = kDefaultTruncation,
            std::function<double(const Hypothesis&)> excess = {});

  const std::vector<Hypothesis>& prefix() const { return prefix_; }
  // Excess risk of prefix[i].
  double excess(std::size_t i) const { return excess_[i]; }
  double max_width() const { return max_width_; }

  // Index into prefix of the chosen hypothesis. rng is used by
  // kSeededRandom only.
  std::size_t Select(const std::vector<CountCell>& cells, TiePolicy policy,
                     std::mt19937_64& rng) const;
  // Appends the minimizing prefix indices.
  void Minimizers(const std::vector<CountCell>& cells,
                  std::vector<std::size_t>& out) const;

 private:
  Bit Label(std::size_t h, const CountCell& cell) const;

  std::vector<Hypothesis> prefix_;
  LabeledDistribution dist_;
  std::vector<std::vector<Bit>> labels_;  // [atom][hypothesis]
  std::vector<double> error_mid_;
  std::vector<double> excess_;
  double max_width_ = 0.0;
};

// Exact E[excess] over all samples of size n from a fully tabulated
// distribution, by multinomial aggregation over (x, y) cells. SeededRandom
// contributes the mean excess over the minimizers. Throws
// kInstanceTooLarge when C(n + 2s - 1, 2s - 1) > 1e7.
double BruteForceExpectedExcess(const std::vector<Hypothesis>& prefix,
                                const LabeledDistribution& dist,
                                std::int64_t n, TiePolicy policy);

}  // namespace urate

#endif  // URATE_ERM_H_
