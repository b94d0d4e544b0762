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

#ifndef URATE_DISTRIBUTION_H_
#define URATE_DISTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "urate/concept_class.h"
#include "urate/types.h"

namespace urate {

struct Atom {
  Instance x = 0;
  double mass = 0.0;
  // P(Y = 1 | X = x).
  double eta = 0.0;
};

// Discrete distribution on N x {0,1}: a marginal with enumerable support
// plus eta(x). Immutable; copies share state.
class LabeledDistribution {
 public:
  using ErrorMap = std::function<std::optional<double>(const Hypothesis&)>;

  // Finite support. Atoms are sorted by x; masses must sum to 1.
  static LabeledDistribution Tabulated(std::string id, std::vector<Atom> atoms);
  // Support N with atom k at x = k. tail(k) = P(X >= k) when known in
  // closed form; pass an empty function otherwise.
  static LabeledDistribution Countable(std::string id,
                                       std::function<double(Instance)> mass,
                                       std::function<double(Instance)> eta,
                                       std::function<double(Instance)> tail);

  const std::string& id() const;
  bool tabulated() const;
  // Number of atoms for tabulated supports.
  std::optional<std::size_t> support_size() const;
  bool has_closed_form_tail() const;

  // k-th support atom in increasing x.
  Atom AtomAt(std::size_t k) const;
  // First min(truncation, support) atoms.
  std::vector<Atom> Atoms(std::size_t truncation) const;
  // Certified mass of atoms with index >= k. Falls back to one minus the
  // summed prefix when there is no closed form.
  double TailMass(std::size_t k) const;
  double Mass(Instance x) const;
  // eta outside the support is reported as 1/2.
  double Eta(Instance x) const;

  LabeledDistribution WithClosedForms(ErrorMap errors,
                                      std::optional<double> inf_error) const;
  std::optional<double> ClosedFormError(const Hypothesis& h) const;
  std::optional<double> closed_form_inf() const;

 private:
  struct State;
  explicit LabeledDistribution(std::shared_ptr<const State> state)
      : state_(std::move(state)) {}
  std::shared_ptr<const State> state_;
};

inline constexpr std::size_t kDefaultTruncation = 64;

// Built-in fixtures.
LabeledDistribution PointMass(Instance x, double eta);
// P(X = x) = 2^-(x+1).
LabeledDistribution GeometricDistribution(std::function<double(Instance)> eta,
                                          std::string id = "geometric");
// The distribution of the class Example5: P(0) = 1/2, P(i) = 2^-(i+1) for
// i >= 1 with eta(i) = 1/2 - eps. eta(0) defaults to P(Y=1 | X >= 1),
// which makes h*_1 and h*_2 both optimal with error 1/2.
LabeledDistribution Example5Distribution(double eps = 0.25,
                                         std::optional<double> eta0 = {});
// Two points of mass 1/2 with eta = (0.9, 0.3), paired with
// FiniteFixtureClass(): errors 0.2, 0.4, 0.6, so the gap is 0.2.
LabeledDistribution FiniteFixtureDistribution();
ConceptClass FiniteFixtureClass();
// Six points of mass 1/6, eta = 0.2 below 3 and 0.8 from 3 on; the best
// threshold is h_3.
LabeledDistribution ThresholdsBenignDistribution();

Dataset Sample(const LabeledDistribution& dist, std::size_t n,
               std::uint64_t seed);

struct CountCell {
  std::size_t atom = 0;  // support index
  Instance x = 0;
  std::int64_t n0 = 0;
  std::int64_t n1 = 0;
};

// Sufficient statistic of an i.i.d. sample of size n: multinomial counts
// per (x, y) cell, drawn by sequential conditional binomials. Same law as
// Sample() but O(support) instead of O(n). Cells with no draws are omitted.
std::vector<CountCell> SampleCounts(const LabeledDistribution& dist,
                                    std::int64_t n, std::mt19937_64& rng);

Interval TrueError(const Hypothesis& h, const LabeledDistribution& dist,
                   std::size_t truncation = kDefaultTruncation);
Interval DisagreementMass(const Hypothesis& h, const Hypothesis& g,
                          const LabeledDistribution& dist,
                          std::size_t truncation = kDefaultTruncation);
Hypothesis BayesClassifier(const LabeledDistribution& dist);

// Labels and errors of a class prefix on the truncated support.
struct PrefixProfile {
  std::vector<Hypothesis> prefix;
  std::vector<Atom> atoms;
  double tail = 0.0;
  std::vector<std::vector<Bit>> labels;  // [hypothesis][atom]
  std::vector<Interval> errors;
  Interval inf;
  std::vector<Interval> excess;

  Interval Disagreement(std::size_t i, std::size_t j) const;
};

PrefixProfile ProfilePrefix(std::vector<Hypothesis> prefix,
                            const LabeledDistribution& dist,
                            std::size_t truncation = kDefaultTruncation);

// Interval for inf over the class of the true error, from the first
// `depth` hypotheses (closed form when the distribution provides one).
Interval ExcessInf(const ConceptClass& cls, const LabeledDistribution& dist,
                   std::size_t depth,
                   std::size_t truncation = kDefaultTruncation);

struct CenteringReport {
  bool error_match = false;
  Interval center_error;
  Interval inf_error;
  // min over the prefix of P(h != h*), midpoint, at the given depth.
  double disagreement_inf_estimate = 1.0;
  // Running value after each enumerated hypothesis.
  std::vector<double> disagreement_trace;
};

CenteringReport IsCentered(const LabeledDistribution& dist,
                           const ConceptClass& cls, const Hypothesis& h_star,
                           std::size_t depth, double tol = 1e-12,
                           std::size_t truncation = kDefaultTruncation);

// inf over enumerated h with positive excess of the excess; 1 if there is
// no such h at this depth.
double Condition1Gap(const ConceptClass& cls, const LabeledDistribution& dist,
                     std::size_t depth,
                     std::size_t truncation = kDefaultTruncation);

// Excess values closer than this are treated as ties.
inline constexpr double kExcessTolerance = 1e-12;

struct BallReport {
  std::vector<HypothesisId> ids;
  // Intervals straddling 0 or eps.
  std::vector<HypothesisId> borderline;
};

BallReport EpsilonBall(const ConceptClass& cls, const LabeledDistribution& dist,
                       double eps, std::size_t depth,
                       std::size_t truncation = kDefaultTruncation);

struct SigmaReport {
  double value = 0.0;
  // H(eps; P), zero-excess members included.
  std::vector<HypothesisId> ball;
  std::vector<double> tau_grid;
  // sup over the ball of the inner infimum, per tau.
  std::vector<double> per_tau;
  bool empty_tau_ball = false;
  // per_tau is non-decreasing as tau shrinks.
  bool monotone = true;
  std::string note;
};

// tau_j = eps * 2^-j, j = 0..10.
std::vector<double> DefaultTauGrid(double eps);

SigmaReport SigmaSqEps(const PrefixProfile& profile, double eps,
                       const std::vector<double>& tau_grid);
SigmaReport SigmaSqEps(const ConceptClass& cls, const LabeledDistribution& dist,
                       double eps, std::size_t depth,
                       const std::vector<double>& tau_grid,
                       std::size_t truncation = kDefaultTruncation);

}  // namespace urate

#endif  // URATE_DISTRIBUTION_H_
