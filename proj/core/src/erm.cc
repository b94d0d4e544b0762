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

#include "urate/erm.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "urate/error.h"

namespace urate {
namespace {

constexpr double kTieTolerance = 1e-12;

// Index of the best-scoring candidate; near-ties go to the lowest id.
std::size_t WorstOf(const std::vector<std::size_t>& candidates,
                    const std::vector<double>& score,
                    const std::vector<Hypothesis>& prefix) {
  std::size_t best = candidates.front();
  for (std::size_t i : candidates) {
    const double d = score[i] - score[best];
    if (d > kTieTolerance ||
        (std::fabs(d) <= kTieTolerance && prefix[i].id() < prefix[best].id())) {
      best = i;
    }
  }
  return best;
}

std::size_t FirstOf(const std::vector<std::size_t>& candidates,
                    const std::vector<Hypothesis>& prefix) {
  std::size_t best = candidates.front();
  for (std::size_t i : candidates) {
    if (prefix[i].id() < prefix[best].id()) best = i;
  }
  return best;
}

}  // namespace

std::string_view TiePolicyName(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::kFirstIndex:
      return "first";
    case TiePolicy::kSeededRandom:
      return "random";
    case TiePolicy::kAdversarialWorst:
      return "adversarial";
  }
  return "?";
}

std::optional<TiePolicy> ParseTiePolicy(std::string_view name) {
  for (TiePolicy p : {TiePolicy::kFirstIndex, TiePolicy::kSeededRandom,
                      TiePolicy::kAdversarialWorst}) {
    if (TiePolicyName(p) == name) return p;
  }
  return std::nullopt;
}

Rational EmpiricalError(const Hypothesis& h, const Dataset& data) {
  if (data.empty()) throw Error(ErrorCode::kEmptyDataset, "empty dataset");
  Rational r{0, static_cast<std::int64_t>(data.size())};
  for (const LabeledExample& e : data.examples) r.num += h(e.x) != e.y;
  return r;
}

ErmOutcome ErmSelect(const std::vector<Hypothesis>& prefix, const Dataset& data,
                     TiePolicy policy,
                     const std::optional<LabeledDistribution>& dist,
                     std::uint64_t seed, std::size_t truncation) {
  if (prefix.empty()) throw Error(ErrorCode::kInvalidParams, "empty prefix");
  if (policy == TiePolicy::kAdversarialWorst && !dist) {
    throw Error(ErrorCode::kMissingDist,
                "adversarial tie-breaking needs the distribution");
  }
  std::vector<Rational> emp;
  emp.reserve(prefix.size());
  for (const Hypothesis& h : prefix) emp.push_back(EmpiricalError(h, data));
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const Rational& r : emp) best = std::min(best, r.num);
  std::vector<std::size_t> mins;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (emp[i].num == best) mins.push_back(i);
  }
  std::size_t pick = FirstOf(mins, prefix);
  if (policy == TiePolicy::kSeededRandom) {
    std::mt19937_64 rng(seed);
    pick = mins[std::uniform_int_distribution<std::size_t>(0, mins.size() - 1)(rng)];
  } else if (policy == TiePolicy::kAdversarialWorst) {
    std::vector<double> mid(prefix.size(), 0.0);
    for (std::size_t i : mins) {
      const Interval e = TrueError(prefix[i], *dist, truncation);
      if (e.width() > kAdversarialSlack) {
        throw Error(ErrorCode::kIntervalTooWide,
                    "true error of " + prefix[i].name() + " has width " +
                        std::to_string(e.width()));
      }
      mid[i] = e.mid();
    }
    pick = WorstOf(mins, mid, prefix);
  }
  ErmOutcome out;
  out.chosen = prefix[pick].id();
  for (std::size_t i : mins) out.minimizers.push_back(prefix[i].id());
  out.empirical_error = emp[pick];
  out.policy = policy;
  return out;
}

ErmEngine::ErmEngine(std::vector<Hypothesis> prefix, LabeledDistribution dist,
                     std::size_t truncation,
                     std::function<double(const Hypothesis&)> excess)
    : prefix_(std::move(prefix)), dist_(std::move(dist)) {
  if (prefix_.empty()) throw Error(ErrorCode::kInvalidParams, "empty prefix");
  const std::vector<Atom> atoms = dist_.Atoms(truncation);
  labels_.resize(atoms.size(), std::vector<Bit>(prefix_.size()));
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t h = 0; h < prefix_.size(); ++h) {
      labels_[a][h] = prefix_[h](atoms[a].x);
    }
  }
  const PrefixProfile profile = ProfilePrefix(prefix_, dist_, truncation);
  error_mid_.resize(prefix_.size());
  excess_.resize(prefix_.size());
  for (std::size_t h = 0; h < prefix_.size(); ++h) {
    error_mid_[h] = profile.errors[h].mid();
    max_width_ = std::max(max_width_, profile.errors[h].width());
    excess_[h] = excess ? excess(prefix_[h])
                        : std::max(0.0, profile.errors[h].mid() - profile.inf.mid());
  }
}

Bit ErmEngine::Label(std::size_t h, const CountCell& cell) const {
  if (cell.atom < labels_.size()) return labels_[cell.atom][h];
  return prefix_[h](cell.x);
}

void ErmEngine::Minimizers(const std::vector<CountCell>& cells,
                           std::vector<std::size_t>& out) const {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const std::size_t start = out.size();
  for (std::size_t h = 0; h < prefix_.size(); ++h) {
    std::int64_t m = 0;
    for (const CountCell& c : cells) {
      m += Label(h, c) ? c.n0 : c.n1;
      if (m > best) break;
    }
    if (m < best) {
      best = m;
      out.resize(start);
    }
    if (m == best) out.push_back(h);
  }
}

std::size_t ErmEngine::Select(const std::vector<CountCell>& cells,
                              TiePolicy policy, std::mt19937_64& rng) const {
  std::vector<std::size_t> mins;
  Minimizers(cells, mins);
  switch (policy) {
    case TiePolicy::kFirstIndex:
      return FirstOf(mins, prefix_);
    case TiePolicy::kSeededRandom:
      return mins[std::uniform_int_distribution<std::size_t>(0, mins.size() - 1)(rng)];
    case TiePolicy::kAdversarialWorst:
      if (max_width_ > kAdversarialSlack) {
        throw Error(ErrorCode::kIntervalTooWide,
                    "true-error intervals up to width " +
                        std::to_string(max_width_));
      }
      return WorstOf(mins, excess_, prefix_);
  }
  return mins.front();
}

double BruteForceExpectedExcess(const std::vector<Hypothesis>& prefix,
                                const LabeledDistribution& dist,
                                std::int64_t n, TiePolicy policy) {
  if (n < 1) throw Error(ErrorCode::kInvalidParams, "n must be >= 1");
  const auto s = dist.support_size();
  if (!s) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "exact expectation needs a fully tabulated distribution");
  }
  const int cells = static_cast<int>(2 * *s);
  const double log_count = std::lgamma(n + cells) - std::lgamma(n + 1.0) -
                           std::lgamma(static_cast<double>(cells));
  if (log_count > std::log(1e7)) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "more than 1e7 count vectors to enumerate");
  }
  const ErmEngine engine(prefix, dist, *s);
  std::vector<double> log_q(cells);
  for (std::size_t a = 0; a < *s; ++a) {
    const Atom atom = dist.AtomAt(a);
    const double q0 = atom.mass * (1.0 - atom.eta);
    const double q1 = atom.mass * atom.eta;
    log_q[2 * a] = q0 > 0.0 ? std::log(q0) : -INFINITY;
    log_q[2 * a + 1] = q1 > 0.0 ? std::log(q1) : -INFINITY;
  }
  std::vector<std::int64_t> count(cells, 0);
  std::vector<CountCell> sample;
  std::vector<std::size_t> mins;
  std::mt19937_64 unused;
  double total = 0.0;
  const double log_nfact = std::lgamma(n + 1.0);
  // Recursive enumeration of compositions of n into `cells` parts.
  auto visit = [&](auto&& self, int c, std::int64_t left, double log_p) -> void {
    if (c == cells - 1) {
      if (left > 0 && std::isinf(log_q[c])) return;
      count[c] = left;
      const double lp = log_p + (left > 0 ? left * log_q[c] : 0.0) -
                        std::lgamma(left + 1.0);
      sample.clear();
      for (std::size_t a = 0; a < *s; ++a) {
        if (count[2 * a] + count[2 * a + 1] > 0) {
          sample.push_back({a, dist.AtomAt(a).x, count[2 * a], count[2 * a + 1]});
        }
      }
      double e = 0.0;
      if (policy == TiePolicy::kSeededRandom) {
        mins.clear();
        engine.Minimizers(sample, mins);
        for (std::size_t i : mins) e += engine.excess(i);
        e /= static_cast<double>(mins.size());
      } else {
        e = engine.excess(engine.Select(sample, policy, unused));
      }
      total += std::exp(log_nfact + lp) * e;
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      if (k > 0 && std::isinf(log_q[c])) break;
      count[c] = k;
      self(self, c + 1, left - k,
           log_p + (k > 0 ? k * log_q[c] : 0.0) - std::lgamma(k + 1.0));
    }
  };
  visit(visit, 0, n, 0.0);
  return total;
}

}  // namespace urate
