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

#include "urate/distribution.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "urate/error.h"

namespace urate {
namespace {

constexpr double kSlack = 1e-12;

struct NamedDist {
  std::string name;
  LabeledDistribution dist;
};

std::vector<NamedDist> Builtins() {
  return {{"example5", Example5Distribution()},
          {"finite_fixture", FiniteFixtureDistribution()},
          {"thresholds_benign", ThresholdsBenignDistribution()},
          {"geometric", GeometricDistribution([](Instance x) {
             return x % 3 == 0 ? 0.8 : 0.35;
           })},
          {"point_mass", PointMass(7, 0.3)}};
}

TEST(SampleTest, EmptyAndDeterministicCases) {
  EXPECT_TRUE(Sample(FiniteFixtureDistribution(), 0, 1).empty());
  const Dataset d = Sample(PointMass(7, 1.0), 3, 42);
  ASSERT_EQ(d.size(), 3u);
  for (const LabeledExample& e : d.examples) {
    EXPECT_EQ(e.x, 7u);
    EXPECT_EQ(e.y, 1);
  }
  ASSERT_TRUE(d.provenance);
  EXPECT_EQ(d.provenance->seed, 42u);
}

TEST(SampleTest, GeometricFrequencyOfZero) {
  const int n = 100000;
  const Dataset d =
      Sample(GeometricDistribution([](Instance) { return 0.5; }), n, 2024);
  const double freq =
      std::count_if(d.examples.begin(), d.examples.end(),
                    [](const LabeledExample& e) { return e.x == 0; }) /
      static_cast<double>(n);
  EXPECT_NEAR(freq, 0.5, 3.0 * std::sqrt(0.25 / n));
}

TEST(SampleTest, SameSeedSameSample) {
  const Dataset a = Sample(Example5Distribution(), 500, 9);
  const Dataset b = Sample(Example5Distribution(), 500, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.examples[i].x, b.examples[i].x);
    EXPECT_EQ(a.examples[i].y, b.examples[i].y);
  }
}

TEST(SamplePropertyTest, MarginalFrequenciesWithinFourSigma) {
  const int n = 100000;
  for (const NamedDist& nd : Builtins()) {
    SCOPED_TRACE(nd.name);
    const Dataset d = Sample(nd.dist, n, 77);
    std::map<Instance, int> counts;
    std::map<Instance, int> ones;
    for (const LabeledExample& e : d.examples) {
      ++counts[e.x];
      ones[e.x] += e.y;
    }
    std::vector<Atom> atoms = nd.dist.Atoms(64);
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.mass > b.mass; });
    atoms.resize(std::min<std::size_t>(atoms.size(), 10));
    for (const Atom& a : atoms) {
      const double sd = std::sqrt(a.mass * (1.0 - a.mass) / n);
      EXPECT_NEAR(counts[a.x] / static_cast<double>(n), a.mass,
                  4.0 * sd + 1e-12)
          << "x = " << a.x;
      if (counts[a.x] > 1000) {
        const double c = counts[a.x];
        EXPECT_NEAR(ones[a.x] / c, a.eta, 4.0 * std::sqrt(0.25 / c));
      }
    }
  }
}

TEST(SamplePropertyTest, SampleCountsMatchMassAndEta) {
  const int reps = 2000;
  const std::int64_t n = 500;
  for (const NamedDist& nd : Builtins()) {
    SCOPED_TRACE(nd.name);
    std::mt19937_64 rng(5);
    std::map<Instance, double> total;
    std::map<Instance, double> ones;
    for (int r = 0; r < reps; ++r) {
      std::int64_t sum = 0;
      for (const CountCell& c : SampleCounts(nd.dist, n, rng)) {
        total[c.x] += c.n0 + c.n1;
        ones[c.x] += c.n1;
        sum += c.n0 + c.n1;
      }
      ASSERT_EQ(sum, n);
    }
    const double draws = static_cast<double>(reps) * n;
    for (const Atom& a : nd.dist.Atoms(8)) {
      const double sd = std::sqrt(a.mass * (1.0 - a.mass) / draws);
      EXPECT_NEAR(total[a.x] / draws, a.mass, 4.0 * sd + 1e-12);
      if (total[a.x] > 1000) {
        EXPECT_NEAR(ones[a.x] / total[a.x], a.eta,
                    4.0 * std::sqrt(0.25 / total[a.x]));
      }
    }
  }
}

TEST(TrueErrorTest, PointMassBayesError) {
  const LabeledDistribution d = PointMass(4, 0.3);
  const Interval e = TrueError(BayesClassifier(d), d);
  EXPECT_NEAR(e.lo, 0.3, kSlack);
  EXPECT_NEAR(e.hi, 0.3, kSlack);
}

TEST(TrueErrorTest, FiniteSupportIsExact) {
  const ConceptClass c = FiniteFixtureClass();
  const LabeledDistribution d = FiniteFixtureDistribution();
  const double expected[] = {0.2, 0.4, 0.6};
  for (std::size_t i = 0; i < 3; ++i) {
    const Interval e = TrueError(*c.At(i), d);
    EXPECT_EQ(e.width(), 0.0);
    EXPECT_NEAR(e.lo, expected[i], kSlack);
  }
}

TEST(TrueErrorTest, CountableSupportBracketsTheTruth) {
  const LabeledDistribution d =
      GeometricDistribution([](Instance x) { return x % 2 ? 0.9 : 0.2; });
  const Hypothesis ones = ConstantHypothesis(1);
  // er(all-1's) = sum_x 2^{-x-1} (1 - eta(x)) = 0.8 * 2/3 + 0.1 * 1/3.
  const double truth = 0.8 * 2.0 / 3.0 + 0.1 / 3.0;
  for (std::size_t trunc : {4, 16, 64}) {
    const Interval e = TrueError(ones, d, trunc);
    EXPECT_LE(e.lo, truth + kSlack);
    EXPECT_GE(e.hi, truth - kSlack);
    EXPECT_LE(e.width(), std::ldexp(1.0, -static_cast<int>(trunc)) + kSlack);
  }
}

TEST(TrueErrorTest, Example5ClosedForms) {
  const ConceptClass c = MakeBuiltin(ClassKind::kExample5);
  const LabeledDistribution d = Example5Distribution();
  EXPECT_NEAR(TrueError(*c.At(0), d).mid(), 0.5, kSlack);
  EXPECT_NEAR(TrueError(*c.At(1), d).mid(), 0.5, kSlack);
  for (std::size_t i = 1; i < 10; ++i) {
    // er(h_i) - 1/2 = 2 P(x = i) eps_i with eps_i = 1/4.
    EXPECT_NEAR(TrueError(*c.At(i + 1), d).mid() - 0.5,
                2.0 * d.Mass(i) * 0.25, kSlack);
  }
  ASSERT_TRUE(d.closed_form_inf());
  EXPECT_EQ(*d.closed_form_inf(), 0.5);
}

TEST(BayesTest, ConventionsAndThresholds) {
  const Hypothesis b =
      BayesClassifier(GeometricDistribution([](Instance) { return 0.75; }));
  for (Instance x = 0; x < 50; ++x) EXPECT_EQ(b(x), 1);
  const Hypothesis half =
      BayesClassifier(GeometricDistribution([](Instance) { return 0.5; }));
  for (Instance x = 0; x < 50; ++x) EXPECT_EQ(half(x), 1);
  const Hypothesis t = BayesClassifier(ThresholdsBenignDistribution());
  for (Instance x = 0; x < 6; ++x) EXPECT_EQ(t(x), x >= 3 ? 1 : 0);
}

TEST(BayesPropertyTest, BayesMinimizesErrorOverEnumeratedClass) {
  ClassParams pu;
  pu.max_block = 6;
  const std::vector<std::pair<ConceptClass, LabeledDistribution>> cases = {
      {MakeBuiltin(ClassKind::kExample5), Example5Distribution()},
      {FiniteFixtureClass(), FiniteFixtureDistribution()},
      {MakeBuiltin(ClassKind::kThresholds), ThresholdsBenignDistribution()},
      {MakeBuiltin(ClassKind::kSingletonsAllOnes), Builtins()[3].dist},
      {MakeBuiltin(ClassKind::kPowersetUnion, pu), PointMass(7, 0.3)},
  };
  for (const auto& [cls, dist] : cases) {
    const double bayes = TrueError(BayesClassifier(dist), dist).hi;
    for (const Hypothesis& h : cls.Enumerate(64)) {
      EXPECT_LE(bayes, TrueError(h, dist).lo + 1e-9) << h.name();
    }
  }
}

TEST(ExcessInfTest, FiniteAndExample5) {
  const Interval f = ExcessInf(FiniteFixtureClass(), FiniteFixtureDistribution(), 3);
  EXPECT_NEAR(f.mid(), 0.2, kSlack);
  const Interval e =
      ExcessInf(MakeBuiltin(ClassKind::kExample5), Example5Distribution(), 64);
  EXPECT_NEAR(e.mid(), 0.5, kSlack);
}

TEST(CenteringTest, Example5IsCenteredAtBothTargets) {
  const ConceptClass c = MakeBuiltin(ClassKind::kExample5);
  const LabeledDistribution d = Example5Distribution();
  for (std::size_t target : {0, 1}) {
    const CenteringReport r = IsCentered(d, c, *c.At(target), 40);
    EXPECT_TRUE(r.error_match);
    EXPECT_LT(r.disagreement_inf_estimate, 1e-9);
    // The running infimum keeps shrinking along the enumeration.
    const std::size_t k = r.disagreement_trace.size();
    ASSERT_GT(k, 10u);
    EXPECT_LT(r.disagreement_trace[k - 1], r.disagreement_trace[5] + kSlack);
  }
}

TEST(CenteringTest, RealizablePointMassAndWrongTarget) {
  const ConceptClass t = MakeBuiltin(ClassKind::kThresholds);
  const CenteringReport r = IsCentered(PointMass(3, 1.0), t, *t.At(0), 1);
  EXPECT_TRUE(r.error_match);
  EXPECT_EQ(r.disagreement_inf_estimate, 0.0);
  const ConceptClass f = FiniteFixtureClass();
  EXPECT_FALSE(IsCentered(FiniteFixtureDistribution(), f, *f.At(1), 3).error_match);
}

TEST(Condition1GapTest, FiniteExample5AndSingleton) {
  EXPECT_NEAR(Condition1Gap(FiniteFixtureClass(), FiniteFixtureDistribution(), 3),
              0.2, kSlack);
  const ConceptClass c = MakeBuiltin(ClassKind::kExample5);
  const LabeledDistribution d = Example5Distribution();
  for (std::size_t depth = 3; depth < 30; ++depth) {
    double expected = 1.0;
    for (std::size_t i = 1; i + 1 < depth; ++i) {
      expected = std::min(expected, 2.0 * d.Mass(i) * 0.25);
    }
    EXPECT_DOUBLE_EQ(Condition1Gap(c, d, depth), expected);
  }
  ClassParams p;
  p.table = {{1, 0}};
  EXPECT_EQ(Condition1Gap(MakeBuiltin(ClassKind::kFinite, p),
                          FiniteFixtureDistribution(), 1),
            1.0);
}

TEST(Condition1GapPropertyTest, MatchesSecondBestGapOnRandomTables) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    ClassParams p;
    const int rows = 2 + static_cast<int>(rng() % 6);
    const int cols = 1 + static_cast<int>(rng() % 5);
    for (int r = 0; r < rows; ++r) {
      std::vector<Bit> row;
      for (int c = 0; c < cols; ++c) row.push_back(static_cast<Bit>(rng() % 2));
      p.table.push_back(row);
    }
    std::vector<Atom> atoms;
    double total = 0.0;
    for (int c = 0; c < cols; ++c) {
      atoms.push_back({static_cast<Instance>(c), 0.1 + u(rng), u(rng)});
      total += atoms.back().mass;
    }
    for (Atom& a : atoms) a.mass /= total;
    const LabeledDistribution d = LabeledDistribution::Tabulated("t", atoms);
    std::vector<double> errs;
    for (const auto& row : p.table) {
      double e = 0.0;
      for (int c = 0; c < cols; ++c) {
        e += atoms[c].mass * (row[c] ? 1.0 - atoms[c].eta : atoms[c].eta);
      }
      errs.push_back(e);
    }
    const double best = *std::min_element(errs.begin(), errs.end());
    double gap = 1.0;
    for (double e : errs) {
      if (e - best > 1e-12) gap = std::min(gap, e - best);
    }
    EXPECT_NEAR(Condition1Gap(MakeBuiltin(ClassKind::kFinite, p), d, rows), gap,
                1e-12);
  }
}

TEST(EpsilonBallTest, FiniteFixture) {
  const ConceptClass c = FiniteFixtureClass();
  const LabeledDistribution d = FiniteFixtureDistribution();
  EXPECT_TRUE(EpsilonBall(c, d, 0.1, 3).ids.empty());
  EXPECT_TRUE(EpsilonBall(c, d, 0.199, 3).ids.empty());
  EXPECT_EQ(EpsilonBall(c, d, 0.25, 3).ids, (std::vector<HypothesisId>{1}));
  EXPECT_EQ(EpsilonBall(c, d, 1.0, 3).ids, (std::vector<HypothesisId>{1, 2}));
  EXPECT_THROW(EpsilonBall(c, d, 0.0, 3), Error);
}

TEST(SigmaTest, BelowTheGapOnlyTheOptimumIsInTheBall) {
  const SigmaReport r = SigmaSqEps(FiniteFixtureClass(), FiniteFixtureDistribution(),
                                   0.1, 3, DefaultTauGrid(0.1));
  EXPECT_EQ(r.ball, (std::vector<HypothesisId>{0}));
  EXPECT_EQ(r.value, 0.0);
}

TEST(SigmaTest, EmptyBallGivesZeroWithNote) {
  // A prefix that misses both optima of the Example5 class: excesses 1/8 and 1/16.
  const ConceptClass c = MakeBuiltin(ClassKind::kExample5);
  const PrefixProfile p =
      ProfilePrefix({*c.At(2), *c.At(3)}, Example5Distribution());
  const SigmaReport r = SigmaSqEps(p, 0.01, DefaultTauGrid(0.01));
  EXPECT_TRUE(r.ball.empty());
  EXPECT_EQ(r.value, 0.0);
  EXPECT_FALSE(r.note.empty());
}

TEST(SigmaTest, BallMembersAtDistanceFromNearOptimal) {
  // Ball {row 1} at excess 0.2; within tau of optimal only row 0, which
  // disagrees with row 1 on point 1 (mass 1/2).
  const SigmaReport r = SigmaSqEps(FiniteFixtureClass(), FiniteFixtureDistribution(),
                                   0.25, 3, DefaultTauGrid(0.25));
  EXPECT_EQ(r.ball, (std::vector<HypothesisId>{0, 1}));
  EXPECT_NEAR(r.value, 0.5, kSlack);
  EXPECT_TRUE(r.monotone);
}

}  // namespace
}  // namespace urate
