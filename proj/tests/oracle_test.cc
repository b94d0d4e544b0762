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

// Re-derives the frozen expectations from the reference implementations.

#include <cmath>

#include <gtest/gtest.h>

#include "frozen_values.h"
#include "oracle.h"

namespace urate {
namespace {

TEST(OracleTest, FiniteFixtureExcessMatchesFrozenFractions) {
  const std::vector<double> mass{0.5, 0.5};
  const std::vector<double> eta{0.9, 0.3};
  const oracle::Table labels{{1, 0}, {1, 1}, {0, 0}};
  const std::vector<double> er = oracle::TrueErrors(mass, eta, labels);
  for (int h = 0; h < 3; ++h) {
    EXPECT_NEAR(er[h], frozen::kFiniteFixtureErrors[h], 1e-15);
  }
  const std::vector<double> excess{0.0, er[1] - er[0], er[2] - er[0]};
  for (const frozen::ExcessRow& row : frozen::kFiniteFixtureExcess) {
    EXPECT_NEAR(oracle::ExactExpectedExcess(mass, eta, labels, excess, row.n,
                                            oracle::Policy::kFirst),
                row.first, 1e-12);
    EXPECT_NEAR(oracle::ExactExpectedExcess(mass, eta, labels, excess, row.n,
                                            oracle::Policy::kUniform),
                row.uniform, 1e-12);
    EXPECT_NEAR(oracle::ExactExpectedExcess(mass, eta, labels, excess, row.n,
                                            oracle::Policy::kWorst),
                row.worst, 1e-12);
  }
}

TEST(OracleTest, DesignSampleSizesMatchFrozenValues) {
  const auto inverse_log = [](long double n) {
    return 1.0L / std::log(n + std::exp(1.0L));
  };
  const auto power = [](long double n) { return std::pow(n, -1.0L / 3.0L); };
  long double a = 1.0L;
  long double b = 1.0L;
  for (int t = 1; t < 3; ++t) {
    a = oracle::LeastAtMost(inverse_log,
                            std::min(inverse_log(a) / 2, 1.0L / (2 * a)), a);
    b = oracle::LeastAtMost(power, std::min(power(b) / 2, 1.0L / (2 * b)), b);
    EXPECT_EQ(static_cast<std::int64_t>(a), frozen::kInverseLogN[t]);
    EXPECT_EQ(static_cast<std::int64_t>(b), frozen::kPowerThirdN[t]);
  }
  // k_t = max(k_{t-1} + 1, ceil(n_t R(n_t))).
  EXPECT_EQ(std::ceil(4096.0L / 16.0L), frozen::kPowerThirdVcK[2]);
  EXPECT_EQ(std::ceil(frozen::kInverseLogN[2] *
                      inverse_log(frozen::kInverseLogN[2])),
            frozen::kInverseLogVcK[2]);
}

TEST(OracleTest, BinomialTailMatchesFrozenValue) {
  EXPECT_NEAR(oracle::BinomialUpperTail(10, 0.45, 5), frozen::kBinomial10Tail,
              1e-12);
  EXPECT_NEAR(oracle::BinomialUpperTail(7, 0.5, 4), 0.5, 1e-15);
}

TEST(OracleTest, ShatteringOracleOnSmallTables) {
  oracle::Table thresholds;
  for (int t = 0; t < 10; ++t) {
    oracle::Row row;
    for (int x = 0; x < 10; ++x) row.push_back(oracle::Threshold(t, x));
    thresholds.push_back(row);
  }
  EXPECT_EQ(oracle::VcDimension(thresholds), 1);
  oracle::Table all3;
  for (int mask = 0; mask < 8; ++mask) {
    all3.push_back({mask & 1, mask >> 1 & 1, mask >> 2 & 1});
  }
  EXPECT_EQ(oracle::VcDimension(all3), 3);
}

TEST(OracleTest, EluderOracleOnFixtureTable) {
  // Rows (1,0), (1,1), (0,0) centered at the first row: x = 1 then x = 0.
  const oracle::Table table{{1, 0}, {1, 1}, {0, 0}};
  EXPECT_EQ(oracle::MaxEluderLength(table, table[0]), 2u);
  // Four distinct rows on two points around (0,0).
  const oracle::Table four{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(oracle::MaxEluderLength(four, four[0]), 2u);
}

}  // namespace
}  // namespace urate
