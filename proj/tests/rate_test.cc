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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "urate/error.h"
#include "urate/extended_real.h"
#include "urate/rate.h"

namespace urate {
namespace {

TEST(ExtendedRealTest, AgreesWithDoublesInRange) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  for (int i = 0; i < 500; ++i) {
    const double a = std::exp(u(rng) - 20.0);
    const double b = std::exp(u(rng) - 20.0);
    const ExtendedReal ea(a), eb(b);
    EXPECT_NEAR((ea + eb).ToDouble(), a + b, 1e-12 * (a + b));
    EXPECT_NEAR((ea * eb).ToDouble(), a * b, 1e-12 * a * b);
    EXPECT_NEAR((ea / eb).ToDouble(), a / b, 1e-12 * a / b);
    EXPECT_EQ(ea < eb, a < b);
    if (a >= b) {
      EXPECT_NEAR((ea - eb).ToDouble(), a - b, 1e-9 * a);
    }
  }
}

TEST(ExtendedRealTest, RejectsNegativeAndNan) {
  EXPECT_THROW(ExtendedReal(-1.0), Error);
  EXPECT_THROW(ExtendedReal(std::nan("")), Error);
  EXPECT_TRUE(ExtendedReal(0.0).is_zero());
}

TEST(ExtendedRealTest, TowersCompareAndRoundTripThroughLog) {
  const ExtendedReal big = ExtendedReal::Exp(SignedExtendedReal(1e6));
  const ExtendedReal bigger = ExtendedReal::Exp(SignedExtendedReal(2e6));
  EXPECT_GT(big.level(), 0);
  EXPECT_EQ(big.ToDouble(), HUGE_VAL);
  EXPECT_LT(big, bigger);
  EXPECT_GT(big, ExtendedReal(1e300));
  EXPECT_NEAR(ExtendedReal::Log(big).ToDouble(), 1e6, 1e-6);
  EXPECT_NEAR(big.LogToDouble(), 1e6, 1e-6);
  const ExtendedReal tiny = ExtendedReal(1.0) / big;
  EXPECT_LT(tiny, ExtendedReal(1e-300));
  EXPECT_FALSE(tiny.is_zero());
  EXPECT_EQ(tiny.ToDouble(), 0.0);
  EXPECT_NEAR((big * tiny).ToDouble(), 1.0, 1e-9);
  const ExtendedReal tower =
      ExtendedReal::Exp(SignedExtendedReal(false, big));
  EXPECT_GT(tower, big);
  EXPECT_EQ(tower.ToString().rfind("exp(exp(", 0), 0u);
}

TEST(ExtendedRealTest, PowSqrtCeil) {
  EXPECT_NEAR(Pow(ExtendedReal(8.0), 1.0 / 3.0).ToDouble(), 2.0, 1e-12);
  EXPECT_NEAR(Sqrt(ExtendedReal(1e10)).ToDouble(), 1e5, 1e-6);
  EXPECT_EQ(Ceil(ExtendedReal(2.2)).ToDouble(), 3.0);
  EXPECT_EQ(Ceil(ExtendedReal(5.0)).ToDouble(), 5.0);
  const ExtendedReal big = ExtendedReal::Exp(SignedExtendedReal(1e4));
  EXPECT_NEAR(ExtendedReal::Log(Sqrt(big)).ToDouble(), 5e3, 1e-6);
  EXPECT_TRUE(ApproxEqual(Ceil(big), big));
  EXPECT_TRUE(ApproxLessEqual(ExtendedReal(1.0 + 1e-12), ExtendedReal(1.0)));
  EXPECT_FALSE(ApproxLessEqual(ExtendedReal(1.1), ExtendedReal(1.0)));
}

TEST(RateFunctionTest, Values) {
  const double e = std::numbers::e;
  EXPECT_DOUBLE_EQ(RateFunction::InverseLog()(10.0), 1.0 / std::log(10.0 + e));
  EXPECT_DOUBLE_EQ(RateFunction::Power(0.5)(16.0), 0.25);
  EXPECT_DOUBLE_EQ(RateFunction::InverseLogLog()(0.0), 1.0 / std::log(e + 1.0));
  EXPECT_THROW(RateFunction::Power(0.0), Error);
  EXPECT_THROW(RateFunction::FromName("cubic"), Error);
}

TEST(RateFunctionTest, NamesRoundTrip) {
  for (const RateFunction& r :
       {RateFunction::InverseLog(), RateFunction::InverseLogLog(),
        RateFunction::Power(1.0 / 3.0), RateFunction::Power(2.0)}) {
    const RateFunction back = RateFunction::FromName(r.Name());
    EXPECT_EQ(back.kind(), r.kind());
    EXPECT_EQ(back.alpha(), r.alpha());
  }
  EXPECT_EQ(RateFunction::FromName("power", 0.25).alpha(), 0.25);
}

TEST(RateFunctionTest, ExtendedEvaluationMatchesDoubles) {
  for (double n : {1.0, 7.0, 1e3, 1e12}) {
    for (const RateFunction& r : {RateFunction::InverseLog(),
                                  RateFunction::InverseLogLog(),
                                  RateFunction::Power(1.0 / 3.0)}) {
      EXPECT_NEAR(r.At(ExtendedReal(n)).ToDouble(), r(n), 1e-14);
    }
  }
  // Beyond the double range the log rate is the reciprocal of ln n.
  const ExtendedReal big = ExtendedReal::Exp(SignedExtendedReal(1e6));
  EXPECT_NEAR(RateFunction::InverseLog().At(big).ToDouble(), 1e-6, 1e-15);
}

TEST(RateFunctionTest, LeastArgAtMostIsExactBelowDoubleLimit) {
  const RateFunction il = RateFunction::InverseLog();
  // 1/ln(n + e) <= 1/24 first holds at ceil(e^24 - e).
  EXPECT_EQ(il.LeastArgAtMost(ExtendedReal(1.0 / 24.0), ExtendedReal(12.0))
                .ToDouble(),
            26489122128.0);
  const RateFunction p = RateFunction::Power(1.0 / 3.0);
  EXPECT_EQ(p.LeastArgAtMost(ExtendedReal(1.0 / 16.0), ExtendedReal(8.0))
                .ToDouble(),
            4096.0);
  // Never returns a value at or below the lower bound.
  EXPECT_EQ(p.LeastArgAtMost(ExtendedReal(0.9), ExtendedReal(5.0)).ToDouble(),
            6.0);
  EXPECT_THROW(p.LeastArgAtMost(ExtendedReal(0.0), ExtendedReal(1.0)), Error);
}

TEST(RateFunctionTest, LeastArgAtMostProperty) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.05, 0.9);
  for (const RateFunction& r :
       {RateFunction::InverseLog(), RateFunction::Power(0.5),
        RateFunction::Power(1.0 / 3.0)}) {
    for (int i = 0; i < 200; ++i) {
      const double target = u(rng);
      const double lower = std::floor(u(rng) * 10.0);
      const double n =
          r.LeastArgAtMost(ExtendedReal(target), ExtendedReal(lower)).ToDouble();
      if (n > 1e7) continue;
      EXPECT_GT(n, lower);
      EXPECT_LE(r(n), target * (1 + 1e-15));
      if (n - 1.0 > lower) {
        EXPECT_GT(r(n - 1.0), target);
      }
    }
  }
}

}  // namespace
}  // namespace urate
