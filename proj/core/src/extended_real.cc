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

#include "urate/extended_real.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "urate/error.h"

namespace urate {
namespace {

// Logs beyond this magnitude leave level 0.
constexpr double kLogLimit = 700.0;
// exp(kLogLimit); a level >= 1 payload above this moves up one level.
const double kValueLimit = std::exp(kLogLimit);

// 0 for zero, 1 for tiny (below double range), 2 for level 0, 3 for huge.
int Rank(int level, bool tiny, double value) {
  if (level == 0) return value == 0.0 ? 0 : 2;
  return tiny ? 1 : 3;
}

}  // namespace

ExtendedReal::ExtendedReal(double v) {
  if (std::isnan(v) || v < 0.0) {
    throw Error(ErrorCode::kDomainViolation, "ExtendedReal requires a non-negative value");
  }
  if (v == 0.0) return;
  if (std::isinf(v)) {
    throw Error(ErrorCode::kDomainViolation, "ExtendedReal cannot hold an infinite double");
  }
  const double l = std::log(v);
  if (std::fabs(l) <= kLogLimit) {
    value_ = v;
    return;
  }
  level_ = 1;
  tiny_ = l < 0.0;
  value_ = std::fabs(l);
}

ExtendedReal ExtendedReal::Exp(const SignedExtendedReal& y) {
  const ExtendedReal& m = y.magnitude();
  if (m.level_ == 0) {
    const double l = y.negative() ? -m.value_ : m.value_;
    if (std::fabs(l) <= kLogLimit) return ExtendedReal(std::exp(l));
    ExtendedReal r(1, l < 0.0, std::fabs(l));
    if (r.value_ > kValueLimit) {
      r.value_ = std::log(r.value_);
      r.level_ = 2;
    }
    return r;
  }
  if (m.tiny_) return ExtendedReal(1.0);
  return ExtendedReal(m.level_ + 1, y.negative(), m.value_);
}

SignedExtendedReal ExtendedReal::Log(const ExtendedReal& x) {
  if (x.is_zero()) throw Error(ErrorCode::kDomainViolation, "log of zero");
  if (x.level_ == 0) return SignedExtendedReal(std::log(x.value_));
  if (x.level_ == 1) return {x.tiny_, ExtendedReal(x.value_)};
  return {x.tiny_, ExtendedReal(x.level_ - 1, false, x.value_)};
}

double ExtendedReal::ToDouble() const {
  if (level_ == 0) return value_;
  return tiny_ ? 0.0 : std::numeric_limits<double>::infinity();
}

double ExtendedReal::LogToDouble() const {
  if (level_ == 0) {
    return value_ == 0.0 ? -std::numeric_limits<double>::infinity()
                         : std::log(value_);
  }
  if (level_ == 1) return tiny_ ? -value_ : value_;
  return tiny_ ? -std::numeric_limits<double>::infinity()
               : std::numeric_limits<double>::infinity();
}

std::string ExtendedReal::ToString() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value_);
  if (level_ == 0) return buf;
  std::string inner = buf;
  for (int i = 1; i < level_; ++i) inner = "exp(" + inner + ")";
  return std::string(tiny_ ? "exp(-" : "exp(") + inner + ")";
}

int Compare(const ExtendedReal& a, const ExtendedReal& b) {
  const int ra = Rank(a.level_, a.tiny_, a.value_);
  const int rb = Rank(b.level_, b.tiny_, b.value_);
  if (ra != rb) return ra < rb ? -1 : 1;
  auto cmp = [](double x, double y) { return x < y ? -1 : (x > y ? 1 : 0); };
  switch (ra) {
    case 0:
      return 0;
    case 2:
      return cmp(a.value_, b.value_);
    case 3:
      if (a.level_ != b.level_) return a.level_ < b.level_ ? -1 : 1;
      return cmp(a.value_, b.value_);
    default:
      if (a.level_ != b.level_) return a.level_ > b.level_ ? -1 : 1;
      return -cmp(a.value_, b.value_);
  }
}

namespace {

bool FitsLevelZero(double v) {
  return std::isfinite(v) && v > 0.0 && std::fabs(std::log(v)) <= kLogLimit;
}

}  // namespace

ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_zero() || b.is_zero()) return ExtendedReal();
  if (a.level_ == 0 && b.level_ == 0) {
    const double p = a.value_ * b.value_;
    if (FitsLevelZero(p)) return ExtendedReal(p);
  }
  return ExtendedReal::Exp(ExtendedReal::Log(a) + ExtendedReal::Log(b));
}

ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b) {
  if (b.is_zero()) throw Error(ErrorCode::kDomainViolation, "division by zero");
  if (a.is_zero()) return ExtendedReal();
  if (a.level_ == 0 && b.level_ == 0) {
    const double q = a.value_ / b.value_;
    if (FitsLevelZero(q)) return ExtendedReal(q);
  }
  return ExtendedReal::Exp(ExtendedReal::Log(a) + -ExtendedReal::Log(b));
}

ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
  return (SignedExtendedReal(false, a) + SignedExtendedReal(false, b))
      .magnitude();
}

ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) {
  SignedExtendedReal d = SignedExtendedReal(false, a) + -SignedExtendedReal(false, b);
  if (d.negative()) return ExtendedReal();
  return d.magnitude();
}

ExtendedReal Pow(const ExtendedReal& x, double exponent) {
  if (x.is_zero()) {
    if (exponent > 0.0) return ExtendedReal();
    throw Error(ErrorCode::kDomainViolation, "zero to a non-positive power");
  }
  if (exponent == 0.0) return ExtendedReal(1.0);
  return ExtendedReal::Exp(ExtendedReal::Log(x) * exponent);
}

ExtendedReal Sqrt(const ExtendedReal& x) { return Pow(x, 0.5); }

ExtendedReal Ceil(const ExtendedReal& x) {
  if (x.level() == 0) {
    const double v = x.ToDouble();
    if (v < 9007199254740992.0) return ExtendedReal(std::ceil(v));
  }
  return x;
}

bool ApproxLessEqual(const ExtendedReal& a, const ExtendedReal& b,
                     double rel) {
  if (a <= b) return true;
  if (b.is_zero()) return false;
  const SignedExtendedReal lb = ExtendedReal::Log(b);
  const SignedExtendedReal d = ExtendedReal::Log(a) + -lb;
  if (d.negative() || d.magnitude().is_zero()) return true;
  ExtendedReal scale = lb.magnitude() < ExtendedReal(1.0) ? ExtendedReal(1.0)
                                                          : lb.magnitude();
  return d.magnitude() <= scale * ExtendedReal(rel);
}

bool ApproxEqual(const ExtendedReal& a, const ExtendedReal& b, double rel) {
  return ApproxLessEqual(a, b, rel) && ApproxLessEqual(b, a, rel);
}

SignedExtendedReal::SignedExtendedReal(double v)
    : negative_(v < 0.0), magnitude_(std::fabs(v)) {}

SignedExtendedReal::SignedExtendedReal(bool negative, ExtendedReal magnitude)
    : negative_(negative && !magnitude.is_zero()),
      magnitude_(std::move(magnitude)) {}

double SignedExtendedReal::ToDouble() const {
  const double m = magnitude_.ToDouble();
  return negative_ ? -m : m;
}

SignedExtendedReal SignedExtendedReal::operator-() const {
  return SignedExtendedReal(!negative_, magnitude_);
}

SignedExtendedReal operator+(const SignedExtendedReal& a,
                             const SignedExtendedReal& b) {
  if (a.magnitude_.is_zero()) return b;
  if (b.magnitude_.is_zero()) return a;
  if (a.magnitude_.level() == 0 && b.magnitude_.level() == 0) {
    const double s = a.ToDouble() + b.ToDouble();
    if (std::isfinite(s)) return SignedExtendedReal(s);
  }
  const bool a_bigger = Compare(a.magnitude_, b.magnitude_) >= 0;
  const SignedExtendedReal& big = a_bigger ? a : b;
  const SignedExtendedReal& small = a_bigger ? b : a;
  const double r = (small.magnitude_ / big.magnitude_).ToDouble();
  const double factor = big.negative_ == small.negative_ ? 1.0 + r : 1.0 - r;
  if (factor <= 0.0) return SignedExtendedReal();
  return SignedExtendedReal(big.negative_,
                            big.magnitude_ * ExtendedReal(factor));
}

SignedExtendedReal operator*(const SignedExtendedReal& a, double f) {
  if (f == 0.0 || a.magnitude_.is_zero()) return SignedExtendedReal();
  return SignedExtendedReal(a.negative_ != (f < 0.0),
                            a.magnitude_ * ExtendedReal(std::fabs(f)));
}

int Compare(const SignedExtendedReal& a, const SignedExtendedReal& b) {
  if (a.negative_ != b.negative_) return a.negative_ ? -1 : 1;
  const int c = Compare(a.magnitude_, b.magnitude_);
  return a.negative_ ? -c : c;
}

}  // namespace urate
