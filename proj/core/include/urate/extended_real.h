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

#ifndef URATE_EXTENDED_REAL_H_
#define URATE_EXTENDED_REAL_H_

#include <string>

namespace urate {

class SignedExtendedReal;

// Non-negative real with iterated-exponential range.
//
// Level 0 stores the value as a double. Level L >= 1 stores v with
// x = exp(+E(v)) or x = exp(-E(v)), where E applies exp L-1 times.
// Sample sizes produced by slow rates grow as towers of exponentials,
// so plain doubles (and even plain logarithms) overflow after a few steps.
//
// Precision is that of v. At level >= 2 two values whose v agree to
// double precision compare equal; ApproxLessEqual exists for that reason.
class ExtendedReal {
 public:
  ExtendedReal() = default;
  // Requires v >= 0; NaN and negative inputs throw.
  explicit ExtendedReal(double v);

  static ExtendedReal Exp(const SignedExtendedReal& y);
  static SignedExtendedReal Log(const ExtendedReal& x);

  int level() const { return level_; }
  bool is_zero() const { return level_ == 0 && value_ == 0.0; }
  // +inf above the double range, 0 below it.
  double ToDouble() const;
  // Natural log as a double when it fits, else +-inf.
  double LogToDouble() const;
  std::string ToString() const;

  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b);
  // Requires a >= b up to rounding; clamps to 0.
  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b);
  friend int Compare(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    return Compare(a, b) < 0;
  }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) {
    return Compare(a, b) <= 0;
  }
  friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) {
    return Compare(a, b) > 0;
  }
  friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) {
    return Compare(a, b) >= 0;
  }
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return Compare(a, b) == 0;
  }

 private:
  friend class SignedExtendedReal;
  ExtendedReal(int level, bool tiny, double value)
      : level_(level), tiny_(tiny), value_(value) {}

  int level_ = 0;
  bool tiny_ = false;
  double value_ = 0.0;
};

ExtendedReal Pow(const ExtendedReal& x, double exponent);
ExtendedReal Sqrt(const ExtendedReal& x);
ExtendedReal Ceil(const ExtendedReal& x);

// a <= b allowing a relative slack of rel on log scale:
// log a <= log b + rel * max(1, |log b|).
bool ApproxLessEqual(const ExtendedReal& a, const ExtendedReal& b,
                     double rel = 1e-9);
// |log a - log b| <= rel * max(1, |log b|).
bool ApproxEqual(const ExtendedReal& a, const ExtendedReal& b,
                 double rel = 1e-9);

// Real number with sign, used for logarithms of ExtendedReal values.
class SignedExtendedReal {
 public:
  SignedExtendedReal() = default;
  explicit SignedExtendedReal(double v);
  SignedExtendedReal(bool negative, ExtendedReal magnitude);

  bool negative() const { return negative_; }
  const ExtendedReal& magnitude() const { return magnitude_; }
  double ToDouble() const;

  SignedExtendedReal operator-() const;
  friend SignedExtendedReal operator+(const SignedExtendedReal& a,
                                      const SignedExtendedReal& b);
  friend SignedExtendedReal operator*(const SignedExtendedReal& a, double f);
  friend int Compare(const SignedExtendedReal& a, const SignedExtendedReal& b);

 private:
  bool negative_ = false;
  ExtendedReal magnitude_;
};

}  // namespace urate

#endif  // URATE_EXTENDED_REAL_H_
