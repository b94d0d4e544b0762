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

#include "urate/rate.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "urate/error.h"

namespace urate {
namespace {

constexpr double kExactLimit = 9007199254740992.0;  // 2^53

ExtendedReal Reciprocal(const ExtendedReal& x) { return ExtendedReal(1.0) / x; }

ExtendedReal LogPositive(const ExtendedReal& x) {
  SignedExtendedReal l = ExtendedReal::Log(x);
  if (l.negative()) throw Error(ErrorCode::kDomainViolation, "log below 1");
  return l.magnitude();
}

}  // namespace

RateFunction RateFunction::InverseLog() { return {RateKind::kInverseLog, 0.0}; }

RateFunction RateFunction::Power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidParams, "power rate needs alpha > 0");
  }
  return {RateKind::kPower, alpha};
}

RateFunction RateFunction::InverseLogLog() {
  return {RateKind::kInverseLogLog, 0.0};
}

RateFunction RateFunction::FromName(const std::string& name, double alpha) {
  if (name == "inverse_log") return InverseLog();
  if (name == "inverse_loglog") return InverseLogLog();
  if (name == "power") return Power(alpha);
  if (name.rfind("power(", 0) == 0 && name.back() == ')') {
    return Power(std::stod(name.substr(6, name.size() - 7)));
  }
  throw Error(ErrorCode::kInvalidParams, "unknown rate '" + name + "'");
}

std::string RateFunction::Name() const {
  switch (kind_) {
    case RateKind::kInverseLog:
      return "inverse_log";
    case RateKind::kInverseLogLog:
      return "inverse_loglog";
    case RateKind::kPower:
      break;
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "power(%.17g)", alpha_);
  return buf;
}

double RateFunction::operator()(double n) const {
  constexpr double e = std::numbers::e;
  switch (kind_) {
    case RateKind::kInverseLog:
      return 1.0 / std::log(n + e);
    case RateKind::kInverseLogLog:
      return 1.0 / std::log(e + std::log(n + e));
    case RateKind::kPower:
      break;
  }
  return std::pow(n, -alpha_);
}

ExtendedReal RateFunction::At(const ExtendedReal& n) const {
  if (n.level() == 0) return ExtendedReal((*this)(n.ToDouble()));
  const ExtendedReal e(std::numbers::e);
  switch (kind_) {
    case RateKind::kInverseLog:
      return Reciprocal(LogPositive(n + e));
    case RateKind::kInverseLogLog:
      return Reciprocal(LogPositive(e + LogPositive(n + e)));
    case RateKind::kPower:
      break;
  }
  return Pow(n, -alpha_);
}

ExtendedReal RateFunction::Inverse(const ExtendedReal& target) const {
  // Continuous solution of R(n) = target.
  const ExtendedReal e(std::numbers::e);
  const SignedExtendedReal inv(false, Reciprocal(target));
  switch (kind_) {
    case RateKind::kInverseLog:
      return ExtendedReal::Exp(inv) - e;
    case RateKind::kInverseLogLog:
      return ExtendedReal::Exp(
                 SignedExtendedReal(false, ExtendedReal::Exp(inv) - e)) -
             e;
    case RateKind::kPower:
      break;
  }
  return Pow(target, -1.0 / alpha_);
}

ExtendedReal RateFunction::LeastArgAtMost(const ExtendedReal& target,
                                          const ExtendedReal& lower) const {
  if (target.is_zero()) {
    throw Error(ErrorCode::kHorizonInfeasible, "rate target is zero");
  }
  ExtendedReal guess = Ceil(Inverse(target));
  if (guess <= lower) guess = lower + ExtendedReal(1.0);
  const double g = guess.ToDouble();
  if (!(g < kExactLimit)) return guess;
  // Exact integer search around the continuous guess.
  const double lo = std::floor(lower.ToDouble());
  // A few ulps of slack so that exact solutions such as 4096^(-1/3) = 1/16
  // are not lost to the rounding of alpha. Wider slack would admit n - 1
  // for the log rates, whose relative step is about 1/(n ln n).
  const double t =
      target.ToDouble() * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
  double n = std::max(g, lo + 1.0);
  while (n > lo + 1.0 && (*this)(n - 1.0) <= t) n -= 1.0;
  while ((*this)(n) > t) n += 1.0;
  return ExtendedReal(n);
}

}  // namespace urate
