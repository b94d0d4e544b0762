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

#include "urate/sequence_design.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "urate/error.h"

namespace urate {
namespace {

constexpr double kRel = 1e-9;

std::string Show(const ExtendedReal& a, const char* op, const ExtendedReal& b) {
  return a.ToString() + " " + op + " " + b.ToString();
}

ExtendedReal Sum(const std::vector<ExtendedReal>& v, std::size_t from) {
  ExtendedReal s;
  for (std::size_t i = from; i < v.size(); ++i) s = s + v[i];
  return s;
}

void Add(std::vector<ConditionResult>& out, std::string name, bool ok,
         std::string detail) {
  out.push_back({std::move(name), ok, std::move(detail)});
}

}  // namespace

std::string DesignModeName(DesignMode mode) {
  return mode == DesignMode::kEluder ? "eluder" : "vc_eluder";
}

bool AllPassed(const std::vector<ConditionResult>& conditions) {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionResult& c) { return c.passed; });
}

void CheckRateNotTooFast(const RateFunction& rate) {
  double prev = 0.0;
  for (int j = 0; j <= 60; ++j) {
    const double n = std::ldexp(1.0, j);
    const double v = n * rate(n);
    if (v < prev * (1.0 - 1e-12)) {
      std::ostringstream os;
      os << rate.Name() << " decays faster than 1/n: n R(n) drops from "
         << prev << " to " << v << " at n = 2^" << j;
      throw Error(ErrorCode::kRateTooFast, os.str());
    }
    prev = v;
  }
}

SequenceDesign DesignSequence(const RateFunction& rate, int t_max,
                              DesignMode mode) {
  if (t_max < 1 || t_max > 64) {
    throw Error(ErrorCode::kHorizonInfeasible, "t_max must lie in [1, 64]");
  }
  CheckRateNotTooFast(rate);

  SequenceDesign d;
  d.mode = mode;
  d.rate_name = rate.Name();
  d.t_max = t_max;
  const ExtendedReal one(1.0);
  const ExtendedReal half(0.5);

  std::vector<ExtendedReal> r;
  for (int t = 0; t < t_max; ++t) {
    ExtendedReal n = one;
    if (t > 0) {
      const ExtendedReal& prev = d.n.back();
      const ExtendedReal target =
          std::min(r.back() * half, one / (prev + prev));
      n = rate.LeastArgAtMost(target, prev);
    }
    d.n.push_back(n);
    r.push_back(rate.At(n));
    if (mode == DesignMode::kEluder) {
      d.k.push_back(ExtendedReal(t + 1.0));
    } else {
      // Shave a few ulps so 4096 * 4096^(-1/3) = 256 is not rounded up.
      ExtendedReal k = Ceil(n * r.back() *
                            ExtendedReal(1.0 - 4.0 * std::numeric_limits<double>::epsilon()));
      if (t > 0 && k < d.k.back() + one) k = d.k.back() + one;
      if (k.is_zero()) k = one;
      d.k.push_back(k);
    }
  }

  const double s = Sum(r, 0).ToDouble();
  d.c = std::min(1.0, 1.0 / s);
  d.residual = std::max(0.0, 1.0 - d.c * s);
  if (d.residual < 1e-15) d.residual = 0.0;
  const ExtendedReal c(d.c);
  for (int t = 0; t < t_max; ++t) {
    d.p.push_back(c * r[t]);
    if (mode == DesignMode::kEluder) {
      d.eps.push_back(one / Sqrt(ExtendedReal(8.0) * d.n[t]));
    } else {
      d.eps.push_back(ExtendedReal(0.25));
    }
  }
  if (d.residual > 0.0) {
    d.residual_eps =
        mode == DesignMode::kEluder ? d.eps.back().ToDouble() / 2.0 : 0.25;
  }
  for (int t = 0; t < t_max; ++t) {
    d.tail.push_back(Sum(d.p, t + 1) + ExtendedReal(d.residual));
  }
  d.conditions = VerifyDesign(d);
  return d;
}

std::vector<ConditionResult> VerifyDesign(const SequenceDesign& d) {
  std::vector<ConditionResult> out;
  const std::size_t m = d.n.size();
  if (m == 0 || d.k.size() != m || d.p.size() != m || d.eps.size() != m ||
      d.tail.size() != m) {
    Add(out, "shape", false, "sequence lengths disagree");
    return out;
  }
  const ExtendedReal one(1.0);
  const ExtendedReal res(d.residual);

  const ExtendedReal total = Sum(d.p, 0) + res;
  Add(out, "total_mass_at_most_one", ApproxLessEqual(total, one, kRel),
      Show(total, "<=", one));
  Add(out, "c_in_half_one", d.c >= 0.5 && d.c <= 1.0,
      "C = " + std::to_string(d.c));

  bool inc = true;
  bool dec = true;
  for (std::size_t t = 1; t < m; ++t) {
    inc = inc && d.n[t - 1] < d.n[t] && d.k[t - 1] < d.k[t];
    dec = dec && d.p[t] <= d.p[t - 1];
  }
  if (d.residual > 0.0) dec = dec && res <= d.p.back();
  Add(out, "n_k_increasing", inc, "");
  Add(out, "p_decreasing", dec, "along the checkpoint indices");

  // Rebuild p from the rate to check p_{k_t} = C R(n_t).
  const RateFunction rate = RateFunction::FromName(d.rate_name);
  for (std::size_t t = 0; t < m; ++t) {
    const std::string ts = "[t=" + std::to_string(t + 1) + "]";
    const ExtendedReal want = ExtendedReal(d.c) * rate.At(d.n[t]);
    Add(out, "p_equals_c_rate" + ts, ApproxEqual(d.p[t], want, kRel),
        Show(d.p[t], "=", want));
    const ExtendedReal tail = Sum(d.p, t + 1) + res;
    Add(out, "tail_at_most_inverse_n" + ts,
        ApproxLessEqual(tail, one / d.n[t], kRel) &&
            ApproxEqual(tail.is_zero() ? one : tail,
                        d.tail[t].is_zero() ? one : d.tail[t], kRel),
        Show(tail, "<=", one / d.n[t]));
    if (d.mode == DesignMode::kEluder) {
      // sum_{j>t} p_j / sqrt(n_j) <= p_t / sqrt(n_t); the residual index
      // has pseudo sample size 4 n_{t_max} (eps halved).
      ExtendedReal lhs;
      ExtendedReal lhs_eps;
      for (std::size_t j = t + 1; j < m; ++j) {
        lhs = lhs + d.p[j] / Sqrt(d.n[j]);
        lhs_eps = lhs_eps + d.p[j] * d.eps[j];
      }
      if (d.residual > 0.0) {
        lhs = lhs + res / Sqrt(ExtendedReal(4.0) * d.n.back());
        lhs_eps = lhs_eps + res * ExtendedReal(d.residual_eps);
      }
      const ExtendedReal rhs = d.p[t] / Sqrt(d.n[t]);
      Add(out, "weighted_tail_sqrt_n" + ts, ApproxLessEqual(lhs, rhs, kRel),
          Show(lhs, "<=", rhs));
      const ExtendedReal rhs_eps = d.p[t] * d.eps[t];
      Add(out, "weighted_tail_eps" + ts,
          ApproxLessEqual(lhs_eps, rhs_eps, kRel), Show(lhs_eps, "<=", rhs_eps));
      const ExtendedReal eight_n_eps2 =
          ExtendedReal(8.0) * d.n[t] * d.eps[t] * d.eps[t];
      Add(out, "eps_matches_n" + ts, ApproxEqual(eight_n_eps2, one, kRel),
          "8 n eps^2 = " + eight_n_eps2.ToString());
      Add(out, "eps_at_most_half" + ts, d.eps[t] <= ExtendedReal(0.5),
          d.eps[t].ToString());
    } else {
      const ExtendedReal np = d.n[t] * d.p[t];
      Add(out, "n_p_at_most_k" + ts, ApproxLessEqual(np, d.k[t], kRel),
          Show(np, "<=", d.k[t]));
      const ExtendedReal later = Sum(d.p, t + 1) + res;
      Add(out, "later_checkpoint_mass" + ts,
          ApproxLessEqual(later, d.p[t], kRel), Show(later, "<=", d.p[t]));
      Add(out, "eps_quarter" + ts, d.eps[t] == ExtendedReal(0.25), "");
    }
  }
  return out;
}

}  // namespace urate
