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

#include "urate/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "urate/combinatorics.h"
#include "urate/error.h"

namespace urate {
namespace {

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kDomainViolation, what);
}

double LogMin(double sigma_sq, double n, double d) {
  const double inv = sigma_sq > 0.0 ? 1.0 / sigma_sq
                                    : std::numeric_limits<double>::infinity();
  const double ratio = d > 0.0 ? n / d : std::numeric_limits<double>::infinity();
  return std::log(std::min(inv, ratio));
}

}  // namespace

double Hoeffding(double n, double t, double a, double b) {
  Require(n >= 1.0, "hoeffding: n >= 1");
  Require(t > 0.0, "hoeffding: t > 0");
  Require(b > a, "hoeffding: b > a");
  return std::min(1.0, 2.0 * std::exp(-2.0 * n * t * t / ((b - a) * (b - a))));
}

double McDiarmidDeviation(double n, double c, double delta) {
  Require(n >= 1.0, "mcdiarmid: n >= 1");
  Require(c > 0.0, "mcdiarmid: c > 0");
  Require(delta > 0.0 && delta < 1.0, "mcdiarmid: delta in (0,1)");
  return c * std::sqrt(n / 2.0 * std::log(2.0 / delta));
}

double SludLower(double n, double eps) {
  Require(n >= 1.0, "slud: n >= 1");
  Require(eps >= 0.0 && eps < 1.0, "slud: eps in [0,1)");
  const double e = std::exp(-n * eps * eps / (1.0 - eps * eps));
  return 0.5 * (1.0 - std::sqrt(1.0 - e));
}

double DeviationBound(double n, double delta) {
  Require(n >= 1.0, "deviation: n >= 1");
  Require(delta > 0.0 && delta < 1.0, "deviation: delta in (0,1)");
  return std::sqrt(std::log(4.0 / delta) / (2.0 * n));
}

double FiniteClassBound(double m, double eps0, double n) {
  Require(m >= 1.0, "finite_class: m >= 1");
  Require(eps0 > 0.0, "finite_class: eps0 > 0");
  Require(n >= 0.0, "finite_class: n >= 0");
  return std::min(1.0, 2.0 * m * std::exp(-n * eps0 * eps0 / 2.0));
}

double UniformBernstein(const BoundParams& p) {
  Require(p.sigma_sq > 0.0 && p.sigma_sq <= 1.0, "bernstein: sigma^2 in (0,1]");
  Require(p.d >= 0.0, "bernstein: d >= 0");
  Require(p.n >= 2.0 * p.d && p.n >= 1.0, "bernstein: n >= 2d");
  Require(p.delta > 0.0 && p.delta < 1.0, "bernstein: delta in (0,1)");
  Require(p.c0 > 0.0, "bernstein: c0 > 0");
  const double l = (p.d > 0.0 ? p.d * LogMin(p.sigma_sq, p.n, p.d) : 0.0) +
                   std::log(1.0 / p.delta);
  const double scaled = p.c0 / p.n * l;
  return std::sqrt(p.sigma_sq * scaled) + scaled;
}

double LocalizationB(double sigma_sq, double n, double d, double c_tilde) {
  Require(n >= 1.0 && d > 0.0, "localization: n >= 1, d > 0");
  const double l = std::max(0.0, LogMin(sigma_sq, n, d));
  return c_tilde * std::sqrt(sigma_sq * d / n * l) + c_tilde * d / n * l;
}

LocalizedQuantities ComputeLocalizedQuantities(
    const ConceptClass& cls, const LabeledDistribution& dist,
    const BoundParams& params, std::size_t depth, std::size_t truncation) {
  Require(params.n >= 1.0, "localized: n >= 1");
  const PrefixProfile profile = ProfilePrefix(cls.Enumerate(depth), dist, truncation);
  LocalizedQuantities q;
  q.d = params.d;
  if (q.d <= 0.0) {
    std::vector<Instance> domain;
    for (std::size_t a = 0; a < profile.atoms.size() && a < 12; ++a) {
      domain.push_back(profile.atoms[a].x);
    }
    q.d = std::max(1, VcDimension(profile.prefix, domain, 8).value);
    q.note = "d computed over the first support points";
  }
  Require(params.n >= 2.0 * q.d, "localized: n >= 2d");
  auto sigma = [&](double eps) {
    return SigmaSqEps(profile, eps, DefaultTauGrid(eps)).value;
  };
  auto holds = [&](double eps) {
    return LocalizationB(sigma(eps), params.n, q.d, params.c_tilde) <= 2.0 * eps;
  };
  double lo = 1e-9, hi = 1.0;
  if (holds(lo) || !holds(hi)) {
    std::ostringstream os;
    os << "B_eps <= 2 eps does not switch on [1e-9, 1]: B(1e-9) = "
       << LocalizationB(sigma(lo), params.n, q.d, params.c_tilde)
       << ", B(1) = " << LocalizationB(sigma(hi), params.n, q.d, params.c_tilde);
    throw Error(ErrorCode::kBisectionFailure, os.str());
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
    ++q.bisection_steps;
  }
  q.eps_n = hi;
  q.epsilon = hi;
  const SigmaReport s = SigmaSqEps(profile, hi, DefaultTauGrid(hi));
  q.ball_ids = s.ball;
  q.sigma_sq_eps = s.value;
  q.b_eps = LocalizationB(s.value, params.n, q.d, params.c_tilde);
  q.phi_total = std::min(params.c * std::sqrt(q.d / params.n), q.eps_n);
  return q;
}

}  // namespace urate
