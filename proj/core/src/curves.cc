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

#include "urate/curves.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "urate/error.h"
#include "urate/parallel.h"

namespace urate {
namespace {

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
};

Fit LeastSquares(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  if (sxx <= 0.0) return f;
  f.slope = sxy / sxx;
  if (syy <= 0.0) return f;
  f.r2 = (sxy * sxy) / (sxx * syy);
  return f;
}

CheckpointRow CompareOne(const Checkpoint& cp, ConstructionKind kind,
                         const LearningCurve& curve, std::size_t g) {
  CheckpointRow row;
  row.t = cp.t;
  row.n = curve.grid[g];
  row.observed_mean = curve.means[g];
  row.observed_stderr = curve.stderrs[g];
  row.predicted = cp.predicted_bound;
  row.passed = row.observed_mean + 3.0 * row.observed_stderr >= row.predicted;
  if (kind == ConstructionKind::kEluderLower && g < curve.event_freq.size()) {
    row.has_event = true;
    row.event_freq = curve.event_freq[g];
    row.event_stderr = curve.event_stderr[g];
    row.event_bound = cp.event_probability_bound;
    row.event_passed =
        row.event_freq + 3.0 * row.event_stderr >= row.event_bound;
  }
  return row;
}

}  // namespace

LearningCurve EstimateCurve(const ConceptClass& cls,
                            const LabeledDistribution& dist, TiePolicy policy,
                            const std::vector<std::int64_t>& grid, int reps,
                            std::uint64_t seed, std::size_t prefix_len,
                            const CurveOptions& options) {
  if (reps < 30) {
    throw Error(ErrorCode::kInvalidParams, "need at least 30 replications");
  }
  if (grid.empty()) throw Error(ErrorCode::kInvalidParams, "empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1])) {
      throw Error(ErrorCode::kInvalidParams,
                  "grid must be positive and strictly increasing");
    }
  }
  if (prefix_len < 1) throw Error(ErrorCode::kInvalidParams, "prefix_len >= 1");
  const ErmEngine engine(cls.Enumerate(prefix_len), dist, options.truncation,
                         options.excess);
  if (policy == TiePolicy::kAdversarialWorst &&
      engine.max_width() > kAdversarialSlack) {
    throw Error(ErrorCode::kIntervalTooWide,
                "true-error intervals too wide for adversarial tie-breaking");
  }
  LearningCurve curve;
  curve.grid = grid;
  curve.scenario_id = options.scenario_id.empty() ? dist.id() : options.scenario_id;
  curve.policy = policy;
  curve.prefix_len = engine.prefix().size();
  curve.seed = seed;
  curve.excess_width = options.excess ? 0.0 : engine.max_width();

  const std::size_t r = static_cast<std::size_t>(reps);
  std::vector<double> values(grid.size() * r);
  std::vector<unsigned char> events(options.event ? values.size() : 0);
  ParallelFor(values.size(), [&](std::size_t idx) {
    const std::size_t g = idx / r;
    std::mt19937_64 rng(DeriveSeed(seed, g, idx % r));
    const std::vector<CountCell> cells = SampleCounts(dist, grid[g], rng);
    values[idx] = engine.excess(engine.Select(cells, policy, rng));
    if (options.event) events[idx] = options.event(g, cells) ? 1 : 0;
  });
  auto summarize = [r](auto begin, double& mean, double& se) {
    double s = 0.0;
    for (std::size_t i = 0; i < r; ++i) s += begin[i];
    mean = s / r;
    double ss = 0.0;
    for (std::size_t i = 0; i < r; ++i) ss += (begin[i] - mean) * (begin[i] - mean);
    se = std::sqrt(ss / (r - 1) / r);
  };
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double mean, se;
    summarize(values.begin() + g * r, mean, se);
    curve.means.push_back(mean);
    curve.stderrs.push_back(se);
    curve.replications.push_back(reps);
    if (options.event) {
      summarize(events.begin() + g * r, mean, se);
      curve.event_freq.push_back(mean);
      curve.event_stderr.push_back(se);
    }
  }
  return curve;
}

std::vector<std::int64_t> GeometricGrid(std::int64_t lo, std::int64_t hi,
                                        int per_decade) {
  if (lo < 1 || hi < lo || per_decade < 1) {
    throw Error(ErrorCode::kInvalidParams, "bad grid specification");
  }
  std::vector<std::int64_t> g;
  const double step = std::pow(10.0, 1.0 / per_decade);
  for (double v = lo; v <= hi * (1 + 1e-12); v *= step) {
    const auto n = static_cast<std::int64_t>(std::llround(v));
    if (g.empty() || n > g.back()) g.push_back(n);
  }
  if (g.back() != hi) g.push_back(hi);
  return g;
}

std::string RegimeName(Regime r) {
  switch (r) {
    case Regime::kExponential:
      return "exponential";
    case Regime::kSuperRoot:
      return "super_root";
    case Regime::kArbitrarilySlow:
      return "arbitrarily_slow";
    case Regime::kInconclusive:
      break;
  }
  return "inconclusive";
}

RateVerdict ClassifyRate(const LearningCurve& curve,
                         const RateThresholds& thresholds) {
  const std::size_t m = curve.grid.size();
  if (m < 6 || curve.means.size() != m) {
    throw Error(ErrorCode::kInsufficientGrid, "need at least 6 grid points");
  }
  if (curve.grid.back() < 10 * curve.grid.front()) {
    throw Error(ErrorCode::kInsufficientGrid, "grid must span a decade");
  }
  RateVerdict v;
  v.thresholds = thresholds;
  std::vector<double> n_lin, ln_n, ln_e;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double n = static_cast<double>(curve.grid[i]);
    v.normalized.push_back(curve.means[i] * std::sqrt(n));
    if (curve.means[i] > 0.0) {
      n_lin.push_back(n);
      ln_n.push_back(std::log(n));
      ln_e.push_back(std::log(curve.means[i]));
    } else {
      ++zeros;
    }
  }
  v.decrease_factor = v.normalized.back() > 0.0
                          ? v.normalized.front() / v.normalized.back()
                          : (v.normalized.front() > 0.0
                                 ? std::numeric_limits<double>::infinity()
                                 : 1.0);
  if (2 * zeros > m) {
    v.regime = Regime::kExponential;
    v.note = "curve hit zero at " + std::to_string(zeros) + " of " +
             std::to_string(m) + " grid points";
    return v;
  }
  if (zeros > 0) {
    v.note = std::to_string(zeros) + " zero means left out of the fits";
  }
  const Fit e = LeastSquares(n_lin, ln_e);
  const Fit p = LeastSquares(ln_n, ln_e);
  v.exp_slope = e.slope;
  v.exp_r2 = e.r2;
  v.power_slope = p.slope;
  v.power_r2 = p.r2;
  if (e.slope < 0.0 && e.r2 >= thresholds.min_r2) {
    v.regime = Regime::kExponential;
    return v;
  }
  if ((p.slope <= thresholds.max_power_slope && p.r2 >= thresholds.min_r2) ||
      v.decrease_factor >= thresholds.min_decrease_factor) {
    v.regime = Regime::kSuperRoot;
    return v;
  }
  bool non_decreasing = true;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double a = curve.stderrs.size() == m
                         ? curve.stderrs[i] * curve.stderrs[i] * curve.grid[i]
                         : 0.0;
    const double b = curve.stderrs.size() == m
                         ? curve.stderrs[i + 1] * curve.stderrs[i + 1] *
                               curve.grid[i + 1]
                         : 0.0;
    const double slack = thresholds.noise_z * std::sqrt(a + b);
    if (v.normalized[i + 1] < v.normalized[i] - slack - 1e-15) {
      non_decreasing = false;
    }
  }
  v.regime = non_decreasing ? Regime::kArbitrarilySlow : Regime::kInconclusive;
  return v;
}

std::vector<CheckpointRow> CheckpointCompare(
    const LearningCurve& curve, const AdversarialConstruction& construction) {
  std::vector<CheckpointRow> rows;
  for (const Checkpoint& cp : construction.checkpoints) {
    const double n = cp.n.ToDouble();
    auto it = std::find_if(curve.grid.begin(), curve.grid.end(),
                           [n](std::int64_t g) { return double(g) == n; });
    if (it == curve.grid.end()) {
      throw Error(ErrorCode::kGridMismatch,
                  "checkpoint n = " + cp.n.ToString() + " is not on the grid");
    }
    rows.push_back(CompareOne(cp, construction.kind, curve,
                              static_cast<std::size_t>(it - curve.grid.begin())));
  }
  return rows;
}

CheckpointRun SimulateCheckpoints(const ConceptClass& cls,
                                  const AdversarialConstruction& construction,
                                  int reps, std::uint64_t seed,
                                  std::size_t prefix_len, double max_n) {
  CheckpointRun run;
  std::vector<const Checkpoint*> active;
  std::vector<std::int64_t> grid;
  for (const Checkpoint& cp : construction.checkpoints) {
    const double n = cp.n.ToDouble();
    if (!(n <= max_n) || !(n <= kMaxSimulatedN)) {
      run.skipped.push_back(cp.t);
      continue;
    }
    active.push_back(&cp);
    grid.push_back(static_cast<std::int64_t>(n));
  }
  if (active.empty()) return run;

  std::map<Instance, const SupportPoint*> by_x;
  for (const SupportPoint& s : construction.support) by_x[s.x] = &s;
  CurveOptions opts;
  opts.excess = [&construction](const Hypothesis& h) {
    return construction.Excess(h);
  };
  opts.scenario_id = construction.dist.id();
  if (construction.kind == ConstructionKind::kEluderLower) {
    // No draws beyond index k_t, and wrong labels at x_{k_t} at least as
    // frequent as right ones.
    opts.event = [&](std::size_t g, const std::vector<CountCell>& cells) {
      const Checkpoint& cp = *active[g];
      const std::size_t k = static_cast<std::size_t>(cp.k.ToDouble());
      std::int64_t right = 0, wrong = 0;
      for (const CountCell& c : cells) {
        const SupportPoint& s = *by_x.at(c.x);
        if (s.index > k && c.n0 + c.n1 > 0) return false;
        if (s.index == k) {
          right += s.y ? c.n1 : c.n0;
          wrong += s.y ? c.n0 : c.n1;
        }
      }
      return wrong >= right;
    };
  }
  prefix_len = std::max(prefix_len, construction.RequiredPrefix());
  run.curve = EstimateCurve(cls, construction.dist, TiePolicy::kAdversarialWorst,
                            grid, reps, seed, prefix_len, opts);
  for (std::size_t g = 0; g < active.size(); ++g) {
    run.rows.push_back(CompareOne(*active[g], construction.kind, run.curve, g));
  }
  return run;
}

std::string CurveToCsv(const LearningCurve& curve) {
  std::ostringstream os;
  os.precision(17);
  os << "n,mean_excess,stderr,replications,scenario_id\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    os << curve.grid[i] << ',' << curve.means[i] << ',' << curve.stderrs[i]
       << ',' << curve.replications[i] << ',' << curve.scenario_id << '\n';
  }
  return os.str();
}

}  // namespace urate
