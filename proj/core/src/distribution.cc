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
#include <cstdio>
#include <limits>
#include <utility>

#include "urate/error.h"

namespace urate {

struct LabeledDistribution::State {
  std::string id;
  // Tabulated supports.
  std::vector<Atom> atoms;
  std::vector<double> suffix;  // suffix[k] = mass of atoms[k..]
  // Countable supports.
  bool countable = false;
  std::function<double(Instance)> mass;
  std::function<double(Instance)> eta;
  std::function<double(Instance)> tail;
  // Metadata.
  ErrorMap errors;
  std::optional<double> inf_error;
};

namespace {

constexpr double kMassSlack = 1e-9;

void CheckUnit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, std::string(what) + " outside [0,1]");
  }
}

}  // namespace

LabeledDistribution LabeledDistribution::Tabulated(std::string id,
                                                   std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorCode::kInvalidParams, "empty support");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    CheckUnit(atoms[i].mass, "mass");
    CheckUnit(atoms[i].eta, "eta");
    if (i > 0 && atoms[i].x == atoms[i - 1].x) {
      throw Error(ErrorCode::kInvalidParams, "repeated support point");
    }
    total += atoms[i].mass;
  }
  if (std::fabs(total - 1.0) > kMassSlack) {
    throw Error(ErrorCode::kInvalidParams, "masses do not sum to 1");
  }
  auto s = std::make_shared<State>();
  s->id = std::move(id);
  s->suffix.assign(atoms.size() + 1, 0.0);
  for (std::size_t i = atoms.size(); i-- > 0;) {
    s->suffix[i] = s->suffix[i + 1] + atoms[i].mass;
  }
  s->atoms = std::move(atoms);
  return LabeledDistribution(std::move(s));
}

LabeledDistribution LabeledDistribution::Countable(
    std::string id, std::function<double(Instance)> mass,
    std::function<double(Instance)> eta, std::function<double(Instance)> tail) {
  if (!mass || !eta) {
    throw Error(ErrorCode::kInvalidParams, "countable support needs mass and eta");
  }
  auto s = std::make_shared<State>();
  s->id = std::move(id);
  s->countable = true;
  s->mass = std::move(mass);
  s->eta = std::move(eta);
  s->tail = std::move(tail);
  return LabeledDistribution(std::move(s));
}

const std::string& LabeledDistribution::id() const { return state_->id; }
bool LabeledDistribution::tabulated() const { return !state_->countable; }

std::optional<std::size_t> LabeledDistribution::support_size() const {
  if (state_->countable) return std::nullopt;
  return state_->atoms.size();
}

bool LabeledDistribution::has_closed_form_tail() const {
  return !state_->countable || static_cast<bool>(state_->tail);
}

Atom LabeledDistribution::AtomAt(std::size_t k) const {
  if (state_->countable) {
    return {k, state_->mass(k), state_->eta(k)};
  }
  return state_->atoms.at(k);
}

std::vector<Atom> LabeledDistribution::Atoms(std::size_t truncation) const {
  std::size_t m = truncation;
  if (!state_->countable) m = std::min(m, state_->atoms.size());
  std::vector<Atom> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) out.push_back(AtomAt(k));
  return out;
}

double LabeledDistribution::TailMass(std::size_t k) const {
  if (!state_->countable) {
    return k >= state_->atoms.size() ? 0.0 : state_->suffix[k];
  }
  if (state_->tail) return state_->tail(k);
  double head = 0.0;
  for (std::size_t i = 0; i < k; ++i) head += state_->mass(i);
  return std::max(0.0, 1.0 - head);
}

double LabeledDistribution::Mass(Instance x) const {
  if (state_->countable) return state_->mass(x);
  auto it = std::lower_bound(
      state_->atoms.begin(), state_->atoms.end(), x,
      [](const Atom& a, Instance v) { return a.x < v; });
  return it != state_->atoms.end() && it->x == x ? it->mass : 0.0;
}

double LabeledDistribution::Eta(Instance x) const {
  if (state_->countable) return state_->eta(x);
  auto it = std::lower_bound(
      state_->atoms.begin(), state_->atoms.end(), x,
      [](const Atom& a, Instance v) { return a.x < v; });
  return it != state_->atoms.end() && it->x == x ? it->eta : 0.5;
}

LabeledDistribution LabeledDistribution::WithClosedForms(
    ErrorMap errors, std::optional<double> inf_error) const {
  auto s = std::make_shared<State>(*state_);
  s->errors = std::move(errors);
  s->inf_error = inf_error;
  return LabeledDistribution(std::move(s));
}

std::optional<double> LabeledDistribution::ClosedFormError(
    const Hypothesis& h) const {
  if (!state_->errors) return std::nullopt;
  return state_->errors(h);
}

std::optional<double> LabeledDistribution::closed_form_inf() const {
  return state_->inf_error;
}

LabeledDistribution PointMass(Instance x, double eta) {
  return LabeledDistribution::Tabulated(
      "point_mass(" + std::to_string(x) + ")", {{x, 1.0, eta}});
}

LabeledDistribution GeometricDistribution(std::function<double(Instance)> eta,
                                          std::string id) {
  return LabeledDistribution::Countable(
      std::move(id), [](Instance x) { return std::ldexp(1.0, -int(std::min<Instance>(x, 2000)) - 1); },
      std::move(eta),
      [](Instance k) { return std::ldexp(1.0, -int(std::min<Instance>(k, 2000))); });
}

LabeledDistribution Example5Distribution(double eps, std::optional<double> eta0) {
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw Error(ErrorCode::kInvalidParams, "Example5 needs 0 < eps <= 1/2");
  }
  // Mass 1/2 on x >= 1 with constant eta 1/2 - eps, so P(Y=1 | X >= 1)
  // is 1/2 - eps as well.
  const double eta_pos = 0.5 - eps;
  const double e0 = eta0.value_or(eta_pos);
  CheckUnit(e0, "eta(0)");
  auto mass = [](Instance x) {
    return x == 0 ? 0.5 : std::ldexp(1.0, -int(std::min<Instance>(x, 2000)) - 1);
  };
  auto eta = [e0, eta_pos](Instance x) { return x == 0 ? e0 : eta_pos; };
  auto tail = [](Instance k) {
    return k == 0 ? 1.0 : std::ldexp(1.0, -int(std::min<Instance>(k, 2000)));
  };
  // Closed forms for the Example5 enumeration (ids: 0 -> h*_1, 1 -> h*_2,
  // i + 1 -> h_i).
  const double pos_err_label0 = 0.5 * eta_pos;        // h = 0 on x >= 1
  const double pos_err_label1 = 0.5 * (1.0 - eta_pos);  // h = 1 on x >= 1
  const double er1 = 0.5 * (1.0 - e0) + pos_err_label0;
  const double er2 = 0.5 * e0 + pos_err_label1;
  auto errors = [er1, er2, eps](const Hypothesis& h) -> std::optional<double> {
    if (h.name() == "h*_1") return er1;
    if (h.name() == "h*_2") return er2;
    if (h.name().rfind("h_", 0) == 0 && h.id() >= 2 && h.id() != kExternalId) {
      const Instance i = h.id() - 1;
      return er1 + 2.0 * std::ldexp(1.0, -int(std::min<Instance>(i, 2000)) - 1) * eps;
    }
    return std::nullopt;
  };
  char id[64];
  std::snprintf(id, sizeof(id), "example5(eps=%g,eta0=%g)", eps, e0);
  return LabeledDistribution::Countable(id, mass, eta, tail)
      .WithClosedForms(errors, std::min(er1, er2));
}

LabeledDistribution FiniteFixtureDistribution() {
  return LabeledDistribution::Tabulated("finite_fixture",
                                        {{0, 0.5, 0.9}, {1, 0.5, 0.3}});
}

ConceptClass FiniteFixtureClass() {
  ClassParams p;
  p.table = {{1, 0}, {1, 1}, {0, 0}};
  return MakeBuiltin(ClassKind::kFinite, p);
}

LabeledDistribution ThresholdsBenignDistribution() {
  std::vector<Atom> atoms;
  for (Instance x = 0; x < 6; ++x) atoms.push_back({x, 1.0 / 6.0, x < 3 ? 0.2 : 0.8});
  return LabeledDistribution::Tabulated("thresholds_benign", atoms);
}

Dataset Sample(const LabeledDistribution& dist, std::size_t n,
               std::uint64_t seed) {
  if (!dist.has_closed_form_tail()) {
    throw Error(ErrorCode::kTailNotClosedForm,
                "sampling '" + dist.id() + "' needs a closed-form tail");
  }
  Dataset data;
  data.provenance = Provenance{seed, dist.id()};
  data.examples.reserve(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto size = dist.support_size();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unif(rng);
    // Smallest k with P(X <= atom k) > u, i.e. TailMass(k + 1) < 1 - u.
    std::size_t k = 0;
    while (true) {
      if (size && k + 1 >= *size) break;
      if (dist.TailMass(k + 1) < 1.0 - u) break;
      ++k;
    }
    const Atom a = dist.AtomAt(k);
    std::bernoulli_distribution label(a.eta);
    data.examples.push_back({a.x, Bit(label(rng) ? 1 : 0)});
  }
  return data;
}

std::vector<CountCell> SampleCounts(const LabeledDistribution& dist,
                                    std::int64_t n, std::mt19937_64& rng) {
  if (!dist.has_closed_form_tail()) {
    throw Error(ErrorCode::kTailNotClosedForm,
                "sampling '" + dist.id() + "' needs a closed-form tail");
  }
  std::vector<CountCell> cells;
  std::int64_t remaining = n;
  const auto size = dist.support_size();
  for (std::size_t k = 0; remaining > 0; ++k) {
    const Atom a = dist.AtomAt(k);
    std::int64_t c = remaining;
    const bool last = size && k + 1 == *size;
    if (!last) {
      const double rest = dist.TailMass(k);
      const double p = rest > 0.0 ? std::clamp(a.mass / rest, 0.0, 1.0) : 1.0;
      c = std::binomial_distribution<std::int64_t>(remaining, p)(rng);
    }
    if (c == 0) continue;
    remaining -= c;
    const std::int64_t ones =
        std::binomial_distribution<std::int64_t>(c, a.eta)(rng);
    cells.push_back({k, a.x, c - ones, ones});
  }
  return cells;
}

namespace {

double PointError(Bit label, const Atom& a) {
  return a.mass * (label ? 1.0 - a.eta : a.eta);
}

}  // namespace

Interval TrueError(const Hypothesis& h, const LabeledDistribution& dist,
                   std::size_t truncation) {
  if (auto cf = dist.ClosedFormError(h)) return Interval::Point(*cf);
  double lo = 0.0;
  const std::vector<Atom> atoms = dist.Atoms(truncation);
  for (const Atom& a : atoms) lo += PointError(h(a.x), a);
  return {lo, lo + dist.TailMass(atoms.size())};
}

Interval DisagreementMass(const Hypothesis& h, const Hypothesis& g,
                          const LabeledDistribution& dist,
                          std::size_t truncation) {
  double lo = 0.0;
  const std::vector<Atom> atoms = dist.Atoms(truncation);
  for (const Atom& a : atoms) {
    if (h(a.x) != g(a.x)) lo += a.mass;
  }
  return {lo, lo + dist.TailMass(atoms.size())};
}

Hypothesis BayesClassifier(const LabeledDistribution& dist) {
  return Hypothesis(kExternalId, "bayes[" + dist.id() + "]",
                    [dist](Instance x) { return Bit(dist.Eta(x) >= 0.5); });
}

Interval PrefixProfile::Disagreement(std::size_t i, std::size_t j) const {
  double lo = 0.0;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (labels[i][a] != labels[j][a]) lo += atoms[a].mass;
  }
  return {lo, lo + tail};
}

PrefixProfile ProfilePrefix(std::vector<Hypothesis> prefix,
                            const LabeledDistribution& dist,
                            std::size_t truncation) {
  PrefixProfile p;
  p.prefix = std::move(prefix);
  p.atoms = dist.Atoms(truncation);
  p.tail = dist.TailMass(p.atoms.size());
  p.labels.resize(p.prefix.size());
  p.errors.resize(p.prefix.size());
  for (std::size_t i = 0; i < p.prefix.size(); ++i) {
    const Hypothesis& h = p.prefix[i];
    p.labels[i].resize(p.atoms.size());
    double lo = 0.0;
    for (std::size_t a = 0; a < p.atoms.size(); ++a) {
      p.labels[i][a] = h(p.atoms[a].x);
      lo += PointError(p.labels[i][a], p.atoms[a]);
    }
    if (auto cf = dist.ClosedFormError(h)) {
      p.errors[i] = Interval::Point(*cf);
    } else {
      p.errors[i] = {lo, lo + p.tail};
    }
  }
  if (auto inf = dist.closed_form_inf()) {
    p.inf = Interval::Point(*inf);
  } else if (!p.errors.empty()) {
    p.inf = {std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()};
    for (const Interval& e : p.errors) {
      p.inf.lo = std::min(p.inf.lo, e.lo);
      p.inf.hi = std::min(p.inf.hi, e.hi);
    }
  }
  p.excess.resize(p.prefix.size());
  for (std::size_t i = 0; i < p.prefix.size(); ++i) {
    p.excess[i] = {p.errors[i].lo - p.inf.hi, p.errors[i].hi - p.inf.lo};
  }
  return p;
}

Interval ExcessInf(const ConceptClass& cls, const LabeledDistribution& dist,
                   std::size_t depth, std::size_t truncation) {
  if (depth == 0) throw Error(ErrorCode::kInvalidParams, "depth must be >= 1");
  if (auto inf = dist.closed_form_inf()) return Interval::Point(*inf);
  return ProfilePrefix(cls.Enumerate(depth), dist, truncation).inf;
}

CenteringReport IsCentered(const LabeledDistribution& dist,
                           const ConceptClass& cls, const Hypothesis& h_star,
                           std::size_t depth, double tol,
                           std::size_t truncation) {
  CenteringReport r;
  r.center_error = TrueError(h_star, dist, truncation);
  r.inf_error = ExcessInf(cls, dist, depth, truncation);
  // Matching within tol: the two intervals come within tol of each other.
  r.error_match = r.center_error.lo <= r.inf_error.hi + tol &&
                  r.inf_error.lo <= r.center_error.hi + tol;
  double running = 1.0;
  for (const Hypothesis& h : cls.Enumerate(depth)) {
    running = std::min(running, DisagreementMass(h, h_star, dist, truncation).mid());
    r.disagreement_trace.push_back(running);
  }
  r.disagreement_inf_estimate = running;
  return r;
}

double Condition1Gap(const ConceptClass& cls, const LabeledDistribution& dist,
                     std::size_t depth, std::size_t truncation) {
  const PrefixProfile p = ProfilePrefix(cls.Enumerate(depth), dist, truncation);
  double gap = 1.0;  // inf over the empty set
  for (const Interval& e : p.excess) {
    if (e.mid() > kExcessTolerance) gap = std::min(gap, e.mid());
  }
  return gap;
}

BallReport EpsilonBall(const ConceptClass& cls, const LabeledDistribution& dist,
                       double eps, std::size_t depth, std::size_t truncation) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidParams, "eps must be > 0");
  const PrefixProfile p = ProfilePrefix(cls.Enumerate(depth), dist, truncation);
  BallReport r;
  const double t = kExcessTolerance;
  for (std::size_t i = 0; i < p.prefix.size(); ++i) {
    const Interval& e = p.excess[i];
    const HypothesisId id = p.prefix[i].id();
    if (e.lo > t && e.hi <= eps + t) {
      r.ids.push_back(id);
    } else if ((e.lo <= t && e.hi > t) || (e.lo <= eps + t && e.hi > eps + t)) {
      r.borderline.push_back(id);
    }
  }
  return r;
}

std::vector<double> DefaultTauGrid(double eps) {
  std::vector<double> g;
  for (int j = 0; j <= 10; ++j) g.push_back(std::ldexp(eps, -j));
  return g;
}

SigmaReport SigmaSqEps(const PrefixProfile& p, double eps,
                       const std::vector<double>& tau_grid) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kInvalidParams, "eps must be > 0");
  if (tau_grid.empty()) throw Error(ErrorCode::kInvalidParams, "empty tau grid");
  for (std::size_t j = 1; j < tau_grid.size(); ++j) {
    if (!(tau_grid[j] < tau_grid[j - 1])) {
      throw Error(ErrorCode::kInvalidParams, "tau grid must decrease");
    }
  }
  SigmaReport r;
  r.tau_grid = tau_grid;
  auto ball = [&](double radius) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < p.prefix.size(); ++i) {
      if (p.excess[i].mid() <= radius + kExcessTolerance) members.push_back(i);
    }
    return members;
  };
  const std::vector<std::size_t> outer = ball(eps);
  for (std::size_t i : outer) r.ball.push_back(p.prefix[i].id());
  if (outer.empty()) {
    r.note = "empty ball; sup over the empty set taken as 0";
    r.per_tau.assign(tau_grid.size(), 0.0);
    return r;
  }
  std::optional<double> last_nonempty;
  for (double tau : tau_grid) {
    const std::vector<std::size_t> inner = ball(tau);
    if (inner.empty()) {
      r.per_tau.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    double sup = 0.0;
    for (std::size_t i : outer) {
      double inf = 1.0;
      for (std::size_t j : inner) inf = std::min(inf, p.Disagreement(i, j).mid());
      sup = std::max(sup, inf);
    }
    r.per_tau.push_back(sup);
    last_nonempty = sup;
  }
  r.empty_tau_ball = std::isnan(r.per_tau.back());
  if (r.empty_tau_ball) {
    r.note = "empty-tau-ball: the smallest tau ball is empty; using the "
             "smallest tau with members";
  }
  r.value = last_nonempty.value_or(0.0);
  double prev = -1.0;
  for (double v : r.per_tau) {
    if (std::isnan(v)) continue;
    if (v + kExcessTolerance < prev) r.monotone = false;
    prev = v;
  }
  return r;
}

SigmaReport SigmaSqEps(const ConceptClass& cls, const LabeledDistribution& dist,
                       double eps, std::size_t depth,
                       const std::vector<double>& tau_grid,
                       std::size_t truncation) {
  return SigmaSqEps(ProfilePrefix(cls.Enumerate(depth), dist, truncation), eps,
                    tau_grid);
}

}  // namespace urate
