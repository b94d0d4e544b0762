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

#include "urate/construction.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "urate/error.h"

namespace urate {
namespace {

// (1 - tail)^n without forming n in double precision when it is huge.
double SurvivalPower(const ExtendedReal& tail, const ExtendedReal& n) {
  const double t = tail.ToDouble();
  if (t >= 1.0) return 0.0;
  if (t > 1e-8) return std::exp(n.ToDouble() * std::log1p(-t));
  return std::exp(-(n * tail).ToDouble());
}

std::size_t AsIndex(const ExtendedReal& k, std::size_t available,
                    const char* what) {
  const double v = k.ToDouble();
  if (!(v <= static_cast<double>(available))) {
    std::ostringstream os;
    os << what << " needs index " << k.ToString() << " but the sequence has "
       << available;
    throw Error(ErrorCode::kSequenceTooShort, os.str());
  }
  return static_cast<std::size_t>(v);
}

LabeledDistribution SupportDistribution(const std::string& id,
                                        const std::vector<SupportPoint>& pts,
                                        double inf_error) {
  std::vector<Atom> atoms;
  for (const SupportPoint& s : pts) {
    atoms.push_back({s.x, s.mass, s.y ? 0.5 + s.eps : 0.5 - s.eps});
  }
  return LabeledDistribution::Tabulated(id, std::move(atoms))
      .WithClosedForms({}, inf_error);
}

double InfError(const std::vector<SupportPoint>& pts) {
  double e = 0.0;
  for (const SupportPoint& s : pts) e += s.mass * (0.5 - s.eps);
  return e;
}

}  // namespace

std::string ConstructionKindName(ConstructionKind kind) {
  return kind == ConstructionKind::kEluderLower ? "eluder_lower"
                                                : "vc_eluder_lower";
}

double AdversarialConstruction::Excess(const Hypothesis& h) const {
  double e = 0.0;
  for (const SupportPoint& s : support) {
    if (h(s.x) != s.y) e += 2.0 * s.mass * s.eps;
  }
  return e;
}

std::size_t AdversarialConstruction::RequiredPrefix() const {
  std::size_t need = 1;
  for (const Checkpoint& c : checkpoints) {
    need = std::max<std::size_t>(need, c.witness + 1);
  }
  return need;
}

AdversarialConstruction BuildEluderAdversarial(const EluderSequence& seq,
                                               const RateFunction& rate,
                                               int t_max) {
  SequenceDesign d = DesignSequence(rate, t_max, DesignMode::kEluder);
  const std::size_t need = t_max + (d.residual > 0.0 ? 1 : 0);
  if (seq.steps.size() < need) {
    throw Error(ErrorCode::kSequenceTooShort,
                "eluder sequence has " + std::to_string(seq.steps.size()) +
                    " steps, construction needs " + std::to_string(need));
  }
  std::vector<SupportPoint> pts;
  for (int t = 0; t < t_max; ++t) {
    const EluderStep& s = seq.steps[t];
    pts.push_back({s.x, s.y, d.p[t].ToDouble(), d.eps[t].ToDouble(),
                   static_cast<std::size_t>(t + 1), d.p[t], d.eps[t]});
  }
  if (d.residual > 0.0) {
    const EluderStep& s = seq.steps[t_max];
    const ExtendedReal eps = d.eps.back() * ExtendedReal(0.5);
    pts.push_back({s.x, s.y, d.residual, eps.ToDouble(),
                   static_cast<std::size_t>(t_max + 1), ExtendedReal(d.residual),
                   eps});
  }
  const double inf = InfError(pts);
  AdversarialConstruction c{
      ConstructionKind::kEluderLower, d,
      SupportDistribution("eluder_lower(" + rate.Name() + ",t_max=" +
                              std::to_string(t_max) + ")",
                          pts, inf),
      seq.center, pts, {}, inf, {}};
  for (int t = 0; t < t_max; ++t) {
    Checkpoint cp;
    cp.t = t + 1;
    cp.n = d.n[t];
    cp.k = d.k[t];
    cp.tail = d.tail[t];
    const double surv = SurvivalPower(d.tail[t], d.n[t]);
    const ExtendedReal lead =
        d.p[t] / (ExtendedReal(5.0) * Sqrt(ExtendedReal(8.0) * d.n[t]));
    cp.predicted_bound = lead.ToDouble() * surv;
    cp.event_probability_bound = 0.1 * surv;
    cp.exact_form_bound = cp.predicted_bound;
    cp.point = seq.steps[t].x;
    cp.witness = seq.steps[t].witness;
    c.checkpoints.push_back(cp);
  }
  c.verification = d.conditions;
  return c;
}

AdversarialConstruction BuildVcEluderAdversarial(const VcEluderSequence& seq,
                                                 const RateFunction& rate,
                                                 int t_max) {
  SequenceDesign d = DesignSequence(rate, t_max, DesignMode::kVcEluder);
  std::vector<SupportPoint> pts;
  std::vector<std::size_t> blocks;
  for (int t = 0; t < t_max; ++t) {
    blocks.push_back(AsIndex(d.k[t], seq.blocks.size(), "checkpoint block"));
  }
  auto spread = [&](std::size_t block, const ExtendedReal& mass) {
    const std::vector<Instance>& xs = seq.blocks.at(block - 1);
    const ExtendedReal each = mass / ExtendedReal(static_cast<double>(xs.size()));
    for (Instance x : xs) {
      pts.push_back({x, seq.center(x), each.ToDouble(), 0.25, block, each,
                     ExtendedReal(0.25)});
    }
  };
  for (int t = 0; t < t_max; ++t) spread(blocks[t], d.p[t]);
  if (d.residual > 0.0) {
    spread(AsIndex(d.k.back() + ExtendedReal(1.0), seq.blocks.size(),
                   "residual block"),
           ExtendedReal(d.residual));
  }
  std::sort(pts.begin(), pts.end(),
            [](const SupportPoint& a, const SupportPoint& b) { return a.x < b.x; });
  const double inf = InfError(pts);
  AdversarialConstruction c{
      ConstructionKind::kVcEluderLower, d,
      SupportDistribution("vc_eluder_lower(" + rate.Name() + ",t_max=" +
                              std::to_string(t_max) + ")",
                          pts, inf),
      seq.center, pts, {}, inf, {}};
  for (int t = 0; t < t_max; ++t) {
    Checkpoint cp;
    cp.t = t + 1;
    cp.n = d.n[t];
    cp.k = d.k[t];
    cp.tail = d.tail[t];
    cp.predicted_bound = rate.At(d.n[t]).ToDouble() / 36.0;
    const double p = d.p[t].ToDouble();
    const double k = d.k[t].ToDouble();
    const double base = 1.0 - d.tail[t].ToDouble() - p / k;
    cp.exact_form_bound =
        base <= 0.0 ? 0.0 : 0.5 * p * std::pow(base, d.n[t].ToDouble());
    const std::vector<Instance>& xs = seq.blocks[blocks[t] - 1];
    cp.point = xs.front();
    // Witness realizing the all-wrong pattern on the block.
    for (const PatternWitness& pw : seq.certificates[blocks[t] - 1]) {
      bool all_wrong = true;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        all_wrong = all_wrong && pw.pattern[j] != seq.center(xs[j]);
      }
      if (all_wrong) cp.witness = pw.witness;
    }
    c.checkpoints.push_back(cp);
  }
  c.verification = d.conditions;
  return c;
}

std::vector<ConditionResult> VerifyConstruction(
    const AdversarialConstruction& c, const ConceptClass& cls,
    std::size_t depth) {
  std::vector<ConditionResult> out = VerifyDesign(c.design);
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  double total = 0.0;
  bool margins = true;
  bool bayes = true;
  std::size_t rounded_ties = 0;
  const Hypothesis bayes_h = BayesClassifier(c.dist);
  const ExtendedReal half(0.5);
  for (const SupportPoint& s : c.support) {
    total += s.mass;
    margins = margins && !s.exact_eps.is_zero() && s.exact_eps <= half;
    if (s.exact_mass.is_zero()) continue;
    // eta = 1/2 + eps can round to 1/2; the exact margin still decides.
    if (c.dist.Eta(s.x) == 0.5) {
      ++rounded_ties;
    } else {
      bayes = bayes && bayes_h(s.x) == s.y;
    }
  }
  add("support_mass_is_one", std::fabs(total - 1.0) <= 1e-9,
      "sum = " + std::to_string(total));
  add("margins_in_range", margins, "");
  add("bayes_equals_center_on_support", bayes,
      rounded_ties == 0 ? ""
                        : std::to_string(rounded_ties) +
                              " points have eta rounding to 1/2 in double "
                              "precision; decided by the exact margin");

  const std::vector<Hypothesis> prefix = cls.Enumerate(depth);
  double min_excess = 1.0;
  std::optional<ExtendedReal> min_dis;
  for (const Hypothesis& h : prefix) {
    min_excess = std::min(min_excess, c.Excess(h));
    ExtendedReal dis;
    for (const SupportPoint& s : c.support) {
      if (h(s.x) != s.y) dis = dis + s.exact_mass;
    }
    if (!dis.is_zero() && (!min_dis || dis < *min_dis)) min_dis = dis;
  }
  add("center_attains_inf", min_excess >= 0.0,
      "min excess over prefix = " + std::to_string(min_excess));
  const Checkpoint& last = c.checkpoints.back();
  ExtendedReal last_mass;
  for (const SupportPoint& s : c.support) {
    if (s.index == static_cast<std::size_t>(last.k.ToDouble())) {
      last_mass = last_mass + s.exact_mass;
    }
  }
  const ExtendedReal centering_cap = last_mass + last.tail;
  add("disagreement_shrinks",
      !min_dis || ApproxLessEqual(*min_dis, centering_cap, 1e-12),
      "min positive P(h != center) = " +
          (min_dis ? min_dis->ToString() : std::string("none")) +
          " vs last checkpoint mass + tail = " + centering_cap.ToString());

  double prev = 2.0;
  bool monotone = true;
  bool floor_ok = true;
  bool present = true;
  for (const Checkpoint& cp : c.checkpoints) {
    const auto w = cls.At(cp.witness);
    if (!w || cp.witness >= prefix.size()) {
      present = false;
      continue;
    }
    const double e = c.Excess(*w);
    double floor = 0.0;
    for (const SupportPoint& s : c.support) {
      if (s.index == static_cast<std::size_t>(cp.k.ToDouble())) {
        floor += 2.0 * s.mass * s.eps;
      }
    }
    floor_ok = floor_ok && e >= floor * (1.0 - 1e-12);
    monotone = monotone && e <= prev * (1.0 + 1e-12);
    prev = e;
  }
  add("witnesses_within_depth", present,
      "required prefix " + std::to_string(c.RequiredPrefix()));
  add("witness_excess_at_least_checkpoint_term", floor_ok, "");
  add("witness_excess_non_increasing", monotone, "");
  return out;
}

}  // namespace urate
