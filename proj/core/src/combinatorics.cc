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

#include "urate/combinatorics.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "urate/error.h"

namespace urate {
namespace {

Pattern PatternFromIndex(std::uint64_t index, std::size_t k) {
  Pattern p(k);
  for (std::size_t j = 0; j < k; ++j) p[j] = Bit((index >> (k - 1 - j)) & 1U);
  return p;
}

std::uint64_t PatternIndex(const Hypothesis& h,
                           const std::vector<Instance>& points) {
  std::uint64_t v = 0;
  for (Instance x : points) v = (v << 1) | h(x);
  return v;
}

// Label table of a prefix on instances 0..T-1.
struct LabelTable {
  std::vector<std::vector<Bit>> rows;

  LabelTable(const std::vector<Hypothesis>& prefix, Instance t) {
    rows.resize(prefix.size(), std::vector<Bit>(t));
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      for (Instance x = 0; x < t; ++x) rows[i][x] = prefix[i](x);
    }
  }
};

// Shattering test on a subset of prefix rows, by table lookups.
bool ShatteredBy(const LabelTable& table, const std::vector<std::size_t>& rows,
                 const std::vector<Instance>& points) {
  const std::size_t k = points.size();
  if (k >= 63) return false;
  const std::uint64_t need = std::uint64_t{1} << k;
  if (rows.size() < need) return false;
  std::vector<bool> seen(need, false);
  std::uint64_t count = 0;
  for (std::size_t r : rows) {
    std::uint64_t v = 0;
    for (Instance x : points) v = (v << 1) | table.rows[r][x];
    if (!seen[v]) {
      seen[v] = true;
      if (++count == need) return true;
    }
  }
  return false;
}

std::string Id(HypothesisId id) { return "#" + std::to_string(id); }

}  // namespace

std::string SearchBudget::Describe() const {
  std::ostringstream os;
  os << "prefix<=" << max_prefix << ", instances<" << max_instance
     << ", nodes<=" << max_nodes;
  return os.str();
}

ShatterResult IsShattered(const std::vector<Hypothesis>& prefix,
                          const std::vector<Instance>& points) {
  if (points.size() > 63) {
    throw Error(ErrorCode::kInvalidParams, "at most 63 points");
  }
  std::vector<Instance> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidParams, "points must be distinct");
  }
  const std::size_t k = points.size();
  std::unordered_map<std::uint64_t, HypothesisId> first;
  for (const Hypothesis& h : prefix) first.emplace(PatternIndex(h, points), h.id());
  ShatterResult r;
  const std::uint64_t need = std::uint64_t{1} << k;
  for (std::uint64_t i = 0; i < need; ++i) {
    auto it = first.find(i);
    if (it == first.end()) {
      r.missing = PatternFromIndex(i, k);
      r.witnesses.clear();
      return r;
    }
    r.witnesses.push_back({PatternFromIndex(i, k), it->second});
  }
  r.shattered = true;
  return r;
}

VcResult VcDimension(const std::vector<Hypothesis>& prefix,
                     const std::vector<Instance>& domain, int cap) {
  if (cap < 1) throw Error(ErrorCode::kInvalidParams, "cap must be >= 1");
  VcResult best;
  if (prefix.empty()) return best;
  std::vector<Instance> dom = domain;
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  const Instance t = dom.empty() ? 0 : dom.back() + 1;
  const LabelTable table(prefix, t);
  std::vector<std::size_t> all(prefix.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  // Shattered sets are closed under subsets, so depth-first extension of
  // shattered sets visits every shattered set.
  std::vector<Instance> cur;
  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (best.reached_cap) return;
    if (static_cast<int>(cur.size()) > best.value) {
      best.value = static_cast<int>(cur.size());
      best.certificate = cur;
      if (best.value >= cap) {
        best.reached_cap = true;
        return;
      }
    }
    for (std::size_t i = start; i < dom.size(); ++i) {
      cur.push_back(dom[i]);
      if (ShatteredBy(table, all, cur)) dfs(i + 1);
      cur.pop_back();
      if (best.reached_cap) return;
    }
  };
  dfs(0);
  return best;
}

std::optional<EluderSequence> FindEluder(const ConceptClass& cls,
                                         const Hypothesis& center,
                                         std::size_t target_len,
                                         const SearchBudget& budget) {
  if (target_len < 1) throw Error(ErrorCode::kInvalidParams, "target_len >= 1");
  const std::vector<Hypothesis> prefix = cls.Enumerate(budget.max_prefix);
  const LabelTable table(prefix, budget.max_instance);
  std::vector<std::size_t> consistent(prefix.size());
  for (std::size_t i = 0; i < consistent.size(); ++i) consistent[i] = i;
  std::vector<bool> used(budget.max_instance, false);
  EluderSequence seq{{}, center};
  while (seq.steps.size() < target_len) {
    bool extended = false;
    for (Instance x = 0; x < budget.max_instance && !extended; ++x) {
      if (used[x]) continue;
      const Bit y = center(x);
      std::optional<std::size_t> witness;
      bool realizable = false;
      for (std::size_t r : consistent) {
        if (table.rows[r][x] != y) {
          if (!witness) witness = r;
        } else {
          realizable = true;
        }
        if (witness && realizable) break;
      }
      if (!witness || !realizable) continue;
      seq.steps.push_back({x, y, prefix[*witness].id()});
      used[x] = true;
      std::erase_if(consistent,
                    [&](std::size_t r) { return table.rows[r][x] != y; });
      extended = true;
    }
    if (!extended) return std::nullopt;
  }
  return seq;
}

std::optional<StarSet> FindStarSet(const ConceptClass& cls,
                                   const Hypothesis& center, std::size_t size,
                                   const SearchBudget& budget) {
  if (size < 1) throw Error(ErrorCode::kInvalidParams, "size >= 1");
  const std::vector<Hypothesis> prefix = cls.Enumerate(budget.max_prefix);
  const LabelTable table(prefix, budget.max_instance);
  std::vector<Bit> c(budget.max_instance);
  for (Instance x = 0; x < budget.max_instance; ++x) c[x] = center(x);
  // Instances where at least one hypothesis disagrees with the center.
  std::vector<Instance> cand;
  for (Instance x = 0; x < budget.max_instance; ++x) {
    for (std::size_t r = 0; r < prefix.size(); ++r) {
      if (table.rows[r][x] != c[x]) {
        cand.push_back(x);
        break;
      }
    }
  }
  auto witnesses_for = [&](const std::vector<Instance>& pts)
      -> std::optional<std::vector<HypothesisId>> {
    std::vector<HypothesisId> w;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::optional<HypothesisId> found;
      for (std::size_t r = 0; r < prefix.size() && !found; ++r) {
        bool ok = true;
        for (std::size_t j = 0; j < pts.size() && ok; ++j) {
          const bool differs = table.rows[r][pts[j]] != c[pts[j]];
          ok = differs == (i == j);
        }
        if (ok) found = prefix[r].id();
      }
      if (!found) return std::nullopt;
      w.push_back(*found);
    }
    return w;
  };
  std::size_t nodes = 0;
  std::vector<Instance> cur;
  std::optional<StarSet> result;
  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (cur.size() == size) {
      result = StarSet{cur, center, *witnesses_for(cur)};
      return;
    }
    for (std::size_t i = start; i < cand.size() && !result; ++i) {
      if (++nodes > budget.max_nodes) return;
      cur.push_back(cand[i]);
      // Star sets are closed under subsets.
      if (witnesses_for(cur)) dfs(i + 1);
      cur.pop_back();
    }
  };
  dfs(0);
  return result;
}

std::optional<VcEluderSequence> FindVcEluder(const ConceptClass& cls,
                                             const Hypothesis& center,
                                             std::size_t k_max,
                                             const SearchBudget& budget) {
  if (k_max < 1) throw Error(ErrorCode::kInvalidParams, "k_max >= 1");
  const std::vector<Hypothesis> prefix = cls.Enumerate(budget.max_prefix);
  const LabelTable table(prefix, budget.max_instance);
  std::vector<std::size_t> version(prefix.size());
  for (std::size_t i = 0; i < version.size(); ++i) version[i] = i;
  std::vector<bool> used(budget.max_instance, false);
  VcEluderSequence seq{{}, center, {}};
  std::size_t nodes = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    // A shattered point needs both labels inside the version space.
    std::vector<Instance> cand;
    for (Instance x = 0; x < budget.max_instance; ++x) {
      if (used[x]) continue;
      bool zero = false;
      bool one = false;
      for (std::size_t r : version) {
        (table.rows[r][x] ? one : zero) = true;
        if (zero && one) break;
      }
      if (zero && one) cand.push_back(x);
    }
    std::vector<Instance> cur;
    std::optional<std::vector<Instance>> block;
    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
      if (cur.size() == k) {
        block = cur;
        return;
      }
      for (std::size_t i = start; i < cand.size() && !block; ++i) {
        if (cand.size() - i < k - cur.size()) return;
        if (++nodes > budget.max_nodes) return;
        cur.push_back(cand[i]);
        if (ShatteredBy(table, version, cur)) dfs(i + 1);
        cur.pop_back();
      }
    };
    dfs(0);
    if (!block) return std::nullopt;
    std::vector<Hypothesis> vs;
    for (std::size_t r : version) vs.push_back(prefix[r]);
    seq.certificates.push_back(IsShattered(vs, *block).witnesses);
    for (Instance x : *block) {
      used[x] = true;
      const Bit y = center(x);
      std::erase_if(version,
                    [&](std::size_t r) { return table.rows[r][x] != y; });
    }
    seq.blocks.push_back(*block);
  }
  return seq;
}

EluderSequence ExtractEluderFromVanishingDistance(
    const ConceptClass& cls, const LabeledDistribution& dist,
    const Hypothesis& center, std::size_t target_len, std::size_t depth,
    std::size_t truncation) {
  if (target_len < 1) throw Error(ErrorCode::kInvalidParams, "target_len >= 1");
  const std::vector<Hypothesis> prefix = cls.Enumerate(depth);
  const std::vector<Atom> atoms = dist.Atoms(truncation);
  EluderSequence seq{{}, center};
  double eps = 1.0;
  for (std::size_t j = 1; j <= target_len; ++j) {
    bool found = false;
    for (const Hypothesis& h : prefix) {
      const Interval m = DisagreementMass(h, center, dist, truncation);
      if (!(m.lo > 0.0 && m.hi < eps)) continue;
      for (const Atom& a : atoms) {
        if (a.mass > 0.0 && h(a.x) != center(a.x)) {
          seq.steps.push_back({a.x, center(a.x), h.id()});
          eps = a.mass;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      std::ostringstream os;
      os << "no hypothesis within depth " << depth
         << " has disagreement mass in (0, " << eps << ") at step " << j;
      throw Error(ErrorCode::kPreconditionUnmet, os.str());
    }
  }
  return seq;
}

std::vector<std::string> VerifyEluder(const EluderSequence& seq,
                                      const ConceptClass& cls) {
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < seq.steps.size(); ++k) {
    const EluderStep& s = seq.steps[k];
    const std::string at = "step " + std::to_string(k + 1) + ": ";
    if (seq.center(s.x) != s.y) bad.push_back(at + "center label mismatch");
    const auto w = cls.At(s.witness);
    if (!w) {
      bad.push_back(at + "unknown witness " + Id(s.witness));
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if ((*w)(seq.steps[i].x) != seq.steps[i].y) {
        bad.push_back(at + "witness disagrees with step " + std::to_string(i + 1));
      }
    }
    if ((*w)(s.x) == s.y) bad.push_back(at + "witness does not flip x_k");
  }
  return bad;
}

std::vector<std::string> VerifyStarSet(const StarSet& set,
                                       const ConceptClass& cls) {
  std::vector<std::string> bad;
  if (set.witnesses.size() != set.points.size()) {
    bad.push_back("one witness per point required");
    return bad;
  }
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    const auto w = cls.At(set.witnesses[i]);
    if (!w) {
      bad.push_back("unknown witness " + Id(set.witnesses[i]));
      continue;
    }
    for (std::size_t j = 0; j < set.points.size(); ++j) {
      const Instance x = set.points[j];
      if (((*w)(x) != set.center(x)) != (i == j)) {
        bad.push_back("witness " + Id(set.witnesses[i]) + " wrong at x=" +
                      std::to_string(x));
      }
    }
  }
  return bad;
}

std::vector<std::string> VerifyVcEluder(const VcEluderSequence& seq,
                                        const ConceptClass& cls) {
  std::vector<std::string> bad;
  if (seq.certificates.size() != seq.blocks.size()) {
    bad.push_back("one certificate list per block required");
    return bad;
  }
  std::vector<Instance> earlier;
  for (std::size_t b = 0; b < seq.blocks.size(); ++b) {
    const std::vector<Instance>& block = seq.blocks[b];
    const std::string at = "block " + std::to_string(b + 1) + ": ";
    if (block.size() != b + 1) bad.push_back(at + "wrong size");
    const auto& certs = seq.certificates[b];
    if (certs.size() != (std::size_t{1} << block.size())) {
      bad.push_back(at + "wrong number of patterns");
    }
    std::vector<bool> seen(std::size_t{1} << block.size(), false);
    for (const PatternWitness& pw : certs) {
      const auto w = cls.At(pw.witness);
      if (!w || pw.pattern.size() != block.size()) {
        bad.push_back(at + "bad certificate " + Id(pw.witness));
        continue;
      }
      std::uint64_t idx = 0;
      for (std::size_t j = 0; j < block.size(); ++j) {
        idx = (idx << 1) | pw.pattern[j];
        if ((*w)(block[j]) != pw.pattern[j]) {
          bad.push_back(at + "witness " + Id(pw.witness) + " misses its pattern");
        }
      }
      if (seen[idx]) bad.push_back(at + "repeated pattern");
      seen[idx] = true;
      for (Instance x : earlier) {
        if ((*w)(x) != seq.center(x)) {
          bad.push_back(at + "witness " + Id(pw.witness) +
                        " leaves the version space at x=" + std::to_string(x));
        }
      }
    }
    earlier.insert(earlier.end(), block.begin(), block.end());
  }
  return bad;
}

}  // namespace urate
