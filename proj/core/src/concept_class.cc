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

#include "urate/concept_class.h"

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>

#include "urate/error.h"

namespace urate {
namespace {

std::string Indexed(const char* stem, std::uint64_t i) {
  return stem + std::to_string(i);
}

struct TruthTable {
  std::unordered_map<Instance, std::size_t> column;
  std::vector<std::vector<Bit>> rows;
};

}  // namespace

Hypothesis ConstantHypothesis(Bit value) {
  return Hypothesis(kExternalId, value ? "all-1's" : "all-0's",
                    [value](Instance) { return value; });
}

std::string_view ClassKindName(ClassKind kind) {
  switch (kind) {
    case ClassKind::kFinite:
      return "Finite";
    case ClassKind::kThresholds:
      return "Thresholds";
    case ClassKind::kSingletonsAllOnes:
      return "SingletonsAllOnes";
    case ClassKind::kExample5:
      return "Example5";
    case ClassKind::kPowersetUnion:
      return "PowersetUnion";
    case ClassKind::kCustom:
      return "Custom";
  }
  return "?";
}

std::optional<ClassKind> ParseClassKind(std::string_view name) {
  for (ClassKind k :
       {ClassKind::kFinite, ClassKind::kThresholds,
        ClassKind::kSingletonsAllOnes, ClassKind::kExample5,
        ClassKind::kPowersetUnion, ClassKind::kCustom}) {
    if (ClassKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<Hypothesis> ConceptClass::Enumerate(std::size_t k) const {
  if (cardinality_ && k > *cardinality_) k = *cardinality_;
  std::vector<Hypothesis> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(generator_(i));
  return out;
}

std::optional<Hypothesis> ConceptClass::At(std::size_t index) const {
  if (cardinality_ && index >= *cardinality_) return std::nullopt;
  return generator_(index);
}

ConceptClass MakeBuiltin(ClassKind kind, const ClassParams& params) {
  ConceptClass c;
  c.kind_ = kind;
  switch (kind) {
    case ClassKind::kExample5:
      c.description_ = "Example5";
      c.generator_ = [](std::size_t i) {
        if (i == 0) {
          return Hypothesis(0, "h*_1", [](Instance x) { return Bit(x == 0); });
        }
        if (i == 1) {
          return Hypothesis(1, "h*_2", [](Instance x) { return Bit(x != 0); });
        }
        const Instance j = i - 1;
        return Hypothesis(i, Indexed("h_", j),
                          [j](Instance x) { return Bit(x == 0 || x == j); });
      };
      break;
    case ClassKind::kSingletonsAllOnes:
      c.description_ = "SingletonsAllOnes";
      c.generator_ = [](std::size_t i) {
        if (i == 0) return Hypothesis(0, "all-1's", [](Instance) { return Bit{1}; });
        const Instance j = i;
        return Hypothesis(i, Indexed("h_", j),
                          [j](Instance x) { return Bit(x == j); });
      };
      break;
    case ClassKind::kThresholds:
      c.description_ = "Thresholds";
      c.generator_ = [](std::size_t i) {
        const Instance t = i;
        return Hypothesis(i, Indexed("h_", t),
                          [t](Instance x) { return Bit(x >= t); });
      };
      break;
    case ClassKind::kPowersetUnion: {
      const int max_block = params.max_block;
      if (max_block < 1 || max_block > 62) {
        throw Error(ErrorCode::kInvalidParams,
                    "PowersetUnion needs 1 <= max_block <= 62");
      }
      c.description_ = "PowersetUnion(max_block=" + std::to_string(max_block) + ")";
      c.cardinality_ = (std::uint64_t{1} << (max_block + 1)) - 1;
      c.generator_ = [](std::size_t i) {
        if (i == 0) return Hypothesis(0, "all-1's", [](Instance) { return Bit{1}; });
        // Index i >= 1 lies in block k with 2^k - 1 <= i < 2^(k+1) - 1.
        int k = 0;
        while ((std::uint64_t{1} << (k + 1)) - 1 <= i) ++k;
        const std::uint64_t mask = i - ((std::uint64_t{1} << k) - 1);
        const Instance offset = PowersetBlockOffset(k);
        std::string name = "X" + std::to_string(k) + ":{";
        bool first = true;
        for (int b = 0; b < k; ++b) {
          if (mask >> b & 1) {
            name += (first ? "" : ",") + std::to_string(offset + b);
            first = false;
          }
        }
        name += "}";
        return Hypothesis(i, name, [offset, k, mask](Instance x) {
          if (x < offset || x >= offset + static_cast<Instance>(k)) return Bit{0};
          return Bit(mask >> (x - offset) & 1);
        });
      };
      break;
    }
    case ClassKind::kFinite:
    case ClassKind::kCustom: {
      if (params.table.empty() || params.table.front().empty()) {
        throw Error(ErrorCode::kInvalidParams, "truth table is empty");
      }
      const std::size_t cols = params.table.front().size();
      std::vector<Instance> domain = params.domain;
      if (domain.empty()) {
        for (std::size_t j = 0; j < cols; ++j) domain.push_back(j);
      }
      if (domain.size() != cols) {
        throw Error(ErrorCode::kInvalidParams,
                    "truth table width differs from the domain size");
      }
      if (std::set<Instance>(domain.begin(), domain.end()).size() != cols) {
        throw Error(ErrorCode::kInvalidParams, "domain points repeat");
      }
      auto table = std::make_shared<TruthTable>();
      for (std::size_t j = 0; j < cols; ++j) table->column[domain[j]] = j;
      for (const auto& row : params.table) {
        if (row.size() != cols) {
          throw Error(ErrorCode::kInvalidParams, "ragged truth table");
        }
        for (Bit b : row) {
          if (b > 1) throw Error(ErrorCode::kInvalidParams, "table entry not a bit");
        }
        table->rows.push_back(row);
      }
      c.description_ = std::string(ClassKindName(kind)) + "(" +
                       std::to_string(table->rows.size()) + "x" +
                       std::to_string(cols) + ")";
      c.cardinality_ = table->rows.size();
      std::sort(domain.begin(), domain.end());
      c.disagreement_support_ = domain;
      c.generator_ = [table](std::size_t i) {
        return Hypothesis(i, Indexed("row_", i), [table, i](Instance x) {
          auto it = table->column.find(x);
          return it == table->column.end() ? Bit{0} : table->rows[i][it->second];
        });
      };
      break;
    }
  }
  return c;
}

std::vector<Hypothesis> VersionSpace(const std::vector<Hypothesis>& prefix,
                                     const Dataset& data) {
  std::vector<Hypothesis> out;
  for (const Hypothesis& h : prefix) {
    bool ok = true;
    for (const LabeledExample& e : data.examples) {
      if (h(e.x) != e.y) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(h);
  }
  return out;
}

std::vector<Behavior> DistinctBehaviors(const std::vector<Hypothesis>& prefix,
                                        const std::vector<Instance>& points) {
  std::vector<Behavior> out;
  std::unordered_map<std::string, std::size_t> seen;
  for (const Hypothesis& h : prefix) {
    std::string key(points.size(), '0');
    std::vector<Bit> pattern(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      pattern[j] = h(points[j]);
      key[j] = pattern[j] ? '1' : '0';
    }
    auto [it, inserted] = seen.emplace(key, out.size());
    if (inserted) out.push_back({std::move(pattern), {}});
    out[it->second].ids.push_back(h.id());
  }
  return out;
}

std::vector<Instance> DisagreementRegion(
    const std::vector<Hypothesis>& prefix,
    const std::vector<Instance>& candidates) {
  std::vector<Instance> out;
  if (prefix.size() < 2) return out;
  for (Instance x : candidates) {
    const Bit first = prefix.front()(x);
    for (std::size_t i = 1; i < prefix.size(); ++i) {
      if (prefix[i](x) != first) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

}  // namespace urate
