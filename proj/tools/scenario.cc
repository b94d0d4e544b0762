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

#include "scenario.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "urate/error.h"
#include "urate/rate.h"
#include "urate/sequence_design.h"

namespace urate::cli {
namespace {

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kValidation, message);
}

std::string Lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(ch));
  return s;
}

template <typename T>
T Get(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) {
    return fallback;
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    Invalid(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<std::vector<Bit>> ParseTable(const Json& rows) {
  std::vector<std::vector<Bit>> table;
  for (const Json& row : rows) {
    std::vector<Bit> bits;
    if (row.is_string()) {
      for (char ch : row.get<std::string>()) {
        if (ch != '0' && ch != '1') Invalid("table rows use 0/1 only");
        bits.push_back(static_cast<Bit>(ch - '0'));
      }
    } else {
      for (const Json& b : row) {
        const int v = b.get<int>();
        if (v != 0 && v != 1) Invalid("table rows use 0/1 only");
        bits.push_back(static_cast<Bit>(v));
      }
    }
    table.push_back(std::move(bits));
  }
  return table;
}

LabeledDistribution DistributionFromJson(const Json& node) {
  if (node.contains("tabulated")) {
    std::vector<Atom> atoms;
    for (const Json& a : node.at("tabulated")) {
      atoms.push_back({a.at("x").get<Instance>(), a.at("mass").get<double>(),
                       a.at("eta").get<double>()});
    }
    return LabeledDistribution::Tabulated(Get<std::string>(node, "id", "tabulated"),
                                          std::move(atoms));
  }
  const std::string name = Lower(Get<std::string>(node, "builtin", ""));
  if (name == "example5") {
    std::optional<double> eta0;
    if (node.contains("eta0") && !node.at("eta0").is_null()) {
      eta0 = node.at("eta0").get<double>();
    }
    return Example5Distribution(Get<double>(node, "eps", 0.25), eta0);
  }
  if (name == "finite_fixture") return FiniteFixtureDistribution();
  if (name == "thresholds_benign") return ThresholdsBenignDistribution();
  if (name == "point_mass") {
    return PointMass(Get<Instance>(node, "x", 0), Get<double>(node, "eta", 1.0));
  }
  if (name == "geometric") {
    const double eta = Get<double>(node, "eta", 1.0);
    return GeometricDistribution([eta](Instance) { return eta; });
  }
  Invalid("unknown distribution entry: " + node.dump());
}

ExtendedReal NeededIndex(const SequenceDesign& d) {
  ExtendedReal k = d.k.back();
  if (d.residual > 0.0) k = k + ExtendedReal(1.0);
  return k;
}

std::size_t SmallIndex(const ExtendedReal& k, std::size_t cap) {
  const double v = k.ToDouble();
  if (!(v <= static_cast<double>(cap))) {
    throw Error(ErrorCode::kSequenceTooShort,
                "construction needs sequence index " + k.ToString() +
                    ", above the search budget of " + std::to_string(cap));
  }
  return static_cast<std::size_t>(v);
}

Json ExtendedArray(const std::vector<ExtendedReal>& v) {
  Json out = Json::array();
  for (const ExtendedReal& e : v) out.push_back(e.ToString());
  return out;
}

Json DesignToJson(const SequenceDesign& d) {
  return {{"mode", DesignModeName(d.mode)},
          {"rate", d.rate_name},
          {"t_max", d.t_max},
          {"n", ExtendedArray(d.n)},
          {"k", ExtendedArray(d.k)},
          {"p", ExtendedArray(d.p)},
          {"eps", ExtendedArray(d.eps)},
          {"tail", ExtendedArray(d.tail)},
          {"c", d.c},
          {"residual", d.residual},
          {"residual_eps", d.residual_eps}};
}

Json PatternsToJson(const std::vector<PatternWitness>& pws) {
  Json out = Json::array();
  for (const PatternWitness& pw : pws) {
    std::string bits;
    for (Bit b : pw.pattern) bits += static_cast<char>('0' + b);
    out.push_back({{"pattern", bits}, {"witness", pw.witness}});
  }
  return out;
}

std::vector<PatternWitness> PatternsFromJson(const Json& j) {
  std::vector<PatternWitness> out;
  for (const Json& e : j) {
    PatternWitness pw;
    for (char ch : e.at("pattern").get<std::string>()) {
      pw.pattern.push_back(static_cast<Bit>(ch - '0'));
    }
    pw.witness = e.at("witness").get<HypothesisId>();
    out.push_back(std::move(pw));
  }
  return out;
}

AdversarialConstruction BuildFromSequence(const Json& kind_json,
                                          const Json& sequence,
                                          const ConceptClass& cls,
                                          const Hypothesis& center,
                                          const RateFunction& rate, int t_max) {
  const std::string kind = kind_json.get<std::string>();
  if (kind == ConstructionKindName(ConstructionKind::kEluderLower)) {
    EluderSequence seq{{}, center};
    for (const Json& s : sequence.at("steps")) {
      seq.steps.push_back({s.at("x").get<Instance>(), s.at("y").get<Bit>(),
                           s.at("witness").get<HypothesisId>()});
    }
    (void)cls;
    return BuildEluderAdversarial(seq, rate, t_max);
  }
  if (kind == ConstructionKindName(ConstructionKind::kVcEluderLower)) {
    VcEluderSequence seq{{}, center, {}};
    for (const Json& b : sequence.at("blocks")) {
      seq.blocks.push_back(b.get<std::vector<Instance>>());
    }
    for (const Json& c : sequence.at("certificates")) {
      seq.certificates.push_back(PatternsFromJson(c));
    }
    return BuildVcEluderAdversarial(seq, rate, t_max);
  }
  Invalid("unknown construction kind '" + kind + "'");
}

RateFunction RateFromJson(const Json& node) {
  try {
    return RateFunction::FromName(Get<std::string>(node, "rate", ""),
                                  Get<double>(node, "alpha", 0.0));
  } catch (const Error& e) {
    Invalid(e.what());
  }
}

}  // namespace

ConceptClass ClassFromJson(const Json& node) {
  if (!node.is_object()) Invalid("class entry must be an object");
  const std::string name = Get<std::string>(node, "kind", "");
  if (Lower(name) == "finite_fixture") return FiniteFixtureClass();
  std::optional<ClassKind> kind;
  for (ClassKind k : {ClassKind::kFinite, ClassKind::kThresholds,
                      ClassKind::kSingletonsAllOnes, ClassKind::kExample5,
                      ClassKind::kPowersetUnion, ClassKind::kCustom}) {
    if (Lower(std::string(ClassKindName(k))) == Lower(name)) kind = k;
  }
  if (!kind) Invalid("unknown class kind '" + name + "'");
  ClassParams params;
  params.max_block = Get<int>(node, "max_block", 0);
  if (node.contains("table")) params.table = ParseTable(node.at("table"));
  params.domain = Get<std::vector<Instance>>(node, "domain", {});
  try {
    return MakeBuiltin(*kind, params);
  } catch (const Error& e) {
    Invalid(std::string("class entry: ") + e.what());
  }
}

Hypothesis CenterFromJson(const Json& node, const ConceptClass& cls) {
  if (node.contains("constant")) {
    const int v = node.at("constant").get<int>();
    if (v != 0 && v != 1) Invalid("constant center must be 0 or 1");
    return ConstantHypothesis(static_cast<Bit>(v));
  }
  if (node.contains("id")) {
    const auto id = node.at("id").get<std::size_t>();
    auto h = cls.At(id);
    if (!h) Invalid("center id " + std::to_string(id) + " is not in the class");
    return *h;
  }
  Invalid("center node needs 'id' or 'constant'");
}

std::vector<std::int64_t> ParseGrid(const std::string& text) {
  std::vector<std::int64_t> grid;
  try {
    if (text.rfind("geom:", 0) == 0) {
      std::vector<std::int64_t> parts;
      std::stringstream ss(text.substr(5));
      std::string tok;
      while (std::getline(ss, tok, ':')) parts.push_back(std::stoll(tok));
      if (parts.size() < 2 || parts.size() > 3) Invalid("grid: geom:LO:HI[:PER]");
      return GeometricGrid(parts[0], parts[1],
                           parts.size() == 3 ? static_cast<int>(parts[2]) : 8);
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) grid.push_back(std::stoll(tok));
    }
  } catch (const std::logic_error&) {
    Invalid("cannot parse grid '" + text + "'");
  }
  if (grid.empty()) Invalid("empty grid '" + text + "'");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1])) {
      Invalid("grid must be positive and strictly increasing");
    }
  }
  return grid;
}

Scenario LoadScenario(const Json& config, const Overrides& ov) {
  if (!config.is_object()) Invalid("config must be a JSON object");
  const int version = Get<int>(config, "schema_version", kSchemaVersion);
  if (version != kSchemaVersion) {
    Invalid("unsupported schema_version " + std::to_string(version));
  }
  if (!config.contains("class")) Invalid("config has no 'class'");
  Scenario s;
  s.config = config;
  s.cls = ClassFromJson(config.at("class"));
  if (config.contains("center")) {
    s.center = CenterFromJson(config.at("center"), s.cls);
  }
  if (config.contains("budget")) {
    const Json& b = config.at("budget");
    s.budget.max_prefix = Get<std::size_t>(b, "max_prefix", s.budget.max_prefix);
    s.budget.max_instance = Get<Instance>(b, "max_instance", s.budget.max_instance);
    s.budget.max_nodes = Get<std::size_t>(b, "max_nodes", s.budget.max_nodes);
  }
  const std::string policy =
      ov.policy.value_or(Get<std::string>(config, "policy", "first"));
  const auto parsed = ParseTiePolicy(policy);
  if (!parsed) Invalid("unknown policy '" + policy + "'");
  s.policy = *parsed;
  s.seed = ov.seed.value_or(Get<std::uint64_t>(config, "seed", 1));
  s.reps = ov.reps.value_or(Get<int>(config, "reps", 1000));
  if (s.reps < 1) Invalid("reps must be positive, got " + std::to_string(s.reps));
  const bool prefix_given = ov.prefix || config.contains("prefix");
  s.prefix = ov.prefix.value_or(Get<std::size_t>(config, "prefix", 64));
  if (s.prefix < 1) Invalid("prefix must be positive");

  if (config.contains("distribution")) {
    const Json& d = config.at("distribution");
    if (d.contains("adversarial")) {
      const Json& a = d.at("adversarial");
      if (!s.center) Invalid("adversarial distribution needs a 'center'");
      const std::string kind = Get<std::string>(a, "kind", "eluder");
      const RateFunction rate = RateFromJson(a);
      const int t_max = Get<int>(a, "t_max", 3);
      if (kind == "eluder") {
        const SequenceDesign design =
            DesignSequence(rate, t_max, DesignMode::kEluder);
        const std::size_t len = SmallIndex(NeededIndex(design), 1 << 20);
        auto seq = FindEluder(s.cls, *s.center, len, s.budget);
        if (!seq) {
          throw Error(ErrorCode::kPreconditionUnmet,
                      "no eluder sequence of length " + std::to_string(len) +
                          " centered at " + s.center->name() + " within " +
                          s.budget.Describe());
        }
        s.sequence = EluderToJson(*seq);
        s.construction = BuildEluderAdversarial(*seq, rate, t_max);
      } else if (kind == "vc_eluder") {
        const SequenceDesign design =
            DesignSequence(rate, t_max, DesignMode::kVcEluder);
        const std::size_t k_max =
            SmallIndex(NeededIndex(design), s.budget.max_instance);
        auto seq = FindVcEluder(s.cls, *s.center, k_max, s.budget);
        if (!seq) {
          throw Error(ErrorCode::kPreconditionUnmet,
                      "no VC-eluder sequence with " + std::to_string(k_max) +
                          " blocks centered at " + s.center->name() +
                          " within " + s.budget.Describe());
        }
        s.sequence = VcEluderToJson(*seq);
        s.construction = BuildVcEluderAdversarial(*seq, rate, t_max);
      } else {
        Invalid("adversarial kind must be 'eluder' or 'vc_eluder'");
      }
      const std::size_t need = s.construction->RequiredPrefix();
      if (!prefix_given) {
        s.prefix = need;
      } else if (s.prefix < need) {
        Invalid("prefix " + std::to_string(s.prefix) +
                " is below the construction requirement " +
                std::to_string(need));
      }
      s.dist = s.construction->dist;
    } else {
      s.dist = DistributionFromJson(d);
    }
  }

  if (ov.grid) {
    s.grid = ParseGrid(*ov.grid);
  } else if (config.contains("grid")) {
    const Json& g = config.at("grid");
    if (g.is_string()) {
      s.grid = ParseGrid(g.get<std::string>());
    } else {
      std::string joined;
      for (const Json& v : g) joined += std::to_string(v.get<std::int64_t>()) + ",";
      s.grid = ParseGrid(joined);
    }
  } else if (s.construction) {
    for (const Checkpoint& cp : s.construction->checkpoints) {
      const double n = cp.n.ToDouble();
      if (n <= kMaxSimulatedN) s.grid.push_back(static_cast<std::int64_t>(n));
    }
  }
  return s;
}

Json EluderToJson(const EluderSequence& seq) {
  Json steps = Json::array();
  for (const EluderStep& s : seq.steps) {
    steps.push_back({{"x", s.x}, {"y", s.y}, {"witness", s.witness}});
  }
  return {{"center", seq.center.name()}, {"steps", steps}};
}

Json StarSetToJson(const StarSet& set) {
  return {{"center", set.center.name()},
          {"points", set.points},
          {"witnesses", set.witnesses}};
}

Json VcEluderToJson(const VcEluderSequence& seq) {
  Json certs = Json::array();
  for (const auto& c : seq.certificates) certs.push_back(PatternsToJson(c));
  return {{"center", seq.center.name()},
          {"blocks", seq.blocks},
          {"certificates", certs}};
}

Json ConditionsToJson(const std::vector<ConditionResult>& conditions) {
  Json out = Json::array();
  for (const ConditionResult& c : conditions) {
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return out;
}

Json ConstructionToJson(const AdversarialConstruction& c, const Json& class_spec,
                        const Json& center_spec, const Json& sequence) {
  Json support = Json::array();
  for (const SupportPoint& s : c.support) {
    support.push_back({{"x", s.x}, {"y", s.y}, {"mass", s.mass},
                       {"eps", s.eps}, {"index", s.index}});
  }
  Json checkpoints = Json::array();
  for (const Checkpoint& cp : c.checkpoints) {
    checkpoints.push_back({{"t", cp.t},
                           {"n", cp.n.ToString()},
                           {"k", cp.k.ToString()},
                           {"tail", cp.tail.ToString()},
                           {"predicted_bound", cp.predicted_bound},
                           {"event_probability_bound", cp.event_probability_bound},
                           {"exact_form_bound", cp.exact_form_bound},
                           {"point", cp.point},
                           {"witness", cp.witness}});
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", ConstructionKindName(c.kind)},
          {"class", class_spec},
          {"center", center_spec},
          {"rate", c.design.rate_name},
          {"t_max", c.design.t_max},
          {"sequence", sequence},
          {"design", DesignToJson(c.design)},
          {"support", support},
          {"inf_error", c.inf_error},
          {"checkpoints", checkpoints},
          {"required_prefix", c.RequiredPrefix()},
          {"passed", c.passed()},
          {"verification", ConditionsToJson(c.verification)}};
}

Json CurveToJson(const LearningCurve& curve) {
  Json j = {{"schema_version", kSchemaVersion},
            {"scenario_id", curve.scenario_id},
            {"policy", TiePolicyName(curve.policy)},
            {"prefix", curve.prefix_len},
            {"seed", curve.seed},
            {"excess_width", curve.excess_width},
            {"n", curve.grid},
            {"mean_excess", curve.means},
            {"stderr", curve.stderrs},
            {"replications", curve.replications}};
  if (!curve.event_freq.empty()) {
    j["event_freq"] = curve.event_freq;
    j["event_stderr"] = curve.event_stderr;
  }
  return j;
}

Json VerdictToJson(const RateVerdict& v) {
  const auto finite_or_null = [](double x) {
    return std::isfinite(x) ? Json(x) : Json(nullptr);
  };
  Json normalized = Json::array();
  for (double x : v.normalized) normalized.push_back(finite_or_null(x));
  return {{"schema_version", kSchemaVersion},
          {"regime", RegimeName(v.regime)},
          {"exp_slope", finite_or_null(v.exp_slope)},
          {"exp_r2", finite_or_null(v.exp_r2)},
          {"power_slope", finite_or_null(v.power_slope)},
          {"power_r2", finite_or_null(v.power_r2)},
          {"normalized", normalized},
          {"decrease_factor", std::isfinite(v.decrease_factor)
                                  ? Json(v.decrease_factor)
                                  : Json("inf")},
          {"thresholds",
           {{"min_r2", v.thresholds.min_r2},
            {"max_power_slope", v.thresholds.max_power_slope},
            {"min_decrease_factor", v.thresholds.min_decrease_factor},
            {"noise_z", v.thresholds.noise_z}}},
          {"note", v.note}};
}

Json CheckpointsToJson(const std::vector<CheckpointRow>& rows,
                       const std::vector<int>& skipped) {
  Json out = Json::array();
  bool all = true;
  for (const CheckpointRow& r : rows) {
    Json row = {{"t", r.t},
                {"n", r.n},
                {"observed_mean", r.observed_mean},
                {"observed_stderr", r.observed_stderr},
                {"predicted", r.predicted},
                {"passed", r.passed}};
    if (r.has_event) {
      row["event_freq"] = r.event_freq;
      row["event_stderr"] = r.event_stderr;
      row["event_bound"] = r.event_bound;
      row["event_passed"] = r.event_passed;
    }
    all = all && r.passed && r.event_passed;
    out.push_back(row);
  }
  return {{"schema_version", kSchemaVersion},
          {"rows", out},
          {"skipped", skipped},
          {"passed", all}};
}

Reload ReloadConstruction(const Json& dump) {
  if (Get<int>(dump, "schema_version", -1) != kSchemaVersion) {
    Invalid("construction dump has an unsupported schema_version");
  }
  const ConceptClass cls = ClassFromJson(dump.at("class"));
  const Hypothesis center = CenterFromJson(dump.at("center"), cls);
  const RateFunction rate = RateFunction::FromName(dump.at("rate").get<std::string>());
  const int t_max = dump.at("t_max").get<int>();
  Reload r{BuildFromSequence(dump.at("kind"), dump.at("sequence"), cls, center,
                             rate, t_max),
           {}, {}};
  const std::size_t depth = dump.at("required_prefix").get<std::size_t>();
  r.verification = VerifyConstruction(r.construction, cls, depth);
  r.construction.verification = r.verification;

  const Json rebuilt = ConstructionToJson(r.construction, dump.at("class"),
                                          dump.at("center"), dump.at("sequence"));
  for (const char* key : {"design", "support", "checkpoints", "required_prefix",
                          "passed"}) {
    if (rebuilt.at(key) != dump.at(key)) r.mismatches.push_back(key);
  }
  const Json& stored = dump.at("verification");
  if (stored.size() != r.verification.size()) {
    r.mismatches.push_back("verification");
  } else {
    for (std::size_t i = 0; i < stored.size(); ++i) {
      if (stored[i].at("name") != r.verification[i].name ||
          stored[i].at("passed").get<bool>() != r.verification[i].passed) {
        r.mismatches.push_back("verification." + r.verification[i].name);
      }
    }
  }
  return r;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Invalid("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) Invalid("cannot write '" + path + "'");
  out << text;
}

}  // namespace urate::cli
