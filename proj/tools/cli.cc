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

#include "cli.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "scenario.h"
#include "urate/bounds.h"
#include "urate/error.h"

namespace urate::cli {
namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  bool json = false;
  Overrides overrides;
  // Subcommand-specific.
  std::string reload_path;
  std::string curve_path;
  std::string calculator;
  std::map<std::string, double> params;
};

// Either writes the artifact under --out or prints it.
class Sink {
 public:
  Sink(const Options& opts, std::ostream& out) : opts_(opts), out_(out) {}
  void Emit(const std::string& file, const std::string& text) {
    if (opts_.out_dir.empty()) {
      out_ << text;
      if (!text.empty() && text.back() != '\n') out_ << '\n';
      return;
    }
    std::filesystem::create_directories(opts_.out_dir);
    const std::string path = (std::filesystem::path(opts_.out_dir) / file).string();
    WriteFile(path, text);
    out_ << path << '\n';
  }

 private:
  const Options& opts_;
  std::ostream& out_;
};

Json LoadConfigJson(const Options& opts) {
  if (opts.config_path.empty()) {
    throw Error(ErrorCode::kValidation, "--config is required");
  }
  try {
    return Json::parse(ReadFile(opts.config_path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kValidation,
                "config '" + opts.config_path + "' is not valid JSON: " + e.what());
  }
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

Json CenterNode(const Json& config) {
  return config.contains("center") ? config.at("center") : Json(nullptr);
}

std::string ScenarioId(const Scenario& s) {
  if (s.config.contains("id")) return s.config.at("id").get<std::string>();
  return s.dist ? s.dist->id() : s.cls.description();
}

// Reads a search request given either as a bare size or as
// {"target": k, "expect": "found" | "exhausted"}.
std::pair<std::size_t, bool> SearchRequest(const Json& j) {
  if (j.is_number()) return {j.get<std::size_t>(), true};
  const std::string expect = j.value("expect", std::string("found"));
  if (expect != "found" && expect != "exhausted") {
    throw Error(ErrorCode::kValidation, "expect must be 'found' or 'exhausted'");
  }
  return {j.at("target").get<std::size_t>(), expect == "found"};
}

int RunAnalyze(const Options& opts, Sink& sink) {
  const Scenario s = LoadScenario(LoadConfigJson(opts), opts.overrides);
  if (!s.config.contains("analyze")) {
    throw Error(ErrorCode::kValidation, "config has no 'analyze' block");
  }
  const Json& req = s.config.at("analyze");
  Json results = Json::object();
  std::vector<std::string> failures;
  auto need_center = [&]() -> const Hypothesis& {
    if (!s.center) throw Error(ErrorCode::kValidation, "analysis needs a 'center'");
    return *s.center;
  };
  auto record = [&](const std::string& name, bool found, bool want_found,
                    Json certificate, const std::vector<std::string>& violations,
                    std::size_t target) {
    Json r = {{"target", target},
              {"found", found},
              {"expected", want_found ? "found" : "exhausted"},
              {"violations", violations}};
    if (found) r["certificate"] = std::move(certificate);
    if (!found) r["budget"] = s.budget.Describe();
    if (found != want_found) failures.push_back(name + ": unexpected outcome");
    for (const std::string& v : violations) failures.push_back(name + ": " + v);
    results[name] = r;
  };
  if (req.contains("eluder")) {
    const auto [target, want] = SearchRequest(req.at("eluder"));
    auto seq = FindEluder(s.cls, need_center(), target, s.budget);
    record("eluder", seq.has_value(), want, seq ? EluderToJson(*seq) : Json(),
           seq ? VerifyEluder(*seq, s.cls) : std::vector<std::string>{}, target);
  }
  if (req.contains("star_set")) {
    const auto [target, want] = SearchRequest(req.at("star_set"));
    auto set = FindStarSet(s.cls, need_center(), target, s.budget);
    record("star_set", set.has_value(), want, set ? StarSetToJson(*set) : Json(),
           set ? VerifyStarSet(*set, s.cls) : std::vector<std::string>{}, target);
  }
  if (req.contains("vc_eluder")) {
    const auto [target, want] = SearchRequest(req.at("vc_eluder"));
    auto seq = FindVcEluder(s.cls, need_center(), target, s.budget);
    record("vc_eluder", seq.has_value(), want, seq ? VcEluderToJson(*seq) : Json(),
           seq ? VerifyVcEluder(*seq, s.cls) : std::vector<std::string>{},
           target);
  }
  if (req.contains("vc_dimension")) {
    const Json& v = req.at("vc_dimension");
    std::vector<Instance> domain;
    if (v.contains("block")) {
      const int k = v.at("block").get<int>();
      for (int i = 0; i < k; ++i) domain.push_back(PowersetBlockOffset(k) + i);
    } else {
      domain = v.at("domain").get<std::vector<Instance>>();
    }
    const int cap = v.value("cap", 8);
    const std::vector<Hypothesis> prefix =
        s.cls.Enumerate(v.value("prefix", s.prefix));
    const VcResult vc = VcDimension(prefix, domain, cap);
    const ShatterResult check = IsShattered(prefix, vc.certificate);
    Json patterns = Json::array();
    for (const PatternWitness& pw : check.witnesses) {
      std::string bits;
      for (Bit b : pw.pattern) bits += static_cast<char>('0' + b);
      patterns.push_back({{"pattern", bits}, {"witness", pw.witness}});
    }
    Json r = {{"value", vc.value},
              {"certificate", vc.certificate},
              {"reached_cap", vc.reached_cap},
              {"patterns", patterns},
              {"prefix", prefix.size()}};
    if (!check.shattered) failures.push_back("vc_dimension: certificate not shattered");
    if (v.contains("expect")) {
      r["expected"] = v.at("expect");
      if (v.at("expect").get<int>() != vc.value) {
        failures.push_back("vc_dimension: expected " + v.at("expect").dump());
      }
    }
    results["vc_dimension"] = r;
  }
  const Json report = {{"schema_version", kSchemaVersion},
                       {"class", s.cls.description()},
                       {"center", s.center ? Json(s.center->name()) : Json(nullptr)},
                       {"results", results},
                       {"failures", failures},
                       {"passed", failures.empty()}};
  sink.Emit("analysis.json", Dump(report));
  return failures.empty() ? kExitOk : kExitVerificationFailed;
}

std::vector<std::string> Failing(const std::vector<ConditionResult>& conditions) {
  std::vector<std::string> out;
  for (const ConditionResult& c : conditions) {
    if (!c.passed) out.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
  }
  return out;
}

int RunConstruct(const Options& opts, Sink& sink) {
  if (!opts.reload_path.empty()) {
    Json dump;
    try {
      dump = Json::parse(ReadFile(opts.reload_path));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kValidation, std::string("dump: ") + e.what());
    }
    const Reload r = ReloadConstruction(dump);
    const bool ok = r.construction.passed() && r.mismatches.empty();
    const Json report = {{"schema_version", kSchemaVersion},
                         {"reloaded", opts.reload_path},
                         {"passed", r.construction.passed()},
                         {"mismatches", r.mismatches},
                         {"failures", Failing(r.verification)},
                         {"verification", ConditionsToJson(r.verification)}};
    sink.Emit("reload.json", Dump(report));
    return ok ? kExitOk : kExitVerificationFailed;
  }
  Scenario s = LoadScenario(LoadConfigJson(opts), opts.overrides);
  if (!s.construction) {
    throw Error(ErrorCode::kValidation,
                "construct needs an adversarial distribution entry");
  }
  s.construction->verification = VerifyConstruction(*s.construction, s.cls, s.prefix);
  Json dump = ConstructionToJson(*s.construction, s.config.at("class"),
                                 CenterNode(s.config), s.sequence);
  dump["required_prefix"] = s.prefix;
  dump["failures"] = Failing(s.construction->verification);
  sink.Emit("construction.json", Dump(dump));
  return s.construction->passed() ? kExitOk : kExitVerificationFailed;
}

LearningCurve Simulate(const Scenario& s) {
  if (!s.dist) {
    throw Error(ErrorCode::kValidation, "simulation needs a 'distribution'");
  }
  if (s.grid.empty()) throw Error(ErrorCode::kValidation, "simulation needs a grid");
  CurveOptions opts;
  opts.scenario_id = ScenarioId(s);
  if (s.construction) {
    const AdversarialConstruction c = *s.construction;
    opts.excess = [c](const Hypothesis& h) { return c.Excess(h); };
  }
  return EstimateCurve(s.cls, *s.dist, s.policy, s.grid, s.reps, s.seed, s.prefix,
                       opts);
}

int RunSimulate(const Options& opts, Sink& sink) {
  const Scenario s = LoadScenario(LoadConfigJson(opts), opts.overrides);
  const LearningCurve curve = Simulate(s);
  if (opts.json) {
    sink.Emit("curve.json", Dump(CurveToJson(curve)));
  } else {
    sink.Emit("curve.csv", CurveToCsv(curve));
  }
  return kExitOk;
}

LearningCurve CurveFromOptions(const Options& opts,
                               std::optional<Scenario>* scenario) {
  if (!opts.config_path.empty()) {
    *scenario = LoadScenario(LoadConfigJson(opts), opts.overrides);
  }
  if (!opts.curve_path.empty()) return ParseCurveCsv(ReadFile(opts.curve_path));
  if (!*scenario) throw Error(ErrorCode::kValidation, "need --curve or --config");
  return Simulate(**scenario);
}

int RunClassify(const Options& opts, Sink& sink) {
  std::optional<Scenario> s;
  const LearningCurve curve = CurveFromOptions(opts, &s);
  Json verdict = VerdictToJson(ClassifyRate(curve));
  verdict["scenario_id"] = curve.scenario_id;
  verdict["grid"] = curve.grid;
  sink.Emit("verdict.json", Dump(verdict));
  return kExitOk;
}

int RunCheckpoints(const Options& opts, Sink& sink) {
  const Scenario s = LoadScenario(LoadConfigJson(opts), opts.overrides);
  if (!s.construction) {
    throw Error(ErrorCode::kValidation,
                "checkpoints needs an adversarial distribution entry");
  }
  std::vector<CheckpointRow> rows;
  std::vector<int> skipped;
  if (!opts.curve_path.empty()) {
    rows = CheckpointCompare(ParseCurveCsv(ReadFile(opts.curve_path)),
                             *s.construction);
  } else {
    CheckpointRun run =
        SimulateCheckpoints(s.cls, *s.construction, s.reps, s.seed, s.prefix);
    rows = std::move(run.rows);
    skipped = std::move(run.skipped);
  }
  Json report = CheckpointsToJson(rows, skipped);
  report["t_max"] = s.construction->design.t_max;
  std::vector<std::string> failures;
  for (const CheckpointRow& r : rows) {
    if (!r.passed) failures.push_back("t=" + std::to_string(r.t) + ": mean");
    if (!r.event_passed) failures.push_back("t=" + std::to_string(r.t) + ": event");
  }
  report["failures"] = failures;
  sink.Emit("checkpoints.json", Dump(report));
  return report.at("passed").get<bool>() ? kExitOk : kExitVerificationFailed;
}

// Shortest text that parses back to the same double.
std::string Shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int RunBounds(const Options& opts, Sink& sink) {
  const auto& p = opts.params;
  auto get = [&](const std::string& name) {
    auto it = p.find(name);
    if (it == p.end()) {
      throw Error(ErrorCode::kValidation,
                  opts.calculator + " needs --" + name);
    }
    return it->second;
  };
  auto get_or = [&](const std::string& name, double fallback) {
    auto it = p.find(name);
    return it == p.end() ? fallback : it->second;
  };
  std::vector<std::pair<std::string, double>> lines;
  auto echo = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) lines.emplace_back(n, get(n));
  };
  BoundParams bp;
  auto fill_params = [&]() {
    bp.n = get_or("n", bp.n);
    bp.delta = get_or("delta", bp.delta);
    bp.d = get_or("d", bp.d);
    bp.sigma_sq = get_or("sigma-sq", bp.sigma_sq);
    bp.c0 = get_or("c0", bp.c0);
    bp.c = get_or("c-const", bp.c);
    bp.c_tilde = get_or("c-tilde", bp.c_tilde);
    lines.insert(lines.end(), {{"n", bp.n}, {"delta", bp.delta}, {"d", bp.d},
                               {"sigma_sq", bp.sigma_sq}, {"c0", bp.c0},
                               {"c", bp.c}, {"c_tilde", bp.c_tilde}});
  };
  const std::string& calc = opts.calculator;
  if (calc == "hoeffding") {
    echo({"n", "t"});
    lines.emplace_back("a", get_or("a", 0.0));
    lines.emplace_back("b", get_or("b", 1.0));
    lines.emplace_back("value", Hoeffding(get("n"), get("t"), get_or("a", 0.0),
                                          get_or("b", 1.0)));
  } else if (calc == "mcdiarmid") {
    echo({"n", "c", "delta"});
    lines.emplace_back("value", McDiarmidDeviation(get("n"), get("c"), get("delta")));
  } else if (calc == "slud") {
    echo({"n", "eps"});
    lines.emplace_back("value", SludLower(get("n"), get("eps")));
  } else if (calc == "deviation") {
    echo({"n", "delta"});
    lines.emplace_back("value", DeviationBound(get("n"), get("delta")));
  } else if (calc == "finite_class") {
    echo({"m", "eps0", "n"});
    lines.emplace_back("value", FiniteClassBound(get("m"), get("eps0"), get("n")));
  } else if (calc == "uniform_bernstein") {
    get("n");
    fill_params();
    lines.emplace_back("value", UniformBernstein(bp));
  } else if (calc == "localization_b") {
    get("n");
    fill_params();
    lines.emplace_back("value", LocalizationB(bp.sigma_sq, bp.n, bp.d, bp.c_tilde));
  } else if (calc == "localized") {
    get("n");
    fill_params();
    const Scenario s = LoadScenario(LoadConfigJson(opts), opts.overrides);
    if (!s.dist) throw Error(ErrorCode::kValidation, "localized needs a distribution");
    const LocalizedQuantities q =
        ComputeLocalizedQuantities(s.cls, *s.dist, bp, s.prefix);
    lines.insert(lines.end(), {{"epsilon", q.epsilon},
                               {"ball_size", static_cast<double>(q.ball_ids.size())},
                               {"sigma_sq_eps", q.sigma_sq_eps},
                               {"b_eps", q.b_eps},
                               {"eps_n", q.eps_n},
                               {"phi_total", q.phi_total},
                               {"d_used", q.d},
                               {"bisection_steps", q.bisection_steps}});
  } else {
    throw Error(ErrorCode::kValidation, "unknown calculator '" + calc + "'");
  }
  std::ostringstream os;
  if (opts.json) {
    Json j = {{"schema_version", kSchemaVersion}, {"calculator", calc}};
    for (const auto& [k, v] : lines) j[k] = v;
    os << j.dump(2) << '\n';
    sink.Emit("bounds.json", os.str());
  } else {
    os << "calculator=" << calc << '\n';
    for (const auto& [k, v] : lines) os << k << '=' << Shortest(v) << '\n';
    sink.Emit("bounds.txt", os.str());
  }
  return kExitOk;
}

void ReportError(std::ostream& err, std::string_view code,
                 const std::string& message) {
  const Json record = {{"schema_version", kSchemaVersion},
                       {"error", {{"code", code}, {"message", message}}}};
  err << record.dump() << '\n';
}

}  // namespace

LearningCurve ParseCurveCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("n,mean_excess,stderr,replications", 0) != 0) {
    throw Error(ErrorCode::kValidation, "curve CSV has an unexpected header");
  }
  LearningCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string n, mean, se, reps, id;
    std::getline(row, n, ',');
    std::getline(row, mean, ',');
    std::getline(row, se, ',');
    std::getline(row, reps, ',');
    std::getline(row, id);
    try {
      curve.grid.push_back(std::stoll(n));
      curve.means.push_back(std::stod(mean));
      curve.stderrs.push_back(std::stod(se));
      curve.replications.push_back(std::stoll(reps));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kValidation, "bad curve CSV row '" + line + "'");
    }
    curve.scenario_id = id;
  }
  return curve;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options opts;
  CLI::App app{"urate: ERM learning-rate experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", opts.config_path, "Scenario config (JSON)");
  app.add_option("--out", opts.out_dir, "Directory for artifacts");
  app.add_flag("--json", opts.json, "Emit JSON instead of CSV or text");
  std::uint64_t seed = 0;
  int reps = 0;
  std::string grid, policy;
  std::size_t prefix = 0;
  auto* seed_opt = app.add_option("--seed", seed, "64-bit seed");
  auto* reps_opt = app.add_option("--reps", reps, "Replications per grid point");
  auto* grid_opt = app.add_option("--grid", grid, "geom:LO:HI[:PER] or n1,n2,...");
  auto* policy_opt = app.add_option("--policy", policy, "first|random|adversarial");
  auto* prefix_opt = app.add_option("--prefix", prefix, "Enumeration prefix K");

  auto* analyze = app.add_subcommand("analyze", "Combinatorial certificates");
  auto* construct = app.add_subcommand("construct", "Adversarial construction");
  construct->add_option("--reload", opts.reload_path,
                        "Re-verify a previously written dump");
  auto* simulate = app.add_subcommand("simulate", "Learning curve");
  auto* classify = app.add_subcommand("classify", "Rate regime of a curve");
  classify->add_option("--curve", opts.curve_path, "Curve CSV");
  auto* checkpoints = app.add_subcommand("checkpoints", "Checkpoint comparison");
  checkpoints->add_option("--curve", opts.curve_path, "Curve CSV");
  auto* bounds = app.add_subcommand("bounds", "Evaluate a bound calculator");
  bounds->add_option("calculator", opts.calculator,
                     "hoeffding|mcdiarmid|slud|deviation|finite_class|"
                     "uniform_bernstein|localization_b|localized")
      ->required();
  std::map<std::string, std::optional<double>> raw;
  for (const char* name : {"n", "t", "a", "b", "c", "delta", "eps", "m", "eps0",
                           "d", "sigma-sq", "c0", "c-const", "c-tilde"}) {
    raw[name];
    bounds->add_option(std::string("--") + name, raw[name]);
  }

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    ReportError(err, "usage", e.what());
    return kExitError;
  }
  if (seed_opt->count()) opts.overrides.seed = seed;
  if (reps_opt->count()) opts.overrides.reps = reps;
  if (grid_opt->count()) opts.overrides.grid = grid;
  if (policy_opt->count()) opts.overrides.policy = policy;
  if (prefix_opt->count()) opts.overrides.prefix = prefix;
  for (const auto& [k, v] : raw) {
    if (v) opts.params[k] = *v;
  }

  Sink sink(opts, out);
  try {
    if (*analyze) return RunAnalyze(opts, sink);
    if (*construct) return RunConstruct(opts, sink);
    if (*simulate) return RunSimulate(opts, sink);
    if (*classify) return RunClassify(opts, sink);
    if (*checkpoints) return RunCheckpoints(opts, sink);
    if (*bounds) return RunBounds(opts, sink);
  } catch (const Error& e) {
    ReportError(err, ErrorCodeName(e.code()), e.what());
    return kExitError;
  } catch (const Json::exception& e) {
    ReportError(err, "validation", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    ReportError(err, "internal", e.what());
    return kExitError;
  }
  return kExitError;
}

}  // namespace urate::cli
