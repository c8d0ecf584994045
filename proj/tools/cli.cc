// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "fairsel/constraints.h"
#include "fairsel/datagen.h"
#include "fairsel/denoised_lp.h"
#include "fairsel/experiment.h"
#include "fairsel/instance.h"
#include "fairsel/instance_io.h"
#include "fairsel/lp.h"
#include "fairsel/metrics.h"
#include "fairsel/random.h"
#include "fairsel/rounding.h"
#include "fairsel/selection.h"
#include "fairsel/selectors.h"
#include "json.hpp"

namespace fairsel::cli {
namespace {

using json = nlohmann::json;

// Thrown by option handlers; caught in Run and reported with exit code 1.
struct UsageError {
  std::string message;
};

void Check(const absl::Status& status) {
  if (!status.ok()) throw UsageError{std::string(status.message())};
}

template <typename T>
T Value(absl::StatusOr<T> v) {
  Check(v.status());
  return *std::move(v);
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  for (absl::string_view part : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    double v;
    if (!absl::SimpleAtod(part, &v)) {
      throw UsageError{absl::StrCat("not a number: '", std::string(part), "'")};
    }
    out.push_back(v);
  }
  return out;
}

// "1,1" for one attribute, "1,1;2,2,2" for two.
std::vector<std::vector<double>> ParseBounds(const std::string& text) {
  std::vector<std::vector<double>> out;
  for (absl::string_view part : absl::StrSplit(text, ';')) {
    out.push_back(ParseList(std::string(part)));
  }
  return out;
}

json ReadJsonFile(const std::string& path) {
  const std::string text = Value(ReadFile(path));
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError{absl::StrCat(path, ": ", e.what())};
  }
}

void WriteOutput(const std::string& path, const std::string& text,
                 std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  Check(WriteFile(path, text));
}

std::vector<double> ProportionalTarget(const Instance& inst, int k) {
  std::vector<double> t(inst.p[k], 0.0);
  for (const Item& item : inst.items) {
    for (int l = 0; l < inst.p[k]; ++l) t[l] += item.noise[k][l];
  }
  for (double& v : t) v /= inst.m();
  return ApportionTarget(inst.n, t);
}

// ---- select ---------------------------------------------------------------

struct SelectOptions {
  std::string instance;
  std::string config;
  std::string algorithm = "FairExpec";
  double alpha = 1.0;
  double delta = 0.0;
  double lambda = 0.0;
  std::string target = "equal";
  std::string upper;
  std::string lower;
  std::uint64_t seed = 0;
  int fw_iters = 500;
  std::string dump_lp;
};

// Config keys mirror the flag names.
void ApplySelectConfig(const json& cfg, SelectOptions& o) {
  if (!cfg.is_object()) throw UsageError{"select config must be an object"};
  for (const auto& [key, v] : cfg.items()) {
    try {
      if (key == "algorithm") {
        o.algorithm = v.get<std::string>();
      } else if (key == "alpha") {
        o.alpha = v.get<double>();
      } else if (key == "delta") {
        o.delta = v.get<double>();
      } else if (key == "lambda") {
        o.lambda = v.get<double>();
      } else if (key == "target") {
        o.target = v.get<std::string>();
      } else if (key == "upper") {
        o.upper = v.get<std::string>();
      } else if (key == "lower") {
        o.lower = v.get<std::string>();
      } else if (key == "seed") {
        o.seed = v.get<std::uint64_t>();
      } else if (key == "fw_iters") {
        o.fw_iters = v.get<int>();
      } else {
        throw UsageError{absl::StrCat("unknown select config key '", key, "'")};
      }
    } catch (const json::exception& e) {
      throw UsageError{absl::StrCat("config key '", key, "': ", e.what())};
    }
  }
}

ConstraintSet SelectConstraints(const SelectOptions& o, const Instance& inst) {
  std::vector<std::vector<double>> lower, upper;
  if (!o.upper.empty()) {
    upper = ParseBounds(o.upper);
    if (o.lower.empty()) {
      for (int k = 0; k < inst.s(); ++k) lower.emplace_back(inst.p[k], 0.0);
    } else {
      lower = ParseBounds(o.lower);
    }
  } else {
    if (o.target != "equal" && o.target != "proportional") {
      throw UsageError{"--target must be equal or proportional"};
    }
    for (int k = 0; k < inst.s(); ++k) {
      const std::vector<double> t =
          o.target == "equal" ? std::vector<double>(inst.p[k], 1.0 / inst.p[k])
                              : ProportionalTarget(inst, k);
      const ConstraintSet one = Value(ConstraintsFromAlpha(inst.n, t, o.alpha));
      upper.push_back(one.upper[0]);
      lower.push_back(o.lower.empty() ? one.lower[0]
                                      : ParseBounds(o.lower).at(k));
    }
  }
  if (static_cast<int>(upper.size()) != inst.s() ||
      static_cast<int>(lower.size()) != inst.s()) {
    throw UsageError{"bounds need one list per attribute"};
  }
  for (int k = 0; k < inst.s(); ++k) {
    if (static_cast<int>(upper[k].size()) != inst.p[k] ||
        static_cast<int>(lower[k].size()) != inst.p[k]) {
      throw UsageError{
          absl::StrCat("attribute ", k, " needs ", inst.p[k], " bounds")};
    }
  }
  return Value(MakeConstraintSet(inst.n, lower, upper, o.delta));
}

// Labels for the noise-oblivious baselines: observed labels when every item
// has them, else Bayes imputation of q.
ProbabilityMatrix ObservedRows(const Instance& inst, std::uint64_t seed) {
  if (!inst.HasNoisyAttrs()) return ImputeBayes(inst.NoiseMatrix(0), seed);
  ProbabilityMatrix rows(inst.m(), std::vector<double>(inst.p[0], 0.0));
  const std::vector<int> labels = inst.NoisyGroups(0);
  for (int i = 0; i < inst.m(); ++i) rows[i][labels[i]] = 1.0;
  return rows;
}

absl::StatusOr<Selection> RunSelect(const SelectOptions& o,
                                    const Instance& inst,
                                    const ConstraintSet& cs) {
  const Algorithm alg = Value(ParseAlgorithm(o.algorithm));
  switch (alg) {
    case Algorithm::kBlind:
      return Blind(inst);
    case Algorithm::kFairExpec:
      return FairExpec(inst, cs);
    case Algorithm::kFairExpecGrp:
      return FairExpecGrp(inst, cs);
    case Algorithm::kThrsh: {
      if (inst.s() != 1) break;
      ConstraintSet plain = cs;
      plain.delta = 0.0;
      return ThrshOnGroups(inst, ArgmaxGroups(ObservedRows(inst, o.seed)),
                           inst.p[0], plain);
    }
    case Algorithm::kMultObj: {
      if (inst.s() != 1) break;
      AlgorithmConfig acfg;
      acfg.lambda = o.lambda;
      acfg.target = o.target == "proportional"
                        ? ProportionalTarget(inst, 0)
                        : std::vector<double>(inst.p[0], 1.0 / inst.p[0]);
      acfg.seed = o.seed;
      acfg.fw_iters = o.fw_iters;
      absl::StatusOr<MultObjResult> fw =
          MultObj(inst, ObservedRows(inst, o.seed), acfg);
      if (!fw.ok()) return fw.status();
      absl::StatusOr<std::vector<std::uint8_t>> chosen =
          DependentRound(fw->x, inst.n, DeriveSeed(o.seed, {1}));
      if (!chosen.ok()) return chosen.status();
      return MakeSelection(inst, *std::move(chosen));
    }
  }
  return absl::UnimplementedError(
      absl::StrCat(o.algorithm, " supports one attribute only"));
}

json ViolationJson(const ViolationReport& r) {
  return {{"counts", r.counts},
          {"lower", r.lower_violation},
          {"upper", r.upper_violation},
          {"max", r.max_fairness_violation},
          {"cardinality_excess", r.cardinality_excess},
          {"cardinality_deficit", r.cardinality_deficit}};
}

int Select(const SelectOptions& flags, const CLI::App& cmd, std::ostream& out,
           std::ostream& err) {
  SelectOptions o;
  if (!flags.config.empty()) ApplySelectConfig(ReadJsonFile(flags.config), o);
  // Flags given on the command line win over the config file.
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--algorithm")) o.algorithm = flags.algorithm;
  if (given("--alpha")) o.alpha = flags.alpha;
  if (given("--delta")) o.delta = flags.delta;
  if (given("--lambda")) o.lambda = flags.lambda;
  if (given("--target")) o.target = flags.target;
  if (given("--upper")) o.upper = flags.upper;
  if (given("--lower")) o.lower = flags.lower;
  if (given("--seed")) o.seed = flags.seed;
  if (given("--fw-iters")) o.fw_iters = flags.fw_iters;
  o.dump_lp = flags.dump_lp;

  const Instance inst = Value(LoadInstance(flags.instance));
  const ConstraintSet cs = SelectConstraints(o, inst);
  if (!o.dump_lp.empty()) {
    const std::string text = DumpLp(BuildDenoisedLp(inst, cs));
    if (o.dump_lp == "-") {
      err << text;
    } else {
      Check(WriteFile(o.dump_lp, text));
    }
  }
  const absl::StatusOr<Selection> sel = RunSelect(o, inst, cs);
  if (!sel.ok()) {
    if (IsInfeasible(sel.status())) {
      out << json{{"status", "infeasible"},
                  {"message", std::string(sel.status().message())}}
                 .dump(2)
          << "\n";
      return kExitInfeasible;
    }
    Check(sel.status());
  }
  std::vector<int> indices = sel->Indices();
  for (int& i : indices) ++i;
  json doc = {{"status", "ok"},
              {"algorithm", o.algorithm},
              {"indices", indices},
              {"utility", sel->total_utility},
              {"cardinality", sel->cardinality},
              {"n", inst.n}};
  doc["expected"] = ViolationJson(
      Value(ReportViolations(*sel, inst, cs, AttributeSource::kExpected)));
  if (inst.HasTrueAttrs()) {
    doc["true"] = ViolationJson(
        Value(ReportViolations(*sel, inst, cs, AttributeSource::kTrue)));
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

// ---- experiment -----------------------------------------------------------

struct ExperimentOptions {
  std::string config;
  int trials = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  int m = 0;
  int n = 0;
  double delta = 0.0;
  std::string algorithms;
  std::string out;
  std::string format;
  std::string per_trial;
};

int Experiment(const ExperimentOptions& o, const CLI::App& cmd,
               std::ostream& out) {
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = Value(ParseExperimentConfig(Value(ReadFile(o.config))));
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--trials")) cfg.trials = o.trials;
  if (given("--seed")) cfg.seed = o.seed;
  if (given("--threads")) cfg.threads = o.threads;
  if (given("--m")) cfg.m = o.m;
  if (given("--n")) cfg.n = o.n;
  if (given("--delta")) cfg.delta = o.delta;
  if (given("--algorithms")) {
    cfg.algorithms.clear();
    for (absl::string_view name :
         absl::StrSplit(o.algorithms, ',', absl::SkipEmpty())) {
      cfg.algorithms.push_back(Value(ParseAlgorithm(std::string(name))));
    }
  }
  Check(ValidateExperimentConfig(cfg));

  std::string format = o.format;
  if (format.empty()) {
    format = o.out.size() > 5 && o.out.substr(o.out.size() - 5) == ".json"
                 ? "json"
                 : "csv";
  }
  if (format != "csv" && format != "json") {
    throw UsageError{"--format must be csv or json"};
  }
  const ResultTable table = Value(RunExperiment(cfg, !o.per_trial.empty()));
  WriteOutput(o.out,
              format == "json" ? ResultsToJson(table) : ResultsToCsv(table),
              out);
  if (!o.per_trial.empty()) Check(WriteFile(o.per_trial, PerTrialToCsv(table)));
  return kExitOk;
}

// ---- metrics --------------------------------------------------------------

struct MetricsOptions {
  std::string instance;
  std::string indices;
  std::string target = "proportional";
};

int Metrics(const MetricsOptions& o, std::ostream& out) {
  const Instance inst = Value(LoadInstance(o.instance));
  std::vector<int> picked;
  for (double v : ParseList(o.indices)) {
    const int i = static_cast<int>(v);
    if (i != v || i < 1 || i > inst.m()) {
      throw UsageError{absl::StrCat("index out of range: ", v)};
    }
    picked.push_back(i - 1);
  }
  std::vector<double> target;
  if (o.target == "equal") {
    target.assign(inst.p[0], 1.0 / inst.p[0]);
  } else if (o.target == "proportional") {
    // Population shares on the true groups the metrics are measured on.
    if (!inst.HasTrueAttrs()) throw UsageError{"instance has no true groups"};
    target.assign(inst.p[0], 0.0);
    for (int z : inst.TrueGroups(0)) target[z] += 1.0 / inst.m();
  } else {
    target = ParseList(o.target);
  }
  const Selection sel = SelectionFromIndices(inst, picked);
  const MetricsReport r =
      Value(ComputeMetrics(sel, inst, target, Blind(inst).total_utility));
  json doc = {{"risk_difference", r.risk_difference},
              {"selection_lift", r.selection_lift},
              {"selection_rates", r.selection_rates},
              {"utility_ratio", r.utility_ratio},
              {"utility", sel.total_utility},
              {"cardinality", sel.cardinality}};
  if (r.ndcg) doc["ndcg"] = *r.ndcg;
  for (auto& v : doc["selection_rates"]) {
    if (v.is_number() && std::isnan(v.get<double>())) v = nullptr;
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

// ---- gen ------------------------------------------------------------------

struct GenOptions {
  std::string config;
  std::string kind;
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
  double tau = 0.0;
  std::string out;
};

int Gen(const GenOptions& o, const CLI::App& cmd, std::ostream& out) {
  GeneratorSpec spec;
  if (!o.config.empty()) {
    spec = Value(ParseGeneratorSpec(Value(ReadFile(o.config))));
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--kind")) {
    if (o.kind == "disparate_error") {
      spec.kind = GeneratorKind::kDisparateError;
    } else if (o.kind == "disparate_utility") {
      spec.kind = GeneratorKind::kDisparateUtility;
    } else {
      throw UsageError{"--kind must be disparate_error or disparate_utility"};
    }
  }
  if (given("--m")) spec.m = o.m;
  if (given("--n")) spec.n = o.n;
  if (given("--seed")) spec.seed = o.seed;
  if (given("--tau")) spec.disparate_utility.tau = o.tau;
  if (spec.m < 1 || spec.n < 1 || spec.n > spec.m) {
    throw UsageError{"need 1 <= n <= m"};
  }
  Instance inst;
  if (spec.kind == GeneratorKind::kDisparateUtility) {
    inst = Value(PrepareDisparateUtilityInstance(spec));
  } else {
    inst = GenDisparateError(spec);
    if (spec.disparate_utility.tau > 0.0) {
      inst = Value(InjectFlipNoise(inst, spec.disparate_utility.tau,
                                   DeriveSeed(spec.seed, {5})));
    }
  }
  WriteOutput(o.out, InstanceToJson(inst) + "\n", out);
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fair subset selection with noisy protected attributes",
               "fairsel"};
  app.require_subcommand(1);

  SelectOptions sel;
  CLI::App* select = app.add_subcommand(
      "select", "Select a subset from an instance file and report it");
  select->add_option("--instance", sel.instance, "Instance JSON file")
      ->required();
  select->add_option("--config", sel.config, "JSON file with flag defaults");
  select->add_option("--algorithm", sel.algorithm,
                     "Blind, FairExpec, FairExpecGrp, Thrsh or MultObj");
  select->add_option("--alpha", sel.alpha, "Constraint strength in [0,1]");
  select->add_option("--delta", sel.delta, "Slack of the denoised program");
  select->add_option("--lambda", sel.lambda, "MultObj penalty weight");
  select->add_option("--target", sel.target, "equal or proportional");
  select->add_option("--upper", sel.upper,
                     "Upper bounds, e.g. 1,1 or 1,1;2,2,2");
  select->add_option("--lower", sel.lower, "Lower bounds, same layout");
  select->add_option("--seed", sel.seed, "Seed for randomized steps");
  select->add_option("--fw-iters", sel.fw_iters, "MultObj iterations");
  select->add_option("--dump-lp", sel.dump_lp,
                     "Write the denoised LP as text ('-' for stderr)");

  ExperimentOptions exp;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Run a seeded trial sweep");
  experiment->add_option("--config", exp.config, "Experiment config JSON");
  experiment->add_option("--trials", exp.trials);
  experiment->add_option("--seed", exp.seed);
  experiment->add_option("--threads", exp.threads);
  experiment->add_option("--m", exp.m);
  experiment->add_option("--n", exp.n);
  experiment->add_option("--delta", exp.delta);
  experiment->add_option("--algorithms", exp.algorithms,
                         "Comma-separated algorithm names");
  experiment->add_option("--out", exp.out, "Output file (default stdout)");
  experiment->add_option("--format", exp.format, "csv or json");
  experiment->add_option("--per-trial", exp.per_trial,
                         "Also write per-trial values as CSV");

  MetricsOptions met;
  CLI::App* metrics =
      app.add_subcommand("metrics", "Fairness and utility of a subset");
  metrics->add_option("--instance", met.instance, "Instance JSON file")
      ->required();
  metrics->add_option("--indices", met.indices, "1-based item indices")
      ->required();
  metrics->add_option("--target", met.target,
                      "equal, proportional or a list like 0.4,0.6");

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a synthetic instance");
  gen_cmd->add_option("--config", gen.config, "Generator JSON");
  gen_cmd->add_option("--kind", gen.kind,
                      "disparate_error or disparate_utility");
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--tau", gen.tau, "Label flip probability");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  try {
    if (select->parsed()) return Select(sel, *select, out, err);
    if (experiment->parsed()) return Experiment(exp, *experiment, out);
    if (metrics->parsed()) return Metrics(met, out);
    if (gen_cmd->parsed()) return Gen(gen, *gen_cmd, out);
  } catch (const UsageError& e) {
    err << "fairsel: " << e.message << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace fairsel::cli
