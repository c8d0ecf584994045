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

#include "fairsel/experiment.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

#include "absl/strings/str_cat.h"
#include "fairsel/constraints.h"
#include "fairsel/instance_io.h"
#include "fairsel/metrics.h"
#include "fairsel/random.h"
#include "fairsel/rounding.h"
#include "fairsel/selection.h"
#include "fairsel/selectors.h"
#include "json.hpp"

namespace fairsel {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::pair<Algorithm, const char*> kAlgorithmNames[] = {
    {Algorithm::kBlind, "Blind"},
    {Algorithm::kFairExpec, "FairExpec"},
    {Algorithm::kFairExpecGrp, "FairExpecGrp"},
    {Algorithm::kThrsh, "Thrsh"},
    {Algorithm::kMultObj, "MultObj"},
};

constexpr std::pair<SweepKind, const char*> kSweepKeys[] = {
    {SweepKind::kAlpha, "alpha_grid"},
    {SweepKind::kLambda, "lambda_grid"},
    {SweepKind::kTau, "tau_grid"},
    {SweepKind::kN, "n_grid"},
};

enum Metric {
  kRiskDifference,
  kSelectionLift,
  kUtilityRatio,
  kViolation,
  kNumTrialMetrics
};

std::string FormatNumber(double v, int digits) {
  if (std::isnan(v)) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

json NumberOrNull(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
double NumberFromJson(const json& v) {
  return v.is_null() ? kNaN : v.get<double>();
}

// Rejects keys of `obj` that are not in `allowed`.
void CheckKeys(const json& obj, std::initializer_list<const char*> allowed,
               const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; })) {
      throw json::other_error::create(
          501, absl::StrCat("unknown key '", it.key(), "' in ", where), &obj);
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj[key].get<T>();
}

json GeneratorToJsonObject(const GeneratorSpec& spec) {
  const DisparateErrorParams& e = spec.disparate_error;
  const DisparateUtilityParams& u = spec.disparate_utility;
  return {
      {"kind", spec.kind == GeneratorKind::kDisparateError
                   ? "disparate_error"
                   : "disparate_utility"},
      {"defaults_version", kGeneratorDefaultsVersion},
      {"disparate_error",
       {{"weight_high", e.weight_high},
        {"mean_high", e.mean_high},
        {"sd_high", e.sd_high},
        {"mean_low", e.mean_low},
        {"sd_low", e.sd_low}}},
      {"disparate_utility",
       {{"minority_rate", u.minority_rate},
        {"no_experience_rate", u.no_experience_rate},
        {"joint_rate", u.joint_rate},
        {"mean", u.mean},
        {"sd", u.sd},
        {"tau", u.tau},
        {"bins", u.bins}}},
  };
}

void GeneratorFromJsonObject(const json& obj, GeneratorSpec& spec) {
  CheckKeys(obj,
            {"kind", "defaults_version", "m", "n", "seed", "disparate_error",
             "disparate_utility"},
            "generator");
  if (obj.contains("kind")) {
    const std::string kind = obj["kind"].get<std::string>();
    if (kind == "disparate_error") {
      spec.kind = GeneratorKind::kDisparateError;
    } else if (kind == "disparate_utility") {
      spec.kind = GeneratorKind::kDisparateUtility;
    } else {
      throw json::other_error::create(
          501, absl::StrCat("unknown generator kind '", kind, "'"), &obj);
    }
  }
  Read(obj, "m", spec.m);
  Read(obj, "n", spec.n);
  Read(obj, "seed", spec.seed);
  if (obj.contains("disparate_error")) {
    const json& e = obj["disparate_error"];
    CheckKeys(e, {"weight_high", "mean_high", "sd_high", "mean_low", "sd_low"},
              "disparate_error");
    Read(e, "weight_high", spec.disparate_error.weight_high);
    Read(e, "mean_high", spec.disparate_error.mean_high);
    Read(e, "sd_high", spec.disparate_error.sd_high);
    Read(e, "mean_low", spec.disparate_error.mean_low);
    Read(e, "sd_low", spec.disparate_error.sd_low);
  }
  if (obj.contains("disparate_utility")) {
    const json& u = obj["disparate_utility"];
    CheckKeys(u,
              {"minority_rate", "no_experience_rate", "joint_rate", "mean",
               "sd", "tau", "bins"},
              "disparate_utility");
    DisparateUtilityParams& d = spec.disparate_utility;
    Read(u, "minority_rate", d.minority_rate);
    Read(u, "no_experience_rate", d.no_experience_rate);
    Read(u, "joint_rate", d.joint_rate);
    Read(u, "mean", d.mean);
    Read(u, "sd", d.sd);
    Read(u, "tau", d.tau);
    Read(u, "bins", d.bins);
  }
}

struct TrialOutcome {
  // values[a][metric]; NaN when algorithm a was infeasible.
  std::vector<std::array<double, kNumTrialMetrics>> values;
  std::vector<bool> infeasible;
  absl::Status status;
};

struct GridPoint {
  double value = 0.0;
  double alpha = 1.0;
  double lambda = 0.0;
  double tau = 0.0;
  int n = 0;
};

GridPoint MakeGridPoint(const ExperimentConfig& cfg, std::size_t g) {
  GridPoint pt;
  pt.value = cfg.grid[g];
  pt.alpha = cfg.alpha;
  pt.lambda = cfg.lambda;
  pt.tau = cfg.generator.disparate_utility.tau;
  pt.n = cfg.n;
  switch (cfg.sweep) {
    case SweepKind::kAlpha:
      pt.alpha = pt.value;
      if (!cfg.paired_lambda.empty()) pt.lambda = cfg.paired_lambda[g];
      break;
    case SweepKind::kLambda:
      pt.lambda = pt.value;
      break;
    case SweepKind::kTau:
      pt.tau = pt.value;
      break;
    case SweepKind::kN:
      pt.n = static_cast<int>(pt.value);
      break;
  }
  return pt;
}

absl::StatusOr<Instance> DrawInstance(const ExperimentConfig& cfg,
                                      const GridPoint& pt, std::uint64_t seed) {
  GeneratorSpec spec = cfg.generator;
  spec.m = cfg.m;
  spec.n = pt.n;
  spec.seed = seed;
  spec.disparate_utility.tau = pt.tau;
  if (spec.kind == GeneratorKind::kDisparateError) {
    Instance inst = GenDisparateError(spec);
    if (pt.tau > 0.0) return InjectFlipNoise(inst, pt.tau, seed);
    return inst;
  }
  return PrepareDisparateUtilityInstance(spec);
}

std::vector<double> TargetFor(const ExperimentConfig& cfg,
                              const Instance& inst) {
  const int p = inst.p[0];
  if (cfg.target == TargetKind::kEqual) return std::vector<double>(p, 1.0 / p);
  // Shares estimated from q: the true labels are not available to the
  // selector, and true shares can fall outside what q allows at alpha = 1.
  std::vector<double> t(p, 0.0);
  for (const Item& item : inst.items) {
    for (int l = 0; l < p; ++l) t[l] += item.noise[0][l];
  }
  for (double& v : t) v /= inst.m();
  return ApportionTarget(inst.n, t);
}

// Group labels the noise-oblivious baselines work with: the observed labels
// when present, else the Bayes-imputed argmax.
ProbabilityMatrix ObservedOneHot(const Instance& inst, std::uint64_t seed) {
  if (!inst.HasNoisyAttrs()) return ImputeBayes(inst.NoiseMatrix(0), seed);
  ProbabilityMatrix rows(inst.m(), std::vector<double>(inst.p[0], 0.0));
  const std::vector<int> labels = inst.NoisyGroups(0);
  for (int i = 0; i < inst.m(); ++i) rows[i][labels[i]] = 1.0;
  return rows;
}

absl::StatusOr<Selection> Round(const ExperimentConfig& cfg,
                                const Instance& inst,
                                const std::vector<double>& x,
                                std::uint64_t seed) {
  if (cfg.rounding == RoundingKind::kCeil) {
    return MakeSelection(inst, CeilRound(x));
  }
  absl::StatusOr<std::vector<std::uint8_t>> chosen =
      DependentRound(x, inst.n, seed);
  if (!chosen.ok()) return chosen.status();
  return MakeSelection(inst, *std::move(chosen));
}

absl::StatusOr<Selection> RunAlgorithm(const ExperimentConfig& cfg,
                                       Algorithm algorithm,
                                       const Instance& inst,
                                       const ConstraintSet& cs,
                                       const std::vector<double>& target,
                                       double lambda, std::uint64_t seed) {
  switch (algorithm) {
    case Algorithm::kBlind:
      return Blind(inst);
    case Algorithm::kFairExpec:
    case Algorithm::kFairExpecGrp: {
      absl::StatusOr<BfsSolution> bfs =
          algorithm == Algorithm::kFairExpec
              ? SolveDenoisedRelaxation(inst, cs)
              : SolveGroupLevelRelaxation(inst, cs);
      if (!bfs.ok()) return bfs.status();
      return Round(cfg, inst, bfs->x, seed);
    }
    case Algorithm::kThrsh: {
      const std::vector<int> groups = ArgmaxGroups(ObservedOneHot(inst, seed));
      ConstraintSet plain = cs;
      plain.delta = 0.0;
      return ThrshOnGroups(inst, groups, inst.p[0], plain);
    }
    case Algorithm::kMultObj: {
      AlgorithmConfig acfg;
      acfg.lambda = lambda;
      acfg.target = target;
      acfg.seed = seed;
      acfg.fw_iters = cfg.fw_iters;
      absl::StatusOr<MultObjResult> fw =
          MultObj(inst, ObservedOneHot(inst, seed), acfg);
      if (!fw.ok()) return fw.status();
      return Round(cfg, inst, fw->x, DeriveSeed(seed, {1}));
    }
  }
  return absl::InternalError("unknown algorithm");
}

TrialOutcome RunTrial(const ExperimentConfig& cfg, std::size_t g, int trial) {
  TrialOutcome out;
  const std::size_t num_alg = cfg.algorithms.size();
  out.values.assign(num_alg, {kNaN, kNaN, kNaN, kNaN});
  out.infeasible.assign(num_alg, false);
  const GridPoint pt = MakeGridPoint(cfg, g);
  const std::uint64_t seed = DeriveSeed(
      cfg.seed,
      {static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(trial)});
  absl::StatusOr<Instance> inst = DrawInstance(cfg, pt, seed);
  if (!inst.ok()) {
    out.status = inst.status();
    return out;
  }
  const std::vector<double> target = TargetFor(cfg, *inst);
  absl::StatusOr<ConstraintSet> cs =
      ConstraintsFromAlpha(inst->n, target, pt.alpha);
  if (!cs.ok()) {
    out.status = cs.status();
    return out;
  }
  cs->delta = cfg.delta;
  const double blind_utility = Blind(*inst).total_utility;
  const std::vector<int> groups = inst->TrueGroups(0);
  const int p = inst->p[0];

  for (std::size_t a = 0; a < num_alg; ++a) {
    const std::uint64_t alg_seed = DeriveSeed(seed, {100 + a});
    absl::StatusOr<Selection> sel = RunAlgorithm(
        cfg, cfg.algorithms[a], *inst, *cs, target, pt.lambda, alg_seed);
    if (!sel.ok()) {
      if (IsInfeasible(sel.status())) {
        out.infeasible[a] = true;
        continue;
      }
      out.status = sel.status();
      return out;
    }
    const std::vector<int> counts = GroupCounts(*sel, groups, p);
    std::array<double, kNumTrialMetrics>& v = out.values[a];
    absl::StatusOr<double> rd =
        RiskDifference(counts, target, sel->cardinality);
    absl::StatusOr<double> lift =
        SelectionLift(counts, target, sel->cardinality);
    absl::StatusOr<double> ratio =
        UtilityRatio(sel->total_utility, blind_utility);
    absl::StatusOr<ViolationReport> viol =
        ReportViolations(*sel, *inst, *cs, AttributeSource::kTrue);
    v[kRiskDifference] = rd.ok() ? *rd : kNaN;
    v[kSelectionLift] = lift.ok() ? *lift : kNaN;
    v[kUtilityRatio] = ratio.ok() ? *ratio : kNaN;
    v[kViolation] = viol.ok() ? viol->max_fairness_violation : kNaN;
  }
  return out;
}

int ThreadCount(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("FAIRSEL_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

}  // namespace

const char* AlgorithmName(Algorithm a) {
  for (const auto& [alg, name] : kAlgorithmNames) {
    if (alg == a) return name;
  }
  return "?";
}

absl::StatusOr<Algorithm> ParseAlgorithm(const std::string& name) {
  for (const auto& [alg, alg_name] : kAlgorithmNames) {
    if (name == alg_name) return alg;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown algorithm '", name, "'"));
}

const std::vector<std::string>& MetricNames() {
  static const std::vector<std::string> names = {
      "risk_difference", "selection_lift", "utility_ratio", "violation",
      "infeasible"};
  return names;
}

absl::Status ValidateExperimentConfig(const ExperimentConfig& cfg) {
  if (cfg.grid.empty()) return absl::InvalidArgumentError("empty grid");
  if (cfg.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (cfg.algorithms.empty()) {
    return absl::InvalidArgumentError("no algorithms selected");
  }
  if (!cfg.paired_lambda.empty() &&
      (cfg.sweep != SweepKind::kAlpha ||
       cfg.paired_lambda.size() != cfg.grid.size())) {
    return absl::InvalidArgumentError(
        "a paired lambda_grid needs an alpha_grid of the same length");
  }
  if (cfg.m < 1 || cfg.n < 1 || cfg.n > cfg.m) {
    return absl::InvalidArgumentError("need 1 <= n <= m");
  }
  for (double v : cfg.grid) {
    switch (cfg.sweep) {
      case SweepKind::kAlpha:
        if (!(v >= 0.0 && v <= 1.0)) {
          return absl::InvalidArgumentError("alpha must lie in [0,1]");
        }
        break;
      case SweepKind::kTau:
        if (!(v >= 0.0 && v <= 0.5)) {
          return absl::InvalidArgumentError("tau must lie in [0, 0.5]");
        }
        break;
      case SweepKind::kLambda:
        if (!(v >= 0.0)) {
          return absl::InvalidArgumentError("lambda must be >= 0");
        }
        break;
      case SweepKind::kN:
        if (v != std::floor(v) || v < 1 || v > cfg.m) {
          return absl::InvalidArgumentError("n_grid entries must be in [1,m]");
        }
        break;
    }
  }
  if (cfg.delta < 0.0) return absl::InvalidArgumentError("delta must be >= 0");
  if (cfg.fw_iters < 0) {
    return absl::InvalidArgumentError("fw_iters must be >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<GeneratorSpec> ParseGeneratorSpec(const std::string& text) {
  GeneratorSpec spec;
  try {
    GeneratorFromJsonObject(json::parse(text), spec);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("generator: ", e.what()));
  }
  return spec;
}

std::string GeneratorSpecToJson(const GeneratorSpec& spec) {
  json obj = GeneratorToJsonObject(spec);
  obj["m"] = spec.m;
  obj["n"] = spec.n;
  obj["seed"] = spec.seed;
  return obj.dump(2) + "\n";
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const std::string& text) {
  ExperimentConfig cfg;
  try {
    const json doc = json::parse(text);
    CheckKeys(doc,
              {"generator", "alpha_grid", "lambda_grid", "tau_grid", "n_grid",
               "algorithms", "trials", "n", "m", "target", "delta", "seed",
               "alpha", "lambda", "fw_iters", "rounding", "threads"},
              "config");
    if (doc.contains("generator")) {
      GeneratorFromJsonObject(doc["generator"], cfg.generator);
    }
    int sweeps = 0;
    for (const auto& [kind, key] : kSweepKeys) {
      if (!doc.contains(key)) continue;
      ++sweeps;
      cfg.sweep = kind;
      cfg.grid = doc[key].get<std::vector<double>>();
    }
    if (sweeps == 2 && doc.contains("alpha_grid") &&
        doc.contains("lambda_grid")) {
      cfg.sweep = SweepKind::kAlpha;
      cfg.grid = doc["alpha_grid"].get<std::vector<double>>();
      cfg.paired_lambda = doc["lambda_grid"].get<std::vector<double>>();
    } else if (sweeps > 1) {
      return absl::InvalidArgumentError(
          "config sweeps more than one grid (only alpha_grid + lambda_grid "
          "may be paired)");
    }
    if (doc.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const std::string& name :
           doc["algorithms"].get<std::vector<std::string>>()) {
        absl::StatusOr<Algorithm> a = ParseAlgorithm(name);
        if (!a.ok()) return a.status();
        cfg.algorithms.push_back(*a);
      }
    }
    Read(doc, "trials", cfg.trials);
    Read(doc, "n", cfg.n);
    Read(doc, "m", cfg.m);
    Read(doc, "delta", cfg.delta);
    Read(doc, "seed", cfg.seed);
    Read(doc, "alpha", cfg.alpha);
    Read(doc, "lambda", cfg.lambda);
    Read(doc, "fw_iters", cfg.fw_iters);
    Read(doc, "threads", cfg.threads);
    if (doc.contains("target")) {
      const std::string t = doc["target"].get<std::string>();
      if (t == "equal") {
        cfg.target = TargetKind::kEqual;
      } else if (t == "proportional") {
        cfg.target = TargetKind::kProportional;
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown target '", t, "'"));
      }
    }
    if (doc.contains("rounding")) {
      const std::string r = doc["rounding"].get<std::string>();
      if (r == "dependent") {
        cfg.rounding = RoundingKind::kDependent;
      } else if (r == "ceil") {
        cfg.rounding = RoundingKind::kCeil;
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown rounding '", r, "'"));
      }
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("config: ", e.what()));
  }
  if (absl::Status s = ValidateExperimentConfig(cfg); !s.ok()) return s;
  return cfg;
}

std::string ExperimentConfigToJson(const ExperimentConfig& cfg) {
  json doc;
  doc["generator"] = GeneratorToJsonObject(cfg.generator);
  for (const auto& [kind, key] : kSweepKeys) {
    if (kind == cfg.sweep) doc[key] = cfg.grid;
  }
  if (!cfg.paired_lambda.empty()) doc["lambda_grid"] = cfg.paired_lambda;
  std::vector<std::string> names;
  for (Algorithm a : cfg.algorithms) names.push_back(AlgorithmName(a));
  doc["algorithms"] = names;
  doc["trials"] = cfg.trials;
  doc["n"] = cfg.n;
  doc["m"] = cfg.m;
  doc["target"] = cfg.target == TargetKind::kEqual ? "equal" : "proportional";
  doc["delta"] = cfg.delta;
  doc["seed"] = cfg.seed;
  doc["alpha"] = cfg.alpha;
  doc["lambda"] = cfg.lambda;
  doc["fw_iters"] = cfg.fw_iters;
  doc["rounding"] =
      cfg.rounding == RoundingKind::kDependent ? "dependent" : "ceil";
  return doc.dump(2) + "\n";
}

std::pair<double, double> MeanAndSem(const std::vector<double>& values) {
  double sum = 0.0;
  int k = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++k;
  }
  if (k == 0) return {kNaN, kNaN};
  const double mean = sum / k;
  if (k == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) {
    if (!std::isnan(v)) ss += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(ss / (k - 1)) / std::sqrt(static_cast<double>(k))};
}

absl::StatusOr<ResultTable> RunExperiment(const ExperimentConfig& cfg,
                                          bool keep_per_trial) {
  if (absl::Status s = ValidateExperimentConfig(cfg); !s.ok()) return s;
  const std::size_t num_grid = cfg.grid.size();
  const std::size_t trials = cfg.trials;
  std::vector<TrialOutcome> outcomes(num_grid * trials);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < outcomes.size(); job = next++) {
      outcomes[job] =
          RunTrial(cfg, job / trials, static_cast<int>(job % trials));
    }
  };
  const int threads =
      std::min<int>(ThreadCount(cfg), static_cast<int>(outcomes.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  for (const TrialOutcome& o : outcomes) {
    if (!o.status.ok()) return o.status;
  }

  ResultTable table;
  table.config_json = ExperimentConfigToJson(cfg);
  for (std::size_t g = 0; g < num_grid; ++g) {
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const std::string name = AlgorithmName(cfg.algorithms[a]);
      for (int metric = 0; metric < kNumTrialMetrics; ++metric) {
        std::vector<double> values;
        for (std::size_t t = 0; t < trials; ++t) {
          const double v = outcomes[g * trials + t].values[a][metric];
          values.push_back(v);
          if (keep_per_trial) {
            table.per_trial.push_back({cfg.grid[g], name, static_cast<int>(t),
                                       MetricNames()[metric], v});
          }
        }
        const auto [mean, sem] = MeanAndSem(values);
        table.rows.push_back(
            {cfg.grid[g], name, MetricNames()[metric], mean, sem});
      }
      int infeasible = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        infeasible += outcomes[g * trials + t].infeasible[a] ? 1 : 0;
      }
      table.rows.push_back({cfg.grid[g], name, MetricNames()[kNumTrialMetrics],
                            static_cast<double>(infeasible), 0.0});
    }
  }
  return table;
}

std::string ResultsToCsv(const ResultTable& table) {
  std::string out = "grid,algorithm,metric,mean,sem\n";
  for (const ResultRow& row : table.rows) {
    absl::StrAppend(&out, FormatNumber(row.grid, 6), ",", row.algorithm, ",",
                    row.metric, ",", FormatNumber(row.mean, 6), ",",
                    FormatNumber(row.sem, 6), "\n");
  }
  return out;
}

std::string PerTrialToCsv(const ResultTable& table) {
  std::string out = "grid,algorithm,trial,metric,value\n";
  for (const TrialRecord& r : table.per_trial) {
    absl::StrAppend(&out, FormatNumber(r.grid, 17), ",", r.algorithm, ",",
                    r.trial, ",", r.metric, ",", FormatNumber(r.value, 17),
                    "\n");
  }
  return out;
}

std::string ResultsToJson(const ResultTable& table) {
  json doc;
  doc["columns"] = {"grid", "algorithm", "metric", "mean", "sem"};
  json rows = json::array();
  for (const ResultRow& r : table.rows) {
    rows.push_back({{"grid", r.grid},
                    {"algorithm", r.algorithm},
                    {"metric", r.metric},
                    {"mean", NumberOrNull(r.mean)},
                    {"sem", NumberOrNull(r.sem)}});
  }
  doc["rows"] = std::move(rows);
  if (!table.config_json.empty()) {
    doc["config"] = json::parse(table.config_json);
  }
  return doc.dump(2) + "\n";
}

absl::StatusOr<ResultTable> ResultsFromJson(const std::string& text) {
  ResultTable table;
  try {
    const json doc = json::parse(text);
    for (const json& r : doc.at("rows")) {
      table.rows.push_back(
          {r.at("grid").get<double>(), r.at("algorithm").get<std::string>(),
           r.at("metric").get<std::string>(), NumberFromJson(r.at("mean")),
           NumberFromJson(r.at("sem"))});
    }
    if (doc.contains("config"))
      table.config_json = doc["config"].dump(2) + "\n";
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("results json: ", e.what()));
  }
  return table;
}

absl::Status WriteResults(const ResultTable& table, const std::string& path,
                          ResultFormat format) {
  return WriteFile(path, format == ResultFormat::kCsv ? ResultsToCsv(table)
                                                      : ResultsToJson(table));
}

}  // namespace fairsel
