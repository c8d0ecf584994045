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

#ifndef FAIRSEL_EXPERIMENT_H_
#define FAIRSEL_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairsel/datagen.h"

namespace fairsel {

enum class Algorithm { kBlind, kFairExpec, kFairExpecGrp, kThrsh, kMultObj };
enum class SweepKind { kAlpha, kLambda, kTau, kN };
enum class TargetKind { kEqual, kProportional };
// How fractional LP / Frank-Wolfe points become subsets inside experiments.
enum class RoundingKind { kDependent, kCeil };

const char* AlgorithmName(Algorithm a);
absl::StatusOr<Algorithm> ParseAlgorithm(const std::string& name);

struct ExperimentConfig {
  GeneratorSpec generator;
  SweepKind sweep = SweepKind::kAlpha;
  std::vector<double> grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                              0.6, 0.7, 0.8, 0.9, 1.0};
  // With an alpha sweep, MultObj may take lambda_grid[r] at alpha_grid[r].
  std::vector<double> paired_lambda;
  std::vector<Algorithm> algorithms = {Algorithm::kBlind,
                                       Algorithm::kFairExpec,
                                       Algorithm::kThrsh, Algorithm::kMultObj};
  int trials = 100;
  int n = 100;
  int m = 500;
  TargetKind target = TargetKind::kEqual;
  double delta = 0.0;
  std::uint64_t seed = 0;
  double alpha = 1.0;   // used when alpha is not swept
  double lambda = 0.0;  // used when lambda is neither swept nor paired
  int fw_iters = 500;
  RoundingKind rounding = RoundingKind::kDependent;
  int threads = 0;  // 0: FAIRSEL_THREADS, else 1
};

absl::Status ValidateExperimentConfig(const ExperimentConfig& cfg);

// Config JSON; keys missing from `text` keep their defaults, unknown keys
// are errors.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(const std::string& text);
std::string ExperimentConfigToJson(const ExperimentConfig& cfg);
absl::StatusOr<GeneratorSpec> ParseGeneratorSpec(const std::string& text);
std::string GeneratorSpecToJson(const GeneratorSpec& spec);

struct ResultRow {
  double grid = 0.0;
  std::string algorithm;
  std::string metric;
  double mean = 0.0;  // NaN when every trial was infeasible
  double sem = 0.0;
};

struct TrialRecord {
  double grid = 0.0;
  std::string algorithm;
  int trial = 0;
  std::string metric;
  double value = 0.0;  // NaN for infeasible trials
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<TrialRecord> per_trial;
  std::string config_json;  // config echo written into JSON reports
};

// Metric names in table order. "infeasible" holds the count of infeasible
// trials in `mean`.
const std::vector<std::string>& MetricNames();

// Runs every (grid point, trial, algorithm). Infeasible trials are recorded;
// any other failure aborts. Output does not depend on the thread count.
absl::StatusOr<ResultTable> RunExperiment(const ExperimentConfig& cfg,
                                          bool keep_per_trial = false);

// Sample mean and standard error of the non-NaN entries.
std::pair<double, double> MeanAndSem(const std::vector<double>& values);

std::string ResultsToCsv(const ResultTable& table);
std::string PerTrialToCsv(const ResultTable& table);
std::string ResultsToJson(const ResultTable& table);
absl::StatusOr<ResultTable> ResultsFromJson(const std::string& text);

enum class ResultFormat { kCsv, kJson };
absl::Status WriteResults(const ResultTable& table, const std::string& path,
                          ResultFormat format);

}  // namespace fairsel

#endif  // FAIRSEL_EXPERIMENT_H_
