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

#include "fairsel/datagen.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fairsel {
namespace {

// Frequencies of `labels` over [0, p); the last entry is 1 - rest so rows
// sum to 1 exactly up to rounding.
std::vector<double> ClassFrequencies(const std::vector<int>& labels, int p) {
  std::vector<double> row(p, 0.0);
  if (labels.empty()) return row;
  for (int z : labels) row[z] += 1.0;
  double rest = 0.0;
  for (int l = 0; l + 1 < p; ++l) {
    row[l] /= static_cast<double>(labels.size());
    rest += row[l];
  }
  row[p - 1] = std::max(0.0, 1.0 - rest);
  return row;
}

absl::Status CheckBinaryLabelled(const Instance& inst, const char* what) {
  if (inst.s() != 1 || inst.p[0] != 2) {
    return absl::UnimplementedError(
        absl::StrCat(what, " supports one binary attribute only"));
  }
  if (!inst.HasTrueAttrs()) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, " needs true attributes"));
  }
  return absl::OkStatus();
}

}  // namespace

double SampleTruncatedNormal(Engine& engine, double mean, double sd, double lo,
                             double hi) {
  if (sd <= 0.0) return std::clamp(mean, lo, hi);
  std::normal_distribution<double> normal(mean, sd);
  for (;;) {
    const double v = normal(engine);
    if (v >= lo && v <= hi) return v;
  }
}

Instance GenDisparateError(const GeneratorSpec& spec) {
  const DisparateErrorParams& d = spec.disparate_error;
  Engine engine = MakeEngine(DeriveSeed(spec.seed, {1}));
  Instance inst;
  inst.n = spec.n;
  inst.p = {2};
  inst.items.resize(spec.m);
  for (Item& item : inst.items) {
    const bool high = Uniform01(engine) < d.weight_high;
    const double q0 = high
                          ? SampleTruncatedNormal(engine, d.mean_high, d.sd_high)
                          : SampleTruncatedNormal(engine, d.mean_low, d.sd_low);
    item.noise = {{q0, 1.0 - q0}};
    item.utility = Uniform01(engine);
    item.true_attrs = std::vector<int>{Uniform01(engine) < q0 ? 0 : 1};
  }
  return inst;
}

Instance GenDisparateUtility(const GeneratorSpec& spec) {
  const DisparateUtilityParams& d = spec.disparate_utility;
  Engine engine = MakeEngine(DeriveSeed(spec.seed, {2}));
  std::normal_distribution<double> normal(0.0, 1.0);
  const double p00 = d.joint_rate;
  const double p01 = d.minority_rate - d.joint_rate;
  const double p10 = d.no_experience_rate - d.joint_rate;
  Instance inst;
  inst.n = spec.n;
  inst.p = {2};
  inst.items.resize(spec.m);
  for (Item& item : inst.items) {
    const double u = Uniform01(engine);
    int z = 1;
    int a1 = 1;
    if (u < p00) {
      z = 0;
      a1 = 0;
    } else if (u < p00 + p01) {
      z = 0;
    } else if (u < p00 + p01 + p10) {
      a1 = 0;
    }
    const double a2 = normal(engine);
    item.utility = std::max(0.0, d.mean[z][a1] + d.sd * a2);
    item.features = {static_cast<double>(a1), a2};
    item.true_attrs = std::vector<int>{z};
    item.noise = {{0.5, 0.5}};
  }
  return inst;
}

absl::StatusOr<Instance> InjectFlipNoise(const Instance& inst, double tau,
                                         std::uint64_t seed) {
  if (absl::Status s = CheckBinaryLabelled(inst, "flip noise"); !s.ok()) {
    return s;
  }
  if (!(tau >= 0.0 && tau <= 0.5)) {
    return absl::InvalidArgumentError("flip probability must be in [0, 0.5]");
  }
  Engine engine = MakeEngine(DeriveSeed(seed, {3}));
  Instance out = inst;
  for (Item& item : out.items) {
    const int z = (*item.true_attrs)[0];
    item.noisy_attrs = std::vector<int>{Uniform01(engine) < tau ? 1 - z : z};
  }
  return out;
}

absl::StatusOr<UtilityBinModel> FitUtilityBins(const Instance& train,
                                               int bins) {
  if (!train.HasTrueAttrs() || train.s() < 1) {
    return absl::InvalidArgumentError("utility bins need labelled items");
  }
  const int m = train.m();
  if (bins < 1 || bins > m) {
    return absl::InvalidArgumentError(
        absl::StrCat("bin count ", bins, " must lie in [1, m=", m, "]"));
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return train.items[a].utility < train.items[b].utility;
  });
  const int size = m / bins;
  UtilityBinModel model;
  model.assignment.assign(m, 0);
  for (int b = 0; b < bins; ++b) {
    const int begin = b * size;
    const int end = b + 1 == bins ? m : begin + size;
    std::vector<int> labels;
    for (int r = begin; r < end; ++r) {
      model.assignment[order[r]] = b;
      labels.push_back((*train.items[order[r]].true_attrs)[0]);
    }
    model.bin_rows.push_back(ClassFrequencies(labels, train.p[0]));
    model.upper_edges.push_back(b + 1 == bins
                                    ? std::numeric_limits<double>::infinity()
                                    : train.items[order[end - 1]].utility);
  }
  return model;
}

const std::vector<double>& UtilityBinRow(const UtilityBinModel& model,
                                         double w) {
  auto it = std::lower_bound(model.upper_edges.begin(),
                             model.upper_edges.end(), w);
  const std::size_t b =
      std::min<std::size_t>(it - model.upper_edges.begin(),
                            model.bin_rows.size() - 1);
  return model.bin_rows[b];
}

absl::StatusOr<ProbabilityMatrix> EstimateQByUtilityBins(const Instance& train,
                                                         int bins) {
  absl::StatusOr<UtilityBinModel> model = FitUtilityBins(train, bins);
  if (!model.ok()) return model.status();
  ProbabilityMatrix q;
  q.reserve(train.m());
  for (int b : model->assignment) q.push_back(model->bin_rows[b]);
  return q;
}

absl::StatusOr<Instance> PrepareDisparateUtilityInstance(
    const GeneratorSpec& spec) {
  Instance eval = GenDisparateUtility(spec);
  GeneratorSpec train_spec = spec;
  train_spec.seed = DeriveSeed(spec.seed, {4});
  const Instance train = GenDisparateUtility(train_spec);
  absl::StatusOr<UtilityBinModel> model =
      FitUtilityBins(train, spec.disparate_utility.bins);
  if (!model.ok()) return model.status();
  for (Item& item : eval.items) {
    item.noise = {UtilityBinRow(*model, item.utility)};
  }
  return InjectFlipNoise(eval, spec.disparate_utility.tau,
                         DeriveSeed(spec.seed, {5}));
}

int ScoreCalibrator::BinOf(double score) const {
  const int b = static_cast<int>(std::floor(score * bins));
  return std::clamp(b, 0, bins - 1);
}

absl::StatusOr<ScoreCalibrator> CalibrateScoresByBins(
    std::span<const double> scores, std::span<const int> labels, int p,
    int bins) {
  if (scores.size() != labels.size()) {
    return absl::InvalidArgumentError("scores and labels differ in length");
  }
  if (bins < 1 || p < 1) {
    return absl::InvalidArgumentError("need at least one bin and one class");
  }
  ScoreCalibrator cal;
  cal.bins = bins;
  std::vector<std::vector<int>> members(bins);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!(scores[i] >= 0.0 && scores[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("score ", scores[i], " outside [0,1]"));
    }
    if (labels[i] < 0 || labels[i] >= p) {
      return absl::InvalidArgumentError(
          absl::StrCat("label ", labels[i], " outside [0,", p, ")"));
    }
    members[cal.BinOf(scores[i])].push_back(labels[i]);
  }
  if (scores.empty()) {
    return absl::InvalidArgumentError("calibration needs at least one score");
  }
  cal.bin_rows.resize(bins);
  for (int b = 0; b < bins; ++b) {
    if (!members[b].empty()) cal.bin_rows[b] = ClassFrequencies(members[b], p);
  }
  for (int b = 0; b < bins; ++b) {
    if (!members[b].empty()) continue;
    cal.borrowed_bins.push_back(b);
    for (int d = 1; d < bins; ++d) {
      if (b - d >= 0 && !members[b - d].empty()) {
        cal.bin_rows[b] = cal.bin_rows[b - d];
        break;
      }
      if (b + d < bins && !members[b + d].empty()) {
        cal.bin_rows[b] = cal.bin_rows[b + d];
        break;
      }
    }
  }
  return cal;
}

}  // namespace fairsel
