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

#ifndef FAIRSEL_DATAGEN_H_
#define FAIRSEL_DATAGEN_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairsel/instance.h"
#include "fairsel/random.h"

namespace fairsel {

enum class GeneratorKind { kDisparateError, kDisparateUtility };

// Two-component truncated-normal mixture for q_i0 (the minority share).
// Defaults give E[q_i0] = 0.4 before truncation effects.
struct DisparateErrorParams {
  double weight_high = 7.0 / 11.0;
  double mean_high = 0.6;
  double sd_high = 0.05;
  double mean_low = 0.05;
  double sd_low = 0.05;
};

// Hiring surrogate: z = 0 marks the disadvantaged group, a1 = 0 marks "no
// prior experience", a2 ~ N(0,1) is a qualification score. Utility is
// max(0, mean[z][a1] + sd * a2).
struct DisparateUtilityParams {
  double minority_rate = 0.37;
  double no_experience_rate = 0.37;
  double joint_rate = 0.137;  // P(z = 0, a1 = 0)
  std::array<std::array<double, 2>, 2> mean = {{{0.8, 0.9}, {0.95, 1.0}}};
  double sd = 0.3;
  double tau = 0.0;  // label flip probability, in [0, 0.5]
  int bins = 20;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kDisparateError;
  int m = 500;
  int n = 100;
  std::uint64_t seed = 0;
  DisparateErrorParams disparate_error;
  DisparateUtilityParams disparate_utility;
};

// Version tag embedded in reports next to the generator parameters.
inline constexpr const char* kGeneratorDefaultsVersion = "surrogate-v1";

// Samples from N(mean, sd) restricted to [lo, hi] by rejection; sd = 0
// returns mean.
double SampleTruncatedNormal(Engine& engine, double mean, double sd,
                             double lo = 0.0, double hi = 1.0);

// s = 1, p = 2, group 0 is the minority. q_i0 from the mixture, q_i1 =
// 1 - q_i0, w_i ~ U(0,1), true attribute drawn from q_i.
Instance GenDisparateError(const GeneratorSpec& spec);

// s = 1, p = 2. Fills utilities, true attributes and features (a1, a2).
// Noise rows are uniform placeholders until estimated.
Instance GenDisparateUtility(const GeneratorSpec& spec);

// Flips every true label independently with probability tau into
// noisy_attrs. Needs s = 1, p = 2 and true attributes.
absl::StatusOr<Instance> InjectFlipNoise(const Instance& inst, double tau,
                                         std::uint64_t seed);

// Equal-count utility bins fitted on a labelled training instance; each bin
// stores the class frequencies of its members. The last bin absorbs the
// remainder of m / bins.
struct UtilityBinModel {
  std::vector<double> upper_edges;  // inclusive; last is +inf
  ProbabilityMatrix bin_rows;
  std::vector<int> assignment;      // bin of each training item
};

absl::StatusOr<UtilityBinModel> FitUtilityBins(const Instance& train,
                                               int bins);
// Row for an item of utility w: the first bin whose upper edge is >= w.
const std::vector<double>& UtilityBinRow(const UtilityBinModel& model,
                                         double w);

// q for the training items themselves (rows of their own bins).
absl::StatusOr<ProbabilityMatrix> EstimateQByUtilityBins(const Instance& train,
                                                         int bins);

// Eval instance for the disparate-utility experiment: draws the instance
// and a fresh training instance from the same spec, replaces the noise rows
// with the training-fitted utility-bin estimates, then adds flip noise.
absl::StatusOr<Instance> PrepareDisparateUtilityInstance(
    const GeneratorSpec& spec);

// Equal-width score calibration over [0,1]: q_il = |B_j ∩ G_l| / |B_j| for
// the bin j holding f_i. Empty bins copy the nearest nonempty bin (lower one
// on ties) and are listed in `borrowed_bins`.
struct ScoreCalibrator {
  int bins = 20;
  ProbabilityMatrix bin_rows;
  std::vector<int> borrowed_bins;

  int BinOf(double score) const;
  const std::vector<double>& Row(double score) const {
    return bin_rows[BinOf(score)];
  }
};

absl::StatusOr<ScoreCalibrator> CalibrateScoresByBins(
    std::span<const double> scores, std::span<const int> labels, int p,
    int bins = 20);

}  // namespace fairsel

#endif  // FAIRSEL_DATAGEN_H_
