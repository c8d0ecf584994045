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

#ifndef FAIRSEL_METRICS_H_
#define FAIRSEL_METRICS_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairsel/instance.h"
#include "fairsel/selection.h"

namespace fairsel {

// |S ∩ G_l| for l in [0, p).
std::vector<int> GroupCounts(const Selection& x, std::span<const int> groups,
                             int p);

// Risk difference 1 - min_l t_l * max_{l,k}(c_l/(n t_l) - c_k/(n t_k));
// 1 is most fair. Fails when some t_l = 0 or sum(counts) != n.
absl::StatusOr<double> RiskDifference(std::span<const int> counts,
                                      std::span<const double> target, int n);

// Selection lift min_{l,k} (c_l/(n t_l)) / (c_k/(n t_k)). A group with no
// selected items paired with a nonempty one gives 0; pairs of two empty
// groups are skipped (so all-empty gives 1).
absl::StatusOr<double> SelectionLift(std::span<const int> counts,
                                     std::span<const double> target, int n);

// (c_l / n) * (m / |G_l|). Fails on an empty group.
absl::StatusOr<double> SelectionRate(int selected_in_group, int n, int m,
                                     int group_size);

// u_alg / u_blind. Fails unless u_blind > 0.
absl::StatusOr<double> UtilityRatio(double u_alg, double u_blind);

// DCG(selected) / DCG(ideal) with gains sorted in decreasing order and a
// 1 / log2(rank + 1) discount (rank from 1). Returns 0 when the ideal DCG
// is 0.
double Ndcg(std::span<const double> selected_gains,
            std::span<const double> ideal_gains);

struct MetricsReport {
  double risk_difference = 0.0;
  double selection_lift = 0.0;
  std::vector<double> selection_rates;
  double utility_ratio = 0.0;
  std::optional<double> ndcg;
};

// All metrics of `x` for attribute 0, measured on the true groups; refuses
// instances without true attributes. n is taken as |S|. `blind_utility` is
// the unconstrained top-n utility used for the utility ratio.
absl::StatusOr<MetricsReport> ComputeMetrics(const Selection& x,
                                             const Instance& inst,
                                             std::span<const double> target,
                                             double blind_utility);

}  // namespace fairsel

#endif  // FAIRSEL_METRICS_H_
