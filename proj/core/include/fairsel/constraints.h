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

#ifndef FAIRSEL_CONSTRAINTS_H_
#define FAIRSEL_CONSTRAINTS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace fairsel {

// Lower/upper bounds on the number of selected items per (attribute, value)
// pair, plus the slack used by the denoised program. Bounds are real valued.
struct ConstraintSet {
  std::vector<std::vector<double>> lower;  // lower[k][l]
  std::vector<std::vector<double>> upper;  // upper[k][l]
  double delta = 0.0;

  int s() const { return static_cast<int>(lower.size()); }
};

// Clamps every bound to [0, n] and checks lower <= upper entrywise and that
// the shapes agree.
absl::StatusOr<ConstraintSet> MakeConstraintSet(
    int n, std::vector<std::vector<double>> lower,
    std::vector<std::vector<double>> upper, double delta);

// Single-attribute sweep bounds: L = 0, U_l = n(1 - alpha) + n alpha t_l.
// alpha = 0 leaves the selection unconstrained; alpha = 1 pins each group to
// exactly n t_l. delta is left at zero for the caller to set.
absl::StatusOr<ConstraintSet> ConstraintsFromAlpha(int n,
                                                   std::span<const double> t,
                                                   double alpha);

// Rounds n t to whole counts by largest remainder (ties to the lower index)
// and returns counts / n, so that n times each entry is an integer. Callers
// comparing integral selections against the target need this; flooring
// fractional caps can leave fewer than n slots in total.
std::vector<double> ApportionTarget(int n, std::span<const double> t);

// Vacuous bounds L = 0, U = n for every group of every attribute.
ConstraintSet UnconstrainedSet(int n, const std::vector<int>& p);

}  // namespace fairsel

#endif  // FAIRSEL_CONSTRAINTS_H_
