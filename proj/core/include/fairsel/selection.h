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

#ifndef FAIRSEL_SELECTION_H_
#define FAIRSEL_SELECTION_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairsel/constraints.h"
#include "fairsel/instance.h"

namespace fairsel {

// A subset of items as a 0/1 inclusion vector.
struct Selection {
  std::vector<std::uint8_t> chosen;
  double total_utility = 0.0;
  int cardinality = 0;

  // 0-based indices of chosen items, ascending.
  std::vector<int> Indices() const;
};

// Builds a Selection and computes its utility and cardinality.
Selection MakeSelection(const Instance& inst, std::vector<std::uint8_t> chosen);
Selection SelectionFromIndices(const Instance& inst,
                               const std::vector<int>& indices);

enum class AttributeSource {
  kTrue,      // count items in the true groups
  kExpected,  // expected counts sum_i q_il x_i
};

// Additive violations of the target constraints L <= count <= U (no slack)
// and of the cardinality constraint sum x = n.
struct ViolationReport {
  std::vector<std::vector<double>> counts;           // counts[k][l]
  std::vector<std::vector<double>> lower_violation;  // max(0, L - count)
  std::vector<std::vector<double>> upper_violation;  // max(0, count - U)
  int cardinality_excess = 0;                        // max(0, |S| - n)
  int cardinality_deficit = 0;                       // max(0, n - |S|)
  double max_fairness_violation = 0.0;

  bool Satisfied(double tol = 1e-9) const {
    return max_fairness_violation <= tol && cardinality_excess == 0 &&
           cardinality_deficit == 0;
  }
};

// Fails with InvalidArgument when `source` is kTrue and the instance has no
// true attributes.
absl::StatusOr<ViolationReport> ReportViolations(const Selection& x,
                                                 const Instance& inst,
                                                 const ConstraintSet& cs,
                                                 AttributeSource source);

// Infeasibility is reported as FailedPrecondition with an "infeasible"
// message prefix so callers can tell it apart from bad input.
absl::Status InfeasibleError(std::string_view detail);
bool IsInfeasible(const absl::Status& status);

}  // namespace fairsel

#endif  // FAIRSEL_SELECTION_H_
