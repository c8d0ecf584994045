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

#include "fairsel/selection.h"

#include <algorithm>
#include <cstddef>
#include <utility>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"

namespace fairsel {

std::vector<int> Selection::Indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

Selection MakeSelection(const Instance& inst,
                        std::vector<std::uint8_t> chosen) {
  Selection sel;
  sel.chosen = std::move(chosen);
  for (std::size_t i = 0; i < sel.chosen.size(); ++i) {
    if (!sel.chosen[i]) continue;
    sel.total_utility += inst.items[i].utility;
    ++sel.cardinality;
  }
  return sel;
}

Selection SelectionFromIndices(const Instance& inst,
                               const std::vector<int>& indices) {
  std::vector<std::uint8_t> chosen(inst.m(), 0);
  for (int i : indices) chosen[i] = 1;
  return MakeSelection(inst, std::move(chosen));
}

absl::StatusOr<ViolationReport> ReportViolations(const Selection& x,
                                                 const Instance& inst,
                                                 const ConstraintSet& cs,
                                                 AttributeSource source) {
  if (source == AttributeSource::kTrue && !inst.HasTrueAttrs()) {
    return absl::InvalidArgumentError(
        "true-attribute violations need true_attrs on every item");
  }
  if (static_cast<int>(x.chosen.size()) != inst.m()) {
    return absl::InvalidArgumentError("selection length differs from m");
  }
  if (cs.s() != inst.s()) {
    return absl::InvalidArgumentError(
        "constraint set and instance disagree on s");
  }
  ViolationReport report;
  for (int k = 0; k < inst.s(); ++k) {
    const int pk = inst.p[k];
    if (static_cast<int>(cs.lower[k].size()) != pk) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", k, ": bounds length differs from p"));
    }
    std::vector<double> counts(pk, 0.0);
    for (int i = 0; i < inst.m(); ++i) {
      if (!x.chosen[i]) continue;
      const Item& item = inst.items[i];
      if (source == AttributeSource::kTrue) {
        counts[(*item.true_attrs)[k]] += 1.0;
      } else {
        for (int l = 0; l < pk; ++l) counts[l] += item.noise[k][l];
      }
    }
    std::vector<double> lo(pk), hi(pk);
    for (int l = 0; l < pk; ++l) {
      lo[l] = std::max(0.0, cs.lower[k][l] - counts[l]);
      hi[l] = std::max(0.0, counts[l] - cs.upper[k][l]);
      report.max_fairness_violation =
          std::max({report.max_fairness_violation, lo[l], hi[l]});
    }
    report.counts.push_back(std::move(counts));
    report.lower_violation.push_back(std::move(lo));
    report.upper_violation.push_back(std::move(hi));
  }
  int card = 0;
  for (std::uint8_t c : x.chosen) card += c ? 1 : 0;
  report.cardinality_excess = std::max(0, card - inst.n);
  report.cardinality_deficit = std::max(0, inst.n - card);
  return report;
}

absl::Status InfeasibleError(std::string_view detail) {
  return absl::FailedPreconditionError(absl::StrCat("infeasible: ", std::string(detail)));
}

bool IsInfeasible(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition &&
         absl::StartsWith(status.message(), "infeasible");
}

}  // namespace fairsel
